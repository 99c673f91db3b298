import random

import pytest

from cychom.algebra import (FunctionField, artin_algebra, dual_numbers)
from cychom.differentials import OneForm, d
from cychom.symbols import (FORMULA_NOTES, NonUnit, SteinbergSymbol,
                            SymbolParseError, nilpotent_log, parse_element,
                            parse_symbol, peel, random_unit,
                            steinberg_residual, tangent, tangent_general,
                            tangent_raw)

FF_AB = FunctionField(("a", "b"), dual_numbers("e"))
FF_XY = FunctionField(("x", "y"), dual_numbers("e"))


def test_symbol_requires_units():
    e = FF_AB.var("e")
    with pytest.raises(NonUnit):
        SteinbergSymbol(e, FF_AB.one())


def test_peel_constant_symbol():
    x, y = FF_XY.var("x"), FF_XY.var("y")
    p = peel(SteinbergSymbol(x, y))
    assert p.constant[0] == x and p.constant[1] == y
    one = FF_XY.one()
    for fa, fb in p.factors:
        assert fa == one or fb == one
    assert p.reassembles(SteinbergSymbol(x, y))


def test_peel_nilpotent_first_slot():
    x, y, e, one = (FF_XY.var("x"), FF_XY.var("y"), FF_XY.var("e"), FF_XY.one())
    s = SteinbergSymbol(x + e, y)
    p = peel(s)
    assert p.constant == (x, y)
    assert p.factors[0] == (x, one)               # gamma = 0
    assert p.factors[1][0] == one + e / x         # 1 + phi
    assert p.factors[1][1] == y
    assert p.factors[2] == (one + e / x, one)
    assert p.reassembles(s) and p.constant_parts_trivial()


def test_peel_nilpotent_second_slot():
    x, e, one = FF_XY.var("x"), FF_XY.var("e"), FF_XY.one()
    p = peel(SteinbergSymbol(x, one + x * e))
    assert p.factors[0] == (x, one + x * e)
    assert p.factors[1][0] == one


def test_peel_random_reassembly():
    rng = random.Random(10)
    for _ in range(20):
        s = SteinbergSymbol(random_unit(FF_AB, rng, 1), random_unit(FF_AB, rng, 1))
        p = peel(s)
        assert p.reassembles(s)
        assert p.constant_parts_trivial()


def test_nilpotent_log():
    ff = FunctionField(("x",), artin_algebra(("t", 4)))
    t, x = ff.var("t"), ff.var("x")
    u = x * t
    # log(1+u) = u - u^2/2 + u^3/3 for u^4 = 0
    assert nilpotent_log(u) == u - u * u / 2 + u * u * u / 3
    with pytest.raises(ValueError):
        nilpotent_log(ff.one())


def test_tangent_generator_surjectivity():
    a, b, e, one = (FF_AB.var("a"), FF_AB.var("b"), FF_AB.var("e"), FF_AB.one())
    base = FunctionField(("a", "b"))
    form = tangent(SteinbergSymbol(b, one + a * b * e))
    assert form == OneForm(base, {"b": base.var("a")})


def test_tangent_steinberg_relation():
    ff = FunctionField(("x",), dual_numbers("e"))
    rng = random.Random(3)
    one = ff.one()
    checked = 0
    while checked < 20:
        f = random_unit(ff, rng, 1)
        if not (one - f).is_unit():
            continue
        assert tangent(SteinbergSymbol(f, one - f)).is_zero()
        checked += 1


def test_tangent_unipotent_pair_vanishes():
    a, b, e, one = (FF_AB.var("a"), FF_AB.var("b"), FF_AB.var("e"), FF_AB.one())
    assert tangent(SteinbergSymbol(one + a * e, one + b * e)).is_zero()


def test_tangent_bimultiplicative_sample():
    rng = random.Random(17)
    for _ in range(10):
        f, f2, g = (random_unit(FF_AB, rng, 1) for _ in range(3))
        lhs = tangent(SteinbergSymbol(f * f2, g))
        rhs = tangent(SteinbergSymbol(f, g)) + tangent(SteinbergSymbol(f2, g))
        assert (lhs - rhs).is_zero()


def test_tangent_antisymmetric_over_dual_numbers():
    rng = random.Random(23)
    for _ in range(10):
        f, g = random_unit(FF_AB, rng, 1), random_unit(FF_AB, rng, 1)
        assert (tangent(SteinbergSymbol(f, g))
                + tangent(SteinbergSymbol(g, f))).is_zero()


def test_tangent_general_truncated_cubic():
    ff = FunctionField(("a", "b"), artin_algebra(("t", 3)))
    a, b, t, one = ff.var("a"), ff.var("b"), ff.var("t"), ff.one()
    form = tangent_general(SteinbergSymbol(b, one + a * b * t))
    # log(1 + abt) = abt - (abt)^2/2, times db/b
    expected = OneForm(ff, {"b": a * t - a * a * b * t * t / 2})
    assert (form - expected).is_zero()


def test_tangent_general_bimultiplicative():
    ff = FunctionField(("a",), artin_algebra(("t", 3)))
    rng = random.Random(5)
    for _ in range(8):
        f, f2, g = (random_unit(ff, rng, 1) for _ in range(3))
        lhs = tangent_general(SteinbergSymbol(f * f2, g))
        rhs = (tangent_general(SteinbergSymbol(f, g))
               + tangent_general(SteinbergSymbol(f2, g)))
        assert (lhs - rhs).is_zero()


def test_tangent_nilfree_symbol_is_zero():
    x, y = FF_XY.var("x"), FF_XY.var("y")
    assert tangent(SteinbergSymbol(x, y)).is_zero()
    assert tangent_general(SteinbergSymbol(x, y)).is_zero()


def test_steinberg_residual_dual_zero_cubic_nonzero():
    ff = FunctionField(("a",), artin_algebra(("t", 3)))
    a, t, one = ff.var("a"), ff.var("t"), ff.one()
    res = steinberg_residual(a + t)
    # frozen from the hand expansion of the three-term formula at t^3 = 0
    ca = (one - 2 * a) * t * t / (2 * a * a * (one - a) * (one - a))
    ct = -t / (a * (one - a))
    assert (res - OneForm(ff, {"a": ca, "t": ct})).is_zero()
    # over dual numbers the residual is identically zero
    ffd = FunctionField(("a",), dual_numbers("e"))
    ad, ed = ffd.var("a"), ffd.var("e")
    assert steinberg_residual(ad + ed).is_zero()


def test_antisymmetry_defect_is_exact_differential():
    # T{f,g} + T{g,f} = d(log(1+phi) log(1+gamma)): check at t^3 = 0
    ff = FunctionField(("a",), artin_algebra(("t", 3)))
    rng = random.Random(8)
    for _ in range(5):
        f, g = random_unit(ff, rng, 1), random_unit(ff, rng, 1)
        one = ff.one()
        phi = f / f.nilfree_part() - one
        gamma = g / g.nilfree_part() - one
        defect = tangent_raw(SteinbergSymbol(f, g)) + tangent_raw(SteinbergSymbol(g, f))
        assert (defect - d(nilpotent_log(phi) * nilpotent_log(gamma))).is_zero()


def test_formula_notes_present():
    assert "dlog" in FORMULA_NOTES["denominators"]


def test_parse_symbol_roundtrip():
    ff = FunctionField(("x",), dual_numbers("e"))
    s = parse_symbol("{x + e, 1 - x^2}", ff)
    x, e, one = ff.var("x"), ff.var("e"), ff.one()
    assert s.f == x + e and s.g == one - x * x
    s2 = parse_symbol("{(1+x)*x/2, 3}", ff)
    assert s2.f == (one + x) * x / 2


def test_parse_element_errors():
    ff = FunctionField(("x",))
    with pytest.raises(SymbolParseError):
        parse_element("x + ", ff)
    with pytest.raises(SymbolParseError):
        parse_element("y", ff)
    with pytest.raises(SymbolParseError):
        parse_element("x $ 2", ff)
