"""Print the dual-number homology tables for small polynomial bases.

For R in {Q, Q[x], Q[x,y]} this computes the relative HH / HC / HN tables
of (R[e], (e)) by brute force on the normalized complexes, prints them
next to the exterior-power bundle dimensions they are expected to match,
and prints the cyclic eigenspace tables for the first two bases.

Usage:  python scripts/dual_number_tables.py [n_max] [w_max]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cychom.algebra import dual_pair, polynomial_algebra  # noqa: E402
from cychom.cyclic import hc_table, hh_table, hn_rel_table  # noqa: E402
from cychom.differentials import hc_bundle  # noqa: E402
from cychom.hodge import hc_hodge_dual  # noqa: E402


def main():
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    w_max = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    for syms in ((), ("x",), ("x", "y")):
        base = polynomial_algebra(*syms)
        name = "Q" + ("[" + ",".join(syms) + "]" if syms else "")
        pair = dual_pair(base)
        print(f"== relative theories of ({name}[e], (e)) ==")
        for build in (hh_table, hc_table, hn_rel_table):
            print(build(pair, n_max, w_max).to_text())
        print("expected HC from the exterior-power bundle:")
        for n in range(n_max + 1):
            dims = [hc_bundle(n, base).graded_dim(w) for w in range(w_max + 1)]
            print(f"  n={n}: {dims}")
        print()
    for syms in ((), ("x",)):
        base = polynomial_algebra(*syms)
        name = "Q" + ("[" + ",".join(syms) + "]" if syms else "")
        t = hc_hodge_dual(dual_pair(base), n_max, w_max)
        print(f"== cyclic eigenspaces of ({name}[e], (e)) ==")
        for n in range(n_max + 1):
            for i in range(n + 1):
                dims = [t.dim(n, w, i) for w in range(w_max + 1)]
                if any(dims):
                    print(f"  n={n} i={i}: {dims}")
        print()


if __name__ == "__main__":
    main()
