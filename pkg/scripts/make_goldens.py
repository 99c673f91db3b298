"""Regenerate the golden fixtures under tests/fixtures/v1/.

Every homology fixture is produced from the closed-form side (exterior
power dimension counts, the eigenspace selection rule, lattice-point
counts for local cohomology), never from the chain-level computations the
tests are checking.  The report fixture pins byte determinism of the
serialized report; its numeric content is cross-checked separately in the
test suite.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cychom.algebra import dual_numbers, polynomial_algebra  # noqa: E402
from cychom.differentials import omega_dims  # noqa: E402
from cychom.machine import build_report  # noqa: E402

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "v1"


def bundle_dim(base, n, w):
    return sum(omega_dims(base, p, w) for p in range(n, -1, -2))


def homology_entries(dims):
    return [{"n": n, "w": w, "dim": d} for (n, w), d in sorted(dims.items())]


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    q = polynomial_algebra()
    qx = polynomial_algebra("x")

    # relative HC of (Q[e],(e)): the bundle collapses to one Q in even degrees
    dims = {(n, 0): bundle_dim(q, n, 0) for n in range(5)}
    write("hc_rel_dual_Q.json",
          {"kind": "HC", "relative": True, "entries": homology_entries(dims)})

    # relative HC of (Q[x][e],(e)) from the exterior-power bundle
    dims = {(n, w): bundle_dim(qx, n, w) for n in range(5) for w in range(5)}
    write("hc_rel_dual_Qx.json",
          {"kind": "HC", "relative": True, "entries": homology_entries(dims)})

    # relative HH via the degenerate SBI identity HH_n = HC_n + HC_(n-1)
    dims = {(n, w): bundle_dim(qx, n, w) + (bundle_dim(qx, n - 1, w) if n else 0)
            for n in range(5) for w in range(5)}
    write("hh_rel_dual_Qx.json",
          {"kind": "HH", "relative": True, "entries": homology_entries(dims)})

    # cyclic eigenspaces of (Q[x][e],(e)): Omega^(2i-n) on the printed support
    entries = []
    for n in range(5):
        for w in range(5):
            for i in range(n + 1):
                if n == 0:
                    dim = omega_dims(qx, 0, w) if i == 0 else 0
                else:
                    in_support = n // 2 <= i <= n and 2 * i - n >= 0
                    dim = omega_dims(qx, 2 * i - n, w) if in_support else 0
                entries.append({"n": n, "w": w, "i": i, "dim": dim})
    write("hodge_hc_dual_Qx.json", {"entries": entries})

    # local cohomology of Omega^1 over Q[x,y]: rank-2 free, degree-1 gens,
    # so H^2 at degree -d has dimension 2*d (lattice count), H^<2 = 0
    entries = []
    for i in range(3):
        for d in range(-6, 7):
            dim = 2 * (-d) if (i == 2 and d <= -1) else 0
            entries.append({"i": i, "d": d, "dim": dim})
    write("localcoh_qxy_omega1.json", {"kind": "Hloc", "entries": entries})

    # serialized report: pins byte determinism across versions
    rep = build_report(2, 2, dual_numbers("e"))
    (FIXTURES / "report_2_2_dual.json").write_text(rep.to_json())
    print("wrote report_2_2_dual.json")


def write(name, obj):
    (FIXTURES / name).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    print(f"wrote {name}")


if __name__ == "__main__":
    main()
