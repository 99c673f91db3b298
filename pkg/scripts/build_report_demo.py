"""Build the four-column report for the affine plane with dual numbers
(ambient dimension 2, index 2) and write it to stdout or a file.

Usage:  python scripts/build_report_demo.py [out.json]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cychom.algebra import dual_numbers  # noqa: E402
from cychom.machine import build_report  # noqa: E402


def main():
    rep = build_report(2, 2, dual_numbers("e"))
    text = rep.to_json()
    if len(sys.argv) > 1:
        pathlib.Path(sys.argv[1]).write_text(text)
        print(f"wrote {sys.argv[1]} ({len(text)} bytes); "
              f"checks: {'all pass' if rep.all_pass else 'FAILURES'}")
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
