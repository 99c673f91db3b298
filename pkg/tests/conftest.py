import pathlib
import sys

# allow running the suite from a fresh checkout without installing
SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))
