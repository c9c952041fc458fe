"""Run the eight acceptance checks and show their PASS/FAIL lines.

    python3 scripts/run_acceptance.py
"""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    tests = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    raise SystemExit(pytest.main([str(tests), "-q", *sys.argv[1:]]))
