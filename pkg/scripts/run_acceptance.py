#!/usr/bin/env python3
"""Run the acceptance suites and print the per-suite summary table.

Extra arguments are passed straight to pytest, so e.g.

    python3 scripts/run_acceptance.py -k adjunction
"""

import pathlib
import sys

import pytest


def main() -> int:
    root = pathlib.Path(__file__).resolve().parent.parent
    return pytest.main(["-v", str(root / "tests" / "test_acceptance.py"), *sys.argv[1:]])


if __name__ == "__main__":
    raise SystemExit(main())
