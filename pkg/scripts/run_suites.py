#!/usr/bin/env python3
"""Run every verification suite and print the combined report.

Usage: python scripts/run_suites.py [--seed N] [--cases N]
"""

import argparse
import sys

from qwi.suites import run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=None)
    args = ap.parse_args()

    reports = run_suite("all", seed=args.seed, cases=args.cases)
    for r in reports:
        print(r.render())
    print()
    for r in reports:
        print(r.machine_line())
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
