"""Run the acceptance criteria and print one [PASS]/[FAIL] line each."""

import argparse

from mixedmult.acceptance import CRITERIA, run_criterion


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("numbers", nargs="*", type=int, help="criteria to run (default: all)")
    args = parser.parse_args()
    results = [run_criterion(n) for n in args.numbers or [n for n, _, _ in CRITERIA]]
    for r in results:
        print(r.line())
    raise SystemExit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
