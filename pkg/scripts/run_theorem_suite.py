"""Check mixed multiplicity = multiplicity symbol on generated instances and print one row per instance."""

import argparse
import time

from mixedmult.config import Config
from mixedmult.theorems import PROFILES, instance_generator, verify_theorem_33


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--profile", choices=PROFILES, action="append")
    parser.add_argument("--count", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    config = Config(seed=args.seed)
    failures = 0
    for profile in args.profile or PROFILES:
        for inst in instance_generator(profile, args.seed, args.count):
            t0 = time.perf_counter()
            rep = verify_theorem_33(inst, config, inst.label)
            failures += rep.status == "failed"
            print(f"{inst.label:40s} {rep.status:20s} mixed={rep.mixed} symbol={rep.symbol} "
                  f"[{time.perf_counter() - t0:.2f}s]")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
