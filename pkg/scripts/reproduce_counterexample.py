"""Recompute the two-variable example where a joint reduction of type (1; 0) misses the mixed multiplicity."""

from mixedmult.theorems import remark_35_counterexample


def main():
    r = remark_35_counterexample()
    print("J = (x, y), I1 = (x), candidate (x from I1, y from J) in Q[x,y]")
    for key in ("joint_reduction", "weak_fc", "dimension_hypothesis"):
        print(f"  {key:22s} {r[key]}")
    print(f"  mixed multiplicity     {r['mixed']}")
    print(f"  multiplicity symbol    {r['symbol']}")
    print("values differ" if not r["equal"] else "values agree")


if __name__ == "__main__":
    main()
