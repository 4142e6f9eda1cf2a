"""Irreducible counts of the minimal strata (n): composition sums, recurrence and class split."""
import argparse

from rauzy import count
from rauzy.partition import IntegerPartition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=13)
    args = ap.parse_args()

    for n in range(3, args.max_n + 1, 2):
        g, d = count.minimal_stratum_counts(n)
        p = IntegerPartition([n])
        rec = sum(count.gamma_irr(mp) for mp in count.marked_profiles(p))
        classes = {r.kind.value: r.cardinality for r in count.class_cardinalities(p)}
        print(f"({n}): gamma {g} delta {d} recurrence {'agrees' if rec == g else rec} classes {classes}")


if __name__ == "__main__":
    main()
