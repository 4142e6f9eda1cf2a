"""Predicted Rauzy class sizes for every profile of a given weight, optionally checked by census."""
import argparse

from rauzy import count, explore, verify
from rauzy.partition import partitions_of


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("weight", type=int, help="s(p); classes live on weight + 1 letters")
    ap.add_argument("--check", action="store_true", help="compare with the brute-force census (weight <= 8)")
    args = ap.parse_args()

    for p in partitions_of(args.weight):
        if p.is_surface_profile():
            rows = ", ".join(f"{r.kind.value}/{r.degree}: {r.cardinality}" for r in count.class_cardinalities(p))
            print(f"{str(p):<14} g={count.genus_of(p)}  {rows}")
    if args.check:
        observed = explore.census_classes(args.weight + 1)
        predicted = verify.predicted_classes(args.weight + 1)
        print("census agrees" if dict(observed) == predicted else "census DIFFERS")


if __name__ == "__main__":
    main()
