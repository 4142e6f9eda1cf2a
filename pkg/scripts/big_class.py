"""Explore the extended class of profile (4,3,2,1) and compare per-degree sizes with the predictor."""
import argparse
import time
from collections import Counter

from rauzy import count, explore
from rauzy.invariant import marked_profile_bytes
from rauzy.partition import IntegerPartition
from rauzy.perm import ReducedPermutation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", default="11 2 4 3 5 7 6 10 9 8 1")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    seed = ReducedPermutation.parse(args.seed)
    profile = marked_profile_bytes(seed.to_bytes()).profile
    t = time.perf_counter()
    diag = explore.build_class(seed, extended=True, threads=args.threads)
    print(f"seed {seed}, profile {profile}: {len(diag)} vertices in {time.perf_counter() - t:.1f}s")

    by_degree = Counter(marked_profile_bytes(b).left_degree for b in diag.rows())
    predicted = {r.degree: r.cardinality for r in count.class_cardinalities(IntegerPartition(profile.parts))}
    for d in sorted(by_degree, reverse=True):
        print(f"  degree {d}: bfs {by_degree[d]:>9}  predicted {predicted.get(d, 0):>9}")


if __name__ == "__main__":
    main()
