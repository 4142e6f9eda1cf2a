"""Marking tallies of hyperelliptic classes by BFS against the closed binomial forms."""
import argparse

from rauzy import count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--k", type=int, default=0, help="marked points")
    args = ap.parse_args()

    for n in range(4 + args.k, args.max_n + 1):
        h = count.hyp_counts(n, args.k)
        status = "ok" if h.per_degree == h.closed_form else "MISMATCH"
        print(f"n={n} k={args.k}: degrees {h.per_degree} closed form {h.closed_form} {status}")
        if args.k == 0:
            diff = {m: (v, h.candidates.get(m)) for m, v in h.per_marking.items() if h.candidates.get(m) != v}
            print(f"  markings: {len(h.per_marking)} tallied, {len(diff)} differ from closed forms {diff or ''}")


if __name__ == "__main__":
    main()
