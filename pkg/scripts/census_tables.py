"""Brute-force gamma/delta tables next to the recurrences, one marked profile per line."""
import argparse

from rauzy import count, explore


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, help="number of letters (<= 9)")
    ap.add_argument("--standard", action="store_true", help="standard permutations instead of irreducible")
    args = ap.parse_args()

    kind = "standard" if args.standard else "irreducible"
    gamma, delta = explore.tally_gamma_delta(explore.census(args.n, kind))
    g_fn, d_fn = (count.gamma_std, count.delta_std) if args.standard else (count.gamma_irr, count.delta_irr)
    print(f"{'marked profile':<16}{'gamma':>10}{'formula':>10}{'delta':>10}{'formula':>10}")
    mismatches = 0
    for mp in sorted(gamma, key=str):
        row = (gamma[mp], g_fn(mp), delta[mp], d_fn(mp))
        mismatches += row[0] != row[1] or row[2] != row[3]
        print(f"{str(mp):<16}" + "".join(f"{x:>10}" for x in row))
    print(f"{len(gamma)} marked profiles, {mismatches} mismatches, total {sum(gamma.values())}")


if __name__ == "__main__":
    main()
