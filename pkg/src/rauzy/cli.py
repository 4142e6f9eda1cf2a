"""Command-line front end: ``rauzy {invariants,predict,build,census,verify,formulas}``.

Output is JSON on stdout with big integers as decimal strings.  Exit codes: 0 success,
1 verification mismatch, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import count, explore, verify
from .cache import ENV_VAR
from .invariant import SpinError, is_hyperelliptic_class, marked_profile, spin_parity
from .partition import IntegerPartition, PartitionError, centralizer_order, genus_of
from .perm import PermutationError, ReducedPermutation, decompose, is_irreducible, is_standard


class UsageError(Exception):
    """Bad input detected after argument parsing; reported with exit status 2."""


def _perm(text: str) -> ReducedPermutation:
    return ReducedPermutation.parse(text)


def _profile(text: str) -> IntegerPartition:
    p = IntegerPartition.parse(text)
    if not p.parts or not p.is_surface_profile():
        raise UsageError(f"{text!r} is not a valid profile (s(p) + l(p) must be even)")
    return p


def _emit(data) -> None:
    json.dump(data, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def cmd_invariants(args) -> int:
    pi = _perm(args.permutation)
    irreducible = is_irreducible(pi)
    mp = marked_profile(pi)
    report = {
        "permutation": str(pi),
        "irreducible": irreducible,
        "standard": is_standard(pi),
        "profile": str(mp.profile),
        "marked_profile": str(mp),
        "spin": spin_parity(pi),
        "left_degree": mp.left_degree,
    }
    if not irreducible:
        report["factors"] = [str(f) for f in decompose(pi)]
    elif pi.n >= 2:
        report["hyperelliptic"] = is_hyperelliptic_class(pi)
    _emit(report)
    return 0


def cmd_predict(args) -> int:
    p = _profile(args.profile)
    count.load_tables()
    data = count.cardinalities_json(p, args.degree)
    data["genus"] = genus_of(p)
    _emit(data)
    count.save_tables()
    return 0


def cmd_build(args) -> int:
    seed = _perm(args.permutation)
    if not is_irreducible(seed):
        raise UsageError(f"the seed {seed} is reducible")
    if args.dot:
        diag = explore.build_class(seed, args.extended, with_edges=True, threads=args.threads)
        with open(args.dot, "w", encoding="utf-8") as fh:
            explore.export_dot(diag, fh)
    if args.stats:
        _emit(explore.cached_stats(seed, args.extended, threads=args.threads).to_json())
    else:
        diag = explore.build_class(seed, args.extended, threads=args.threads)
        _emit({"seed": str(seed), "extended": args.extended, "size": str(len(diag))})
    return 0


def cmd_census(args) -> int:
    n = args.n
    if not 1 <= n <= explore.CENSUS_MAX_LETTERS:
        raise UsageError(f"census supports 1 <= n <= {explore.CENSUS_MAX_LETTERS}")
    classes = explore.census_classes(n) if n >= 2 else Counter()
    gamma, delta = explore.tally_gamma_delta(explore.census(n))
    rows = sorted(classes.items(), key=lambda kv: (str(kv[0][0]), kv[0][1].value, kv[0][2]))
    _emit(
        {
            "n": n,
            "irreducible": str(sum(gamma.values())),
            "classes": [
                {"profile": str(p), "kind": k.value, "degree": d, "size": str(v)} for (p, k, d), v in rows
            ],
            "marked_profiles": {
                str(mp): {"gamma": str(gamma[mp]), "delta": str(delta[mp])} for mp in sorted(gamma, key=str)
            },
        }
    )
    return 0


def cmd_verify(args) -> int:
    names = list(args.suite or [])
    if args.formula:
        names.append(f"formulas-{args.formula}")
    unknown = [s for s in names if s not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(verify.SUITES)}")
    checks = verify.run(names or None, max_letters=args.max_letters, max_sum=args.max_sum)
    failed = [c for c in checks if not c.passed]
    for c in checks:
        if args.verbose or not c.passed:
            print(c.line())
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        print(f"first failing identity: {failed[0].name}", file=sys.stderr)
        return 1
    return 0


def cmd_formulas(args) -> int:
    p = _profile(args.profile)
    count.load_tables()
    out = {
        "profile": str(p),
        "genus": genus_of(p),
        "z": str(centralizer_order(p)),
        "c": str(count.c_closed(p)),
        "c_recursive": str(count.c_recursive(p)),
        "c_goupil_schaeffer": str(count.c_goupil_schaeffer(p)),
        "components": [c.kind.value for c in count.stratum_components(p)],
    }
    if p.all_odd():
        out["d"] = str(count.d_closed(p))
        out["d_recursive"] = str(count.d_recursive(p))
    if p.length == 1 and p.parts[0] % 2 == 1:
        g, dl = count.minimal_stratum_counts(p.parts[0])
        out["minimal_stratum"] = {"gamma_irr": str(g), "delta_irr": str(dl)}
    out["marked_profiles"] = {
        str(mp): {
            "gamma_irr": str(count.gamma_irr(mp)),
            "delta_irr": str(count.delta_irr(mp)),
            "gamma_std": str(count.gamma_std(mp)),
            "delta_std": str(count.delta_std(mp)),
        }
        for mp in count.marked_profiles(p)
    }
    out["irreducible_total"] = str(sum(count.gamma_irr(mp) for mp in count.marked_profiles(p)))
    _emit(out)
    count.save_tables()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rauzy",
        description="Invariants, exploration and cardinality formulas for Rauzy classes.",
        epilog=f"Cache directory: ${ENV_VAR} (default ~/.cache/rauzy); safe to delete.",
    )
    parser.add_argument("--threads", type=int, default=1, help="workers for class exploration (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="profile, marking, spin of one permutation")
    p.add_argument("permutation", help='bottom row, e.g. "4 2 3 1", or "a b c / b c a"')
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("predict", help="predicted Rauzy class sizes for a profile")
    p.add_argument("profile", help='comma-separated parts, e.g. "4,3,2,1"')
    p.add_argument("--degree", type=int, help="only classes with this left degree")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("build", help="explore the Rauzy class of a permutation")
    p.add_argument("permutation")
    p.add_argument("--extended", action="store_true", help="also close under inversion")
    p.add_argument("--dot", metavar="PATH", help="write the diagram in DOT format")
    p.add_argument("--stats", action="store_true", help="tally markings, standard permutations, spin")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("census", help="brute-force tally of all irreducible permutations")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run identity checks; exit 1 on any mismatch")
    p.add_argument("--max-letters", type=int, default=7)
    p.add_argument("--max-sum", type=int, default=12)
    p.add_argument("--formula", choices=["c", "d"], help="only the c or d formula sweep")
    p.add_argument("--suite", action="append", help=f"suite name, repeatable: {', '.join(verify.SUITES)}")
    p.add_argument("-v", "--verbose", action="store_true", help="print passing checks too")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("formulas", help="c, d, gamma and delta tables for one profile")
    p.add_argument("profile")
    p.set_defaults(func=cmd_formulas)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except (UsageError, PartitionError, PermutationError, SpinError, ValueError) as exc:
        print(f"rauzy: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
