"""The ten acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` (or ``python3 tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion.  Set ``RAUZY_SKIP_BIG_BFS=1`` to skip the
optional 2.6M-vertex exploration in criterion 5.
"""
from __future__ import annotations

import os
import random
import sys
import time

import pytest

from rauzy import count, explore, verify
from rauzy.count import ComponentKind as K
from rauzy.invariant import Type1, degenerate_marked_profile, direct_marked_profile, marked_profile, spin_parity
from rauzy.partition import IntegerPartition as P
from rauzy.perm import ReducedPermutation as R, concatenate, degenerate, is_irreducible

EVEN_WITNESS = R.parse("8 5 4 3 2 7 6 1")
ODD_WITNESS = R.parse("8 3 2 5 4 7 6 1")
BIG_SEED = R.parse("11 2 4 3 5 7 6 10 9 8 1")


def _failures(checks) -> list[str]:
    return [c.line() for c in checks if not c.passed]


def _timed(limit: float | None, fn):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    if limit is not None and dt >= limit:
        ok, detail = False, f"{detail}; took {dt:.1f}s, limit {limit:.0f}s"
    return ok, f"{detail} [{dt:.1f}s]"


def criterion_1():
    def body():
        checks = list(verify.suite_symmetric(max_letters=14))
        bad = _failures(checks)
        return not bad, bad[0] if bad else "2^(n-1)-1 vertices and one standard permutation for n = 3..14"

    return _timed(10, body)


def criterion_2():
    def body():
        checks = list(verify.suite_rotation(max_letters=9))
        bad = _failures(checks)
        return not bad, bad[0] if bad else "n(n-1)/2 vertices and the triple model matches for n = 2..9"

    return _timed(5, body)


def criterion_3():
    def body():
        total = sum(explore.census(6).values())
        observed = explore.census_classes(6)
        predicted = verify.predicted_classes(6)
        sizes = sorted(observed.values())
        ok = total == 461 and sizes == sorted([31, 134, 105, 66, 90, 20, 15]) and dict(observed) == predicted
        return ok, f"{total} irreducible, class sizes {sizes}, predictor {'agrees' if dict(observed) == predicted else 'differs'}"

    return _timed(5, body)


def criterion_4():
    """Spins are asserted per permutation; BFS sizes as a pair.

    BFS puts the spin-0 witness in the 2327-class and the spin-1 witness in the
    5209-class; the formula predictor agrees (odd 5209, even 2327).
    """

    def body():
        s0, s1 = spin_parity(EVEN_WITNESS), spin_parity(ODD_WITNESS)
        n0, n1 = len(explore.build_class(EVEN_WITNESS)), len(explore.build_class(ODD_WITNESS))
        pred = {r.kind: r.cardinality for r in count.class_cardinalities(P([7]))}
        ok = (s0, s1) == (0, 1) and sorted((n0, n1)) == [2327, 5209] and pred[K.ODD] == n1 and pred[K.EVEN] == n0
        return ok, f"spin({EVEN_WITNESS})={s0} class {n0}; spin({ODD_WITNESS})={s1} class {n1}"

    return _timed(10, body)


def criterion_5():
    def body():
        table = {r.degree: r.cardinality for r in count.class_cardinalities(P([4, 3, 2, 1]))}
        want = {4: 1060774, 3: 792066, 2: 538494, 1: 246914}
        ok = table == want and sum(table.values()) == 2638248
        detail = f"predicted {[table.get(d) for d in (4, 3, 2, 1)]}, total {sum(table.values())}"
        if ok and not os.environ.get("RAUZY_SKIP_BIG_BFS"):
            size = len(explore.build_class(BIG_SEED, extended=True))
            ok = size == 2638248
            detail += f"; extended BFS on {BIG_SEED.n} letters: {size}"
        return ok, detail

    return _timed(None, body)


def criterion_6():
    def body():
        checks = list(verify.suite_formulas_c(max_sum=12)) + list(verify.suite_formulas_d(max_sum=13))
        bad = _failures(checks)
        return not bad, bad[0] if bad else f"{len(checks)} identities (c for s <= 12, d for s <= 13)"

    return _timed(30, body)


def criterion_7():
    def body():
        checks = list(verify.suite_census(max_letters=9)) + list(verify.suite_census_spot(sample=20))
        bad = _failures(checks)
        return not bad, bad[0] if bad else f"{len(checks)} census comparisons (s <= 8 full, s = 9 sampled)"

    return _timed(300, body)


def criterion_8():
    def body():
        checks = list(verify.suite_lift())
        forty_six = sum(count.hyperelliptic_sizes(4, 1).values())
        bad = _failures(checks)
        ok = not bad and forty_six == 46
        return ok, bad[0] if bad else f"{len(checks)} lift checks against BFS; closed form d=4, k=1 gives {forty_six}"

    return _timed(None, body)


def _random_standard(rng: random.Random, n: int) -> R:
    mid = list(range(2, n))
    rng.shuffle(mid)
    return R((n, *mid, 1))


def _random_irreducible(rng: random.Random, n: int) -> R:
    while True:
        row = list(range(1, n + 1))
        rng.shuffle(row)
        pi = R(row)
        if is_irreducible(pi):
            return pi


def criterion_9():
    def body():
        checks = list(verify.suite_degeneration(max_letters=8)) + list(verify.suite_concatenation(max_letters=8))
        rng = random.Random(10)
        bad_random = 0
        for _ in range(2000):
            n = rng.choice((9, 10))
            pi = _random_standard(rng, n)
            low = degenerate(pi)
            mp = marked_profile(pi)
            bad_random += marked_profile(low) != degenerate_marked_profile(mp)
            s_low = spin_parity(low)
            if s_low is not None and isinstance(mp.marking, Type1):
                bad_random += s_low != (spin_parity(pi) + mp.marking.a + 1) % 2
        for _ in range(2000):
            n1 = rng.randint(2, 8)
            a, b = _random_irreducible(rng, n1), _random_irreducible(rng, rng.randint(2, 10 - n1))
            pi = concatenate(a, b)
            bad_random += direct_marked_profile(pi) != marked_profile(pi)
            sa, sb = spin_parity(a), spin_parity(b)
            if sa is not None and sb is not None:
                bad_random += spin_parity(pi) != sa ^ sb
        bad = _failures(checks)
        ok = not bad and bad_random == 0
        return ok, bad[0] if bad else f"exhaustive <= 8 letters ({len(checks)} checks), 4000 random cases <= 10 letters, {bad_random} failures"

    return _timed(None, body)


def criterion_10():
    def body():
        checks = list(verify.suite_arf_standard(max_vars=8))
        bad = _failures(checks)
        return not bad, bad[0] if bad else "all 340 standard-shape forms on 2, 4, 6, 8 variables"

    return _timed(1, body)


CRITERIA = [
    ("1 symmetric classes", criterion_1),
    ("2 rotation classes", criterion_2),
    ("3 six-letter census", criterion_3),
    ("4 spin witnesses", criterion_4),
    ("5 (4,3,2,1) predictor", criterion_5),
    ("6 formula agreement", criterion_6),
    ("7 census oracle", criterion_7),
    ("8 marked-point lift", criterion_8),
    ("9 degeneration and concatenation", criterion_9),
    ("10 arf", criterion_10),
]


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
