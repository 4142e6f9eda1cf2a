"""Counting formulas: standard permutations by profile, irreducible permutations by marked
profile, and the predicted cardinalities of Rauzy classes.

Notation.  ``c(p)`` counts labeled standard permutations whose interval diagram has
cycle type ``p`` and ``d(p)`` is the odd-minus-even spin difference of the same set.
``gamma``/``delta`` count unlabeled permutations by marked profile: ``_std`` for
standard ones, ``_all`` for all permutations, ``_irr`` for irreducible ones.  Spin
differences are always ``#odd - #even``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .invariant import MarkedProfile, Type1, Type2, hyperelliptic_family
from .partition import (
    IntegerPartition,
    PartitionError,
    centralizer_order,
    collapse,
    disjoint_union,
    genus_of,
    ordered_splits,
    split,
    subpartitions_with_multiplicity,
)


class ConsistencyError(ArithmeticError):
    """A quotient that must be exact was not."""


def _exact(num: int | Fraction, den: int = 1) -> int:
    q = Fraction(num) / den
    if q.denominator != 1:
        raise ConsistencyError(f"{num}/{den} is not an integer")
    return int(q)


def _check_profile(p: IntegerPartition) -> None:
    if not p.parts:
        raise PartitionError("the partition must be nonempty")
    if not p.is_surface_profile():
        raise PartitionError(f"{p} is not a valid surface profile")


def _check_odd(p: IntegerPartition) -> None:
    if not p.parts:
        raise PartitionError("the partition must be nonempty")
    if not p.all_odd():
        raise PartitionError(f"{p} has an even part")


# -- c(p) -------------------------------------------------------------------------


def c_closed(p: IntegerPartition, designated: int | None = None) -> int:
    """Closed alternating sum; ``designated`` picks which part plays the role of ``n_1``."""
    _check_profile(p)
    n = p.size
    rest = p.without(p.parts[0] if designated is None else designated)
    total = Fraction(0)
    for q in subpartitions_with_multiplicity(rest):
        sign = -1 if (q.size + q.length) % 2 else 1
        total += Fraction(sign, comb(n, q.size))
    return _exact(2 * factorial(n - 1) * total, n + 1)


@lru_cache(maxsize=None)
def _c_rec(p: IntegerPartition) -> int:
    if p.parts == (1,):
        return 1
    n1, rest = p.parts[0], p.parts[1:]
    total = 0
    for ni in set(rest):
        total += rest.count(ni) * ni * _c_rec_or_zero(collapse(p, n1, ni))
    for a in range(1, n1 - 1):
        total += _c_rec_or_zero(split(p, n1, a))
    return total


def _c_rec_or_zero(p: IntegerPartition) -> int:
    return _c_rec(p) if p.parts and p.is_surface_profile() else 0


def c_recursive(p: IntegerPartition) -> int:
    _check_profile(p)
    return _c_rec(p)


def _weak_compositions(total: int, k: int):
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _weak_compositions(total - first, k - 1):
            yield (first, *tail)


def _s_poly(xs: tuple[int, ...], g: int) -> Fraction:
    k = len(xs)
    total = Fraction(0)
    for ps in _weak_compositions(g, k):
        term = Fraction(1)
        for x, pi in zip(xs, ps):
            term *= Fraction(comb(x - 1, 2 * pi), 2 * pi + 1)
            if not term:
                break
        total += term
    return factorial(k + 2 * g - 1) * total


# The prefactor is the product of the parts over 2^(2g).  Using the full centralizer
# order z_p there overcounts by prod(e_i!), e.g. 12 instead of 2 for (1,1,1).
def c_goupil_schaeffer(p: IntegerPartition) -> int:
    _check_profile(p)
    n, k = p.size, p.length
    g = (n - k) // 2
    total = Fraction(0)
    for g1 in range(g + 1):
        total += (
            Fraction(factorial(2 * g1), 2 * g1 + 1)
            * comb(n - 1, 2 * g1)
            * _s_poly(p.parts, g - g1)
        )
    return _exact(total * prod(p.parts), 4**g)


# -- d(p) -------------------------------------------------------------------------


def d_closed(p: IntegerPartition) -> int:
    _check_odd(p)
    n, k = p.size, p.length
    return _exact(factorial(n - 1), 2 ** ((n - k) // 2))


@lru_cache(maxsize=None)
def _d_rec(p: IntegerPartition) -> int:
    if p.parts == (1,):
        return 1
    n1, rest = p.parts[0], p.parts[1:]
    total = 0
    for ni in set(rest):
        total += rest.count(ni) * ni * _d_rec(collapse(p, n1, ni))
    for a in range(1, n1 - 1, 2):
        total += _d_rec(split(p, n1, a))
    return total


def d_recursive(p: IntegerPartition) -> int:
    _check_odd(p)
    return _d_rec(p)


def c(p: IntegerPartition) -> int:
    return c_closed(p)


def d(p: IntegerPartition) -> int:
    return d_closed(p)


# -- standard permutations by marked profile -----------------------------------------


def _full(mp: MarkedProfile) -> IntegerPartition:
    return mp.profile


def gamma_std(mp: MarkedProfile) -> int:
    """Unlabeled standard permutations with marked profile ``mp``."""
    mk, z = mp.marking, centralizer_order(mp.residual)
    p = _full(mp)
    if not p.parts or not p.is_surface_profile():
        return 0
    if isinstance(mk, Type1):
        if not 1 <= mk.a <= mk.m - 2:
            return 0
        return _exact(c(split(p, mk.m, mk.a)), z)
    if mk.m_l < 1 or mk.m_r < 1:
        return 0
    return _exact(c(collapse(p, mk.m_l, mk.m_r)), z)


def delta_std(mp: MarkedProfile) -> int:
    """Odd-minus-even spin count of standard permutations with marked profile ``mp``."""
    mk, z = mp.marking, centralizer_order(mp.residual)
    p = _full(mp)
    if not p.parts or not p.all_odd() or not p.is_surface_profile():
        return 0
    if isinstance(mk, Type1):
        if not 1 <= mk.a <= mk.m - 2 or mk.a % 2 == 0:
            return 0
        return _exact(d(split(p, mk.m, mk.a)), z)
    if mk.m_l < 1 or mk.m_r < 1:
        return 0
    return _exact(d(collapse(p, mk.m_l, mk.m_r)), z)


# -- all permutations by marked profile (through degeneration) --------------------------


def lift(mp: MarkedProfile) -> MarkedProfile:
    """Marked profile of the standard permutations whose degeneration has marked profile ``mp``.

    Type-2 ends are exchanged: the left end of the degeneration sits at the
    singularity of the right end of the standard permutation.
    """
    mk = mp.marking
    if isinstance(mk, Type1):
        return MarkedProfile(Type1(mk.m + 2, mk.m - mk.a), mp.residual)
    return MarkedProfile(Type2(mk.m_r + 1, mk.m_l + 1), mp.residual)


def gamma_all(mp: MarkedProfile) -> int:
    """All permutations (reducible ones included) with marked profile ``mp``."""
    return gamma_std(lift(mp))


def delta_all(mp: MarkedProfile) -> int:
    """Odd-minus-even spin count over all permutations with marked profile ``mp``.

    Spin is undefined as soon as one angle is even, zeros included.
    """
    mk = mp.marking
    p = _full(mp)
    if not p.all_odd() or not p.is_surface_profile():
        return 0
    if isinstance(mk, Type1):
        return delta_std(lift(mp))
    if mk.m_l < 1 or mk.m_r < 1:
        return 0
    merged = disjoint_union(mp.residual, IntegerPartition([mk.m_l + mk.m_r + 1]))
    return _exact(d(merged), centralizer_order(mp.residual))


# -- irreducible permutations by marked profile --------------------------------------
#
# Every reducible permutation is uniquely (irreducible block) . (any permutation), so
#     all(T) = irr(T) + sum over pieces T1 . T2 = T of irr(T1) * all(T2).
# The pieces are found by running the concatenation table backwards.  Spin adds
# over the two pieces, so the odd-minus-even counts multiply with a sign flip:
#     delta(pi1 . pi2) = -delta(pi1) * delta(pi2).

UNIT = MarkedProfile(Type2(0, 0))


def factorizations(target: MarkedProfile):
    """All pairs ``(T1, T2)`` of marked profiles with ``T1 . T2 = target``, ``T1`` irreducible-shaped."""
    mk, res = target.marking, target.residual
    if isinstance(mk, Type1):
        for m1 in range(1, mk.m - 1):
            m2 = mk.m - 1 - m1
            for a1 in range(max(0, mk.a - m2), min(m1 - 1, mk.a - 1) + 1):
                a2 = mk.a - 1 - a1
                for p1, p2 in ordered_splits(res):
                    yield MarkedProfile(Type1(m1, a1), p1), MarkedProfile(Type1(m2, a2), p2)
        return
    ml, mr = mk.m_l, mk.m_r
    splits = ordered_splits(res)
    # type-1 block then type-2 rest
    for k in range(1, ml):
        nl = ml - 1 - k
        for a1 in range(k):
            for p1, p2 in splits:
                yield MarkedProfile(Type1(k, a1), p1), MarkedProfile(Type2(nl, mr), p2)
    # type-2 block then type-1 rest
    for n in range(1, mr):
        x = mr - 1 - n
        for b in range(n):
            for p1, p2 in splits:
                yield MarkedProfile(Type2(ml, x), p1), MarkedProfile(Type1(n, b), p2)
    # type-2 block then type-2 rest; one residual part is born at the junction
    for part in res.distinct_parts():
        rest = res.without(part)
        for x in range(part):
            y = part - 1 - x
            for p1, p2 in ordered_splits(rest):
                yield MarkedProfile(Type2(ml, x), p1), MarkedProfile(Type2(y, mr), p2)


def _irr_shape_possible(mp: MarkedProfile) -> bool:
    mk = mp.marking
    if isinstance(mk, Type2) and (mk.m_l == 0 or mk.m_r == 0):
        return mp == UNIT
    return mp.profile.is_surface_profile()


# memo tables keyed by marked profile; persisted by save_tables()
_GAMMA_IRR: dict[MarkedProfile, int] = {}
_DELTA_IRR: dict[MarkedProfile, int] = {}


def _gamma_irr(mp: MarkedProfile) -> int:
    hit = _GAMMA_IRR.get(mp)
    if hit is not None:
        return hit
    if mp == UNIT:
        total = 1
    elif not _irr_shape_possible(mp):
        total = 0
    else:
        total = gamma_all(mp)
        for t1, t2 in factorizations(mp):
            if _irr_shape_possible(t1):
                g1 = _gamma_irr(t1)
                if g1:
                    total -= g1 * gamma_all(t2)
    _GAMMA_IRR[mp] = total
    return total


def _delta_irr(mp: MarkedProfile) -> int:
    hit = _DELTA_IRR.get(mp)
    if hit is not None:
        return hit
    total = 0
    if mp != UNIT and _irr_shape_possible(mp) and mp.profile.all_odd():
        total = delta_all(mp)
        for t1, t2 in factorizations(mp):
            if _irr_shape_possible(t1) and t1.profile.all_odd():
                d1 = _delta_irr(t1)
                if d1:
                    total += d1 * delta_all(t2)
    _DELTA_IRR[mp] = total
    return total


def _check_marked(mp: MarkedProfile) -> None:
    if not mp.profile.is_surface_profile():
        raise PartitionError(f"{mp} does not have a valid surface profile")


def gamma_irr(mp: MarkedProfile) -> int:
    """Irreducible permutations with marked profile ``mp``."""
    _check_marked(mp)
    return _gamma_irr(mp)


def delta_irr(mp: MarkedProfile) -> int:
    """Odd-minus-even spin count of irreducible permutations with marked profile ``mp``."""
    _check_marked(mp)
    return _delta_irr(mp)


def marked_profiles(p: IntegerPartition, degree: int | None = None) -> list[MarkedProfile]:
    """Every marked profile whose full profile is ``p``, optionally with a fixed left degree."""
    out = []
    for m in p.distinct_parts():
        if degree is None or m == degree:
            out.extend(MarkedProfile(Type1(m, a), p.without(m)) for a in range(m))
    for ml in p.distinct_parts():
        if degree is not None and ml != degree:
            continue
        rest = p.without(ml)
        out.extend(MarkedProfile(Type2(ml, mr), rest.without(mr)) for mr in rest.distinct_parts())
    return out


def irreducible_count(n: int) -> int:
    """f(n), from ``sum_{i=1}^{n} f(i) (n-i)! = n!``."""
    if n < 1:
        raise ValueError("n must be positive")
    f = [0, 1]
    for m in range(2, n + 1):
        f.append(factorial(m) - sum(f[k] * factorial(m - k) for k in range(1, m)))
    return f[n]


# -- components and class cardinalities -----------------------------------------------


class ComponentKind(enum.Enum):
    CONNECTED = "connected"
    HYPERELLIPTIC = "hyp"
    ODD = "odd"
    EVEN = "even"
    NONHYPERELLIPTIC = "nonhyp"


@dataclass(frozen=True)
class ComponentDescriptor:
    kind: ComponentKind
    profile: IntegerPartition


def stratum_components(p: IntegerPartition) -> list[ComponentDescriptor]:
    """Connected components of the stratum, marked points (parts equal to 1) ignored."""
    _check_profile(p)
    K = ComponentKind
    core = IntegerPartition(x for x in p.parts if x > 1)
    g = genus_of(p)
    if g <= 2:
        kinds = [K.CONNECTED]
    elif g == 3:
        kinds = [K.HYPERELLIPTIC, K.ODD] if core.parts in ((5,), (3, 3)) else (
            [K.ODD, K.EVEN] if core.all_odd() else [K.CONNECTED]
        )
    else:
        single_hyp = core.parts == (2 * g - 1,)
        double_hyp = core.length == 2 and core.parts[0] == core.parts[1]
        if single_hyp or (double_hyp and g % 2 == 1):
            kinds = [K.HYPERELLIPTIC, K.ODD, K.EVEN]
        elif double_hyp:
            kinds = [K.HYPERELLIPTIC, K.NONHYPERELLIPTIC]
        elif core.all_odd():
            kinds = [K.ODD, K.EVEN]
        else:
            kinds = [K.CONNECTED]
    return [ComponentDescriptor(k, p) for k in kinds]


def gamma_irr_degree(p: IntegerPartition, degree: int) -> int:
    return sum(gamma_irr(mp) for mp in marked_profiles(p, degree))


def delta_irr_degree(p: IntegerPartition, degree: int) -> int:
    return sum(delta_irr(mp) for mp in marked_profiles(p, degree))


def hyperelliptic_sizes(d: int, k: int) -> dict[int, int]:
    """Per-left-degree sizes of the hyperelliptic classes on ``d`` core letters plus ``k`` marked points.

    ``d`` even: profile ``(d-1, 1^k)``; ``d`` odd: profile ``(g, g, 1^k)`` with ``2g + 1 = d``.
    """
    if d < 4 or k < 0:
        raise PartitionError(f"no hyperelliptic component for d={d}, k={k}")
    core_degree = d - 1 if d % 2 == 0 else (d - 1) // 2
    base = 2 ** (d - 1) - 1
    out = {core_degree: comb(d + k, k) * base}
    if k >= 1:
        out[1] = out.get(1, 0) + comb(d + k, k - 1) * (base + d)
    return out


@dataclass(frozen=True)
class ClassCardinality:
    kind: ComponentKind
    degree: int
    cardinality: int

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "degree": self.degree, "cardinality": str(self.cardinality)}


def class_cardinalities(p: IntegerPartition) -> list[ClassCardinality]:
    """Predicted size of every Rauzy class with profile ``p``, split by component and left degree.

    Empty components (e.g. even spin in genus 3) are omitted.
    """
    _check_profile(p)
    K = ComponentKind
    kinds = [c.kind for c in stratum_components(p)]
    g = genus_of(p)
    hyp = {}
    if K.HYPERELLIPTIC in kinds:
        d, k = hyperelliptic_family(p)
        hyp = hyperelliptic_sizes(d, k)
    out = []
    for m in p.distinct_parts():
        total = gamma_irr_degree(p, m)
        h = hyp.get(m, 0)
        sizes: dict[ComponentKind, int] = {}
        if kinds == [K.CONNECTED]:
            sizes[K.CONNECTED] = total
        elif K.NONHYPERELLIPTIC in kinds:
            sizes[K.HYPERELLIPTIC] = h
            sizes[K.NONHYPERELLIPTIC] = total - h
        else:
            delta = delta_irr_degree(p, m)
            odd, even = _exact(total + delta, 2), _exact(total - delta, 2)
            if h:
                # the hyperelliptic class carries the spin of its genus
                if g % 4 in (1, 2):
                    odd -= h
                else:
                    even -= h
                sizes[K.HYPERELLIPTIC] = h
            sizes[K.ODD], sizes[K.EVEN] = odd, even
        for kind in kinds:
            n = sizes.get(kind, 0)
            if n < 0:
                raise ConsistencyError(f"negative class size for {kind.value} in {p}, degree {m}")
            if n:
                out.append(ClassCardinality(kind, m, n))
    return out


def cardinalities_json(p: IntegerPartition, degree: int | None = None) -> dict:
    rows = [r for r in class_cardinalities(p) if degree is None or r.degree == degree]
    return {"profile": str(p), "components": [r.to_json() for r in rows]}


# -- hyperelliptic classes, marked points -------------------------------------------


def hyp_marking_candidates(n: int) -> dict[str, int]:
    """Closed forms for the marking tallies of the class of ``symmetric(n)``.

    n even, ``m = n - 1``: ``m|a -> C(m, 2a+1)`` for ``a < n/2``, mirrored by ``a -> m-1-a``.
    n odd, ``g = (n-1)/2``: ``g|a -> C(2g, 2a+1)`` and ``g o g -> 2^(2g-1) - 1``.
    """
    if n < 3:
        raise PartitionError("the symmetric class needs n >= 3")
    out: dict[str, int] = {}
    if n % 2 == 0:
        m, g = n - 1, n // 2
        for a in range(m):
            b = a if a < g else m - 1 - a
            out[str(MarkedProfile(Type1(m, a)))] = comb(m, 2 * b + 1)
    else:
        g = (n - 1) // 2
        for a in range(g):
            out[str(MarkedProfile(Type1(g, a), IntegerPartition([g])))] = comb(2 * g, 2 * a + 1)
        out[str(MarkedProfile(Type2(g, g)))] = 2 ** (2 * g - 1) - 1
    return out


@dataclass(frozen=True)
class HypCounts:
    n: int
    k: int
    per_marking: dict[str, int]
    per_degree: dict[int, int]
    closed_form: dict[int, int]
    candidates: dict[str, int]


def hyp_counts(n: int, k: int = 0) -> HypCounts:
    """Marking tallies of the extended class of the symmetric permutation on ``n - k`` letters
    with ``k`` marked points, by BFS, next to the closed forms."""
    from .explore import build_class, stats
    from .invariant import hyperelliptic_seed

    d = n - k
    if d < 4 or k < 0:
        raise PartitionError(f"no hyperelliptic component on {n} letters with {k} marked points")
    st = stats(build_class(hyperelliptic_seed(n, k), extended=True))
    return HypCounts(
        n=n,
        k=k,
        per_marking=dict(st.marking_tally),
        per_degree=dict(st.degree_tally),
        closed_form=hyperelliptic_sizes(d, k),
        candidates=hyp_marking_candidates(d) if k == 0 else {},
    )


def _binom(x: int, y: int) -> int:
    return comb(x, y) if y >= 0 else 0


@dataclass(frozen=True)
class MarkedPointLift:
    """Predicted sizes after adding ``k`` marked points to an extended class."""

    total: int
    by_degree: dict[int, int]
    by_marking: dict[MarkedProfile, int]


def marked_point_lift(by_marking: dict[MarkedProfile, int], standard_count: int, d: int, k: int) -> MarkedPointLift:
    """Lift an extended class on ``d`` letters (tallied by marked profile, no part equal to 1,
    ``standard_count`` standard permutations) to the class with ``k`` added marked points."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if not by_marking:
        raise ValueError("the base tally is empty")
    core = next(iter(by_marking)).profile
    if 1 in core:
        raise PartitionError("the base profile must not contain a part equal to 1")
    size, r = sum(by_marking.values()), standard_count
    by_left: dict[int, int] = {}
    for mp, count in by_marking.items():
        by_left[mp.left_degree] = by_left.get(mp.left_degree, 0) + count

    def ones(j: int) -> IntegerPartition:
        return IntegerPartition([1] * j)

    out: dict[MarkedProfile, int] = {}
    keep = _binom(d + k - 1, k)
    for mp, count in by_marking.items():
        out[MarkedProfile(mp.marking, disjoint_union(mp.residual, ones(k)))] = keep * count
    if k >= 1:
        one_end = _binom(d + k - 1, k - 1)
        for m in core.distinct_parts():
            res = disjoint_union(core.without(m), ones(k - 1))
            out[MarkedProfile(Type2(m, 1), res)] = one_end * by_left.get(m, 0)
            out[MarkedProfile(Type2(1, m), res)] = one_end * by_left.get(m, 0)
        out[MarkedProfile(Type1(1, 0), disjoint_union(core, ones(k - 1)))] = one_end * d * r
    if k >= 2:
        out[MarkedProfile(Type2(1, 1), disjoint_union(core, ones(k - 2)))] = _binom(d + k - 1, k - 2) * (size + d * r)
    out = {mp: v for mp, v in out.items() if v}
    by_degree: dict[int, int] = {}
    for mp, v in out.items():
        by_degree[mp.left_degree] = by_degree.get(mp.left_degree, 0) + v
    total = _binom(d + k + 1, k) * size + _binom(d + k, k - 1) * d * r
    if total != sum(out.values()):
        raise ConsistencyError("marked-point refinements do not add up to the aggregate")
    return MarkedPointLift(total, by_degree, out)


# -- minimal strata --------------------------------------------------------------------


def _compositions(total: int):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for tail in _compositions(total - first):
            yield (first, *tail)


def minimal_stratum_counts(n: int) -> tuple[int, int]:
    """``(gamma_irr((n)), delta_irr((n)))`` by alternating sums over compositions of ``g = (n+1)/2``.

    A block on ``2c`` letters contributes ``(2c)!/(c+1)`` permutations in total and
    ``(2c)!/2^c`` to the spin difference; the spin sum carries no sign.
    """
    if n < 1 or n % 2 == 0:
        raise PartitionError(f"the minimal stratum needs an odd part, got {n}")
    g = (n + 1) // 2
    gamma = delta = 0
    for comp in _compositions(g):
        sign = 1 if len(comp) % 2 else -1
        gamma += sign * prod(_exact(factorial(2 * ci), ci + 1) for ci in comp)
        delta += prod(_exact(factorial(2 * ci), 2**ci) for ci in comp)
    return gamma, delta


# -- persistence -------------------------------------------------------------------------

_TABLE_FILE = "count_tables.json"


def load_tables() -> int:
    """Warm the irreducible tables from the cache directory; returns the number of keys read."""
    from .cache import read_json

    data = read_json(_TABLE_FILE) or {}
    read = 0
    for key, pair in data.items():
        try:
            mp = MarkedProfile.parse(key)
            g, dl = int(pair[0]), int(pair[1])
        except (ValueError, TypeError, IndexError):
            continue
        _GAMMA_IRR.setdefault(mp, g)
        _DELTA_IRR.setdefault(mp, dl)
        read += 1
    return read


def save_tables() -> None:
    from .cache import write_json

    keys = set(_GAMMA_IRR) | set(_DELTA_IRR)
    write_json(
        _TABLE_FILE,
        {str(mp): [str(_gamma_irr(mp)), str(_delta_irr(mp))] for mp in sorted(keys, key=str)},
    )
