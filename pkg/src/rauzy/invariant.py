"""Classification invariants: interval diagram, profile, marking, spin parity, hyperellipticity.

Internally the interval diagram of a 0-based bottom row ``b`` of length ``n``
lives on the integers ``0..2n-1``: ``a`` is the outgoing half-edge of letter
``a`` and ``n + a`` the incoming one.  The two merged elements are stored under
``out(b[0])`` (left end) and ``in(n-1)`` (right end).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Sequence

from .partition import IntegerPartition, PartitionError, disjoint_union
from .perm import (
    LabeledPermutation,
    PermutationError,
    ReducedPermutation,
    decompose,
    irreducible_bytes,
    symmetric,
)

# Which way the angle of a first-type marking is counted around the common
# singularity.  "forward" walks the cycle of sigma from the left end to the
# right end; it is the one matching the worked examples (see tests).
MARKING_DIRECTION = "forward"


# -- markings -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Type1:
    """Both ends of the interval at one singularity of angle ``m``; angle ``a`` between them."""

    m: int
    a: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.a <= self.m - 1:
            raise PartitionError(f"invalid first-type marking {self.m}|{self.a}")

    def __str__(self) -> str:
        return f"{self.m}|{self.a}"

    @property
    def left_degree(self) -> int:
        return self.m

    def parts(self) -> tuple[int, ...]:
        return (self.m,)


@dataclass(frozen=True, order=True)
class Type2:
    """Left end at a singularity of angle ``m_l``, right end at another one of angle ``m_r``."""

    m_l: int
    m_r: int

    def __post_init__(self):
        if self.m_l < 0 or self.m_r < 0:
            raise PartitionError(f"invalid second-type marking {self.m_l}o{self.m_r}")

    def __str__(self) -> str:
        return f"{self.m_l}o{self.m_r}"

    @property
    def left_degree(self) -> int:
        return self.m_l

    def parts(self) -> tuple[int, ...]:
        return tuple(x for x in (self.m_l, self.m_r) if x > 0)


Marking = Type1 | Type2

_MARKING_RE = re.compile(r"^\s*(\d+)\s*(\||o|⊙)\s*(\d+)\s*$")


def parse_marking(text: str) -> Marking:
    match = _MARKING_RE.match(text)
    if not match:
        raise PartitionError(f"cannot parse marking {text!r}")
    x, sep, y = match.groups()
    return Type1(int(x), int(y)) if sep == "|" else Type2(int(x), int(y))


@dataclass(frozen=True)
class MarkedProfile:
    marking: Marking
    residual: IntegerPartition = IntegerPartition()

    @classmethod
    def parse(cls, text: str) -> "MarkedProfile":
        head, _, tail = text.partition(";")
        return cls(parse_marking(head), IntegerPartition.parse(tail))

    def __str__(self) -> str:
        return f"{self.marking};{self.residual}"

    @property
    def profile(self) -> IntegerPartition:
        return IntegerPartition([*self.marking.parts(), *self.residual.parts])

    @property
    def left_degree(self) -> int:
        return self.marking.left_degree

    def is_genuine(self) -> bool:
        """Parity holds and no zero sits in the marking."""
        mk = self.marking
        if isinstance(mk, Type2) and (mk.m_l == 0 or mk.m_r == 0):
            return False
        return self.profile.is_surface_profile()


# -- interval diagram -----------------------------------------------------------


def _sigma(b: bytes) -> list[int]:
    """The interval diagram as an array on ``0..2n-1``; the two alias slots hold -1."""
    n = len(b)
    pos = [0] * n
    for i, x in enumerate(b):
        pos[x] = i
    left, right = b[0], 2 * n - 1
    alias_out, alias_in = 0, n + b[-1]

    def canon(e: int) -> int:
        if e == alias_out:
            return left
        if e == alias_in:
            return right
        return e

    def tilde(e: int) -> int:
        if e < n:
            p = pos[e]
            return 0 if p == 0 else n + b[p - 1]
        a = e - n
        return a + 1 if a != n - 1 else n + b[-1]

    sigma = [-1] * (2 * n)
    for e in range(2 * n):
        if e in (alias_out, alias_in):
            continue
        if e == left:
            src = alias_out
        elif e == right:
            src = alias_in
        else:
            src = e
        sigma[e] = canon(tilde(src))
    return sigma


def _cycles(sigma: list[int]) -> list[list[int]]:
    seen = [False] * len(sigma)
    cycles = []
    for start, img in enumerate(sigma):
        if img < 0 or seen[start]:
            continue
        cyc, e = [], start
        while not seen[e]:
            seen[e] = True
            cyc.append(e)
            e = sigma[e]
        cycles.append(cyc)
    return cycles


def _check_irreducible_bytes(b: bytes) -> None:
    if len(b) < 2 or not irreducible_bytes(b):
        raise PermutationError(
            "the interval diagram is computed for irreducible permutations of length >= 2"
        )


@dataclass(frozen=True)
class IntervalDiagram:
    """Cycles of sigma; elements are ``("out"|"in", labels)`` with two labels for merged ends."""

    cycles: tuple[tuple[tuple[str, tuple[Hashable, ...]], ...], ...]

    def __str__(self) -> str:
        def fmt(el):
            tag, labels = el
            inner = ",".join(map(str, labels))
            return f"{tag}({inner})"

        return " ".join("(" + " ".join(fmt(e) for e in c) + ")" for c in self.cycles)

    def cycle_lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


def interval_diagram(pi: ReducedPermutation | LabeledPermutation) -> IntervalDiagram:
    if isinstance(pi, LabeledPermutation):
        alphabet, reduced = pi.top, pi.reduce()
    else:
        reduced = pi
        alphabet = tuple(range(1, pi.n + 1))
    b = reduced.to_bytes()
    _check_irreducible_bytes(b)
    n = len(b)
    sigma = _sigma(b)

    def name(e: int):
        if e == b[0]:
            return ("out", (alphabet[b[0]], alphabet[0]))
        if e == 2 * n - 1:
            return ("in", (alphabet[n - 1], alphabet[b[-1]]))
        return ("out", (alphabet[e],)) if e < n else ("in", (alphabet[e - n],))

    return IntervalDiagram(tuple(tuple(name(e) for e in c) for c in _cycles(sigma)))


# -- profile and marking ------------------------------------------------------------


def _marking_bytes(b: bytes, direction: str) -> tuple[Marking, list[int]]:
    """Marking and the list of half cycle lengths of an irreducible bottom row."""
    n = len(b)
    sigma = _sigma(b)
    left, right = b[0], 2 * n - 1
    halves: list[int] = []
    marking: Marking | None = None
    cycles = _cycles(sigma)
    cyc_of: dict[int, int] = {}
    for idx, cyc in enumerate(cycles):
        halves.append(len(cyc) // 2)
        if left in cyc or right in cyc:
            for e in (left, right):
                if e in cyc:
                    cyc_of[e] = idx
    il, ir = cyc_of[left], cyc_of[right]
    if il == ir:
        cyc = cycles[il]
        size = len(cyc)
        j = (cyc.index(right) - cyc.index(left)) % size
        between = j - 1 if direction == "forward" else size - j - 1
        marking = Type1(size // 2, between // 2)
        halves.pop(il)
    else:
        marking = Type2(halves[il], halves[ir])
        for idx in sorted((il, ir), reverse=True):
            halves.pop(idx)
    return marking, halves


def concatenate_marked(left: MarkedProfile, right: MarkedProfile) -> MarkedProfile:
    """Marked profile of a concatenation from those of its two pieces."""
    ml, mr = left.marking, right.marking
    res = disjoint_union(left.residual, right.residual)
    if isinstance(ml, Type1) and isinstance(mr, Type1):
        m = ml.m + mr.m + 1
        return MarkedProfile(Type1(m, ml.a + mr.a + 1), res)
    if isinstance(ml, Type1):
        return MarkedProfile(Type2(ml.m + mr.m_l + 1, mr.m_r), res)
    if isinstance(mr, Type1):
        return MarkedProfile(Type2(ml.m_l, ml.m_r + mr.m + 1), res)
    return MarkedProfile(Type2(ml.m_l, mr.m_r), disjoint_union(res, IntegerPartition([ml.m_r + mr.m_l + 1])))


UNIT_BLOCK = MarkedProfile(Type2(0, 0))


def marked_profile_bytes(b: bytes, direction: str | None = None) -> MarkedProfile:
    direction = direction or MARKING_DIRECTION
    if len(b) >= 2 and irreducible_bytes(b):
        marking, halves = _marking_bytes(b, direction)
        return MarkedProfile(marking, IntegerPartition(halves))
    blocks = decompose(ReducedPermutation.from_bytes(b))
    result = None
    for blk in blocks:
        mp = UNIT_BLOCK if blk.n == 1 else marked_profile_bytes(blk.to_bytes(), direction)
        result = mp if result is None else concatenate_marked(result, mp)
    return result


def direct_marked_profile(pi: ReducedPermutation, direction: str | None = None) -> MarkedProfile:
    """The interval-diagram construction applied as is, even to reducible input.

    Only meaningful as a cross-check of the concatenation table on products of blocks
    of length >= 2; ``marked_profile`` is the normative function.
    """
    if pi.n < 2:
        raise PermutationError("the interval diagram needs at least two letters")
    marking, halves = _marking_bytes(pi.to_bytes(), direction or MARKING_DIRECTION)
    return MarkedProfile(marking, IntegerPartition(halves))


def marked_profile(pi: ReducedPermutation, direction: str | None = None) -> MarkedProfile:
    """Marking plus residual; reducible inputs are assembled block by block."""
    return marked_profile_bytes(pi.to_bytes(), direction)


def profile(pi: ReducedPermutation) -> IntegerPartition:
    return marked_profile(pi).profile


def left_degree(pi: ReducedPermutation) -> int:
    return marked_profile(pi).left_degree


# -- spin -------------------------------------------------------------------------


class SpinError(ValueError):
    """Raised when a quadratic form does not vanish on the kernel of its bilinear form."""


def intersection_rows(b: Sequence[int]) -> list[int]:
    """Rows of the intersection form as bitmasks indexed by label (0-based)."""
    n = len(b)
    pos = [0] * n
    for i, x in enumerate(b):
        pos[x] = i
    rows = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if pos[x] > pos[y]:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return rows


def intersection_matrix(pi: ReducedPermutation) -> list[list[int]]:
    rows = intersection_rows(pi.to_bytes())
    return [[(r >> j) & 1 for j in range(pi.n)] for r in rows]


def _apply(rows: Sequence[int], x: int) -> int:
    """Omega x as a bitmask."""
    acc, i = 0, 0
    while x:
        if x & 1:
            acc ^= rows[i]
        x >>= 1
        i += 1
    return acc


def _bilinear(rows: Sequence[int], x: int, y: int) -> int:
    return (_apply(rows, x) & y).bit_count() & 1


def _quadratic(values: Sequence[int], rows: Sequence[int], x: int) -> int:
    # q(sum e_i) = sum q(e_i) + sum_{i<j} Omega_ij; the pair sum is half the full symmetric sum
    q, pairs, i, y = 0, 0, 0, x
    while y:
        if y & 1:
            q += values[i]
            pairs += (rows[i] & x).bit_count()
        y >>= 1
        i += 1
    return (q + pairs // 2) & 1


def arf(values: Sequence[int], omega: Sequence[Sequence[int]] | Sequence[int]) -> int:
    """Arf invariant of the quadratic form with ``q(e_i) = values[i]`` and polar form ``omega``.

    ``omega`` is either a 0/1 matrix or a list of row bitmasks.  Symplectic reduction:
    split off hyperbolic pairs ``(u, v)`` with ``Omega(u, v) = 1`` and add ``q(u) q(v)``.
    """
    n = len(values)
    if n and not isinstance(omega[0], int):
        rows = [sum((int(v) & 1) << j for j, v in enumerate(row)) for row in omega]
    else:
        rows = list(omega)
    vals = [int(v) & 1 for v in values]
    basis = [1 << i for i in range(n)]
    total = 0
    while basis:
        u = basis.pop()
        ou = _apply(rows, u)
        partner = next((k for k, w in enumerate(basis) if (ou & w).bit_count() & 1), None)
        if partner is None:
            if u and _quadratic(vals, rows, u):
                raise SpinError("no spin structure: the form does not vanish on the kernel")
            continue
        v = basis.pop(partner)
        ov = _apply(rows, v)
        total ^= _quadratic(vals, rows, u) & _quadratic(vals, rows, v)
        rest = []
        for w in basis:
            # project onto the Omega-orthogonal complement of span(u, v)
            if (ov & w).bit_count() & 1:
                w ^= u
            if (ou & w).bit_count() & 1:
                w ^= v
            rest.append(w)
        basis = rest
    return total


def arf_by_count(values: Sequence[int], omega: Sequence[Sequence[int]]) -> int:
    """The majority value of q over the whole space (exhaustive; small dimensions only)."""
    n = len(values)
    rows = [sum((int(v) & 1) << j for j, v in enumerate(row)) for row in omega]
    ones = sum(_quadratic(values, rows, x) for x in range(1 << n))
    zeros = (1 << n) - ones
    if zeros == ones:
        raise SpinError("no spin structure: q is balanced")
    return 0 if zeros > ones else 1


def spin_defined(mp: MarkedProfile) -> bool:
    """All angles odd, counting the zero angles a length-1 block leaves in the marking."""
    return mp.profile.all_odd() and 0 not in _marking_values(mp.marking)


def _marking_values(mk: Marking) -> tuple[int, ...]:
    return (mk.m,) if isinstance(mk, Type1) else (mk.m_l, mk.m_r)


def spin_bytes(b: bytes, mp: MarkedProfile | None = None) -> int | None:
    """Spin parity of a bottom row, or None when some angle is even.

    ``mp`` may pass the already computed marked profile of ``b``.
    """
    if not spin_defined(mp if mp is not None else marked_profile_bytes(b)):
        return None
    total = 0
    for blk in decompose(ReducedPermutation.from_bytes(b)):
        if blk.n > 1:
            total ^= arf([1] * blk.n, intersection_rows(blk.to_bytes()))
    return total


def spin_parity(pi: ReducedPermutation) -> int | None:
    return spin_bytes(pi.to_bytes())


def degenerate_marked_profile(mp: MarkedProfile) -> MarkedProfile:
    """Marked profile of the permutation obtained by removing the ends of a standard one.

    ``m|a -> (m-2)|(m-a-2)``; type-2 ends are exchanged: ``ml o mr -> (mr-1) o (ml-1)``.
    """
    mk = mp.marking
    if isinstance(mk, Type1):
        if not 1 <= mk.a <= mk.m - 2:
            raise ValueError(f"{mp} is not the marked profile of a standard permutation")
        return MarkedProfile(Type1(mk.m - 2, mk.m - mk.a - 2), mp.residual)
    if mk.m_l < 1 or mk.m_r < 1:
        raise ValueError(f"{mp} is not the marked profile of a standard permutation")
    return MarkedProfile(Type2(mk.m_r - 1, mk.m_l - 1), mp.residual)


# -- hyperellipticity -----------------------------------------------------------------


def hyperelliptic_seed(n: int, k: int) -> ReducedPermutation:
    """Symmetric permutation on ``n - k`` letters with ``k`` marked points on its last bottom interval."""
    d = n - k
    if d < 2 or k < 0:
        raise PermutationError(f"no hyperelliptic seed for n={n}, k={k}")
    return ReducedPermutation((*range(n, k + 1, -1), *range(1, k + 2)))


def hyperelliptic_family(p: IntegerPartition) -> tuple[int, int] | None:
    """``(d, k)`` when ``p`` is ``(d-1, 1^k)`` with ``d`` even or ``(g, g, 1^k)`` with ``2g = d-1``."""
    core = [x for x in p.parts if x > 1]
    k = p.length - len(core)
    if len(core) == 1 and core[0] % 2 == 1:
        return core[0] + 1, k
    if len(core) == 2 and core[0] == core[1]:
        return 2 * core[0] + 1, k
    if not core and k >= 1:
        # genus one: the torus (2 1) carrying k - 1 marked points
        return 2, k - 1
    return None


@lru_cache(maxsize=32)
def _hyperelliptic_keys(n: int, k: int) -> frozenset:
    from .explore import build_class

    return frozenset(build_class(hyperelliptic_seed(n, k), extended=True).keys)


def is_hyperelliptic_class(pi: ReducedPermutation) -> bool:
    """Membership in the extended class of the symmetric permutation with matching marked points."""
    if not is_irreducible_perm(pi):
        raise PermutationError(f"hyperellipticity is defined on irreducible permutations: {pi}")
    fam = hyperelliptic_family(profile(pi))
    if fam is None:
        return False
    d, k = fam
    if d + k != pi.n:
        return False
    from .perm import encode

    return encode(pi.to_bytes()) in _hyperelliptic_keys(pi.n, k)


def is_irreducible_perm(pi: ReducedPermutation) -> bool:
    return irreducible_bytes(pi.to_bytes())


__all__ = [
    "IntervalDiagram",
    "MarkedProfile",
    "Marking",
    "SpinError",
    "Type1",
    "Type2",
    "arf",
    "arf_by_count",
    "concatenate_marked",
    "degenerate_marked_profile",
    "direct_marked_profile",
    "hyperelliptic_family",
    "hyperelliptic_seed",
    "intersection_matrix",
    "interval_diagram",
    "is_hyperelliptic_class",
    "left_degree",
    "marked_profile",
    "parse_marking",
    "profile",
    "spin_parity",
    "symmetric",
]
