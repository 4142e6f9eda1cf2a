"""Reduced and labeled permutations, Rauzy moves, concatenation and degeneration.

A reduced permutation of length ``n`` is stored as its bottom row: the labels
``1..n`` listed from left to right, the top row being ``1 2 ... n``.  In the
usual group notation this is the one-line form of ``pi^-1``, so ``pi(i)`` is the
position of label ``i`` on the bottom row.

Exploration works on a 0-based ``bytes`` copy of the bottom row; ``pack`` turns
it into a 64-bit key (4 bits per position) when ``n <= 16``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Sequence


class PermutationError(ValueError):
    """Raised when an operation is applied outside its domain."""


class MoveKind(enum.Enum):
    TOP = "t"
    BOTTOM = "b"
    INVERT = "s"


@dataclass(frozen=True)
class ReducedPermutation:
    bottom: tuple[int, ...]

    def __init__(self, bottom: Iterable[int]):
        bottom = tuple(int(x) for x in bottom)
        if sorted(bottom) != list(range(1, len(bottom) + 1)):
            raise PermutationError(f"not a permutation of 1..{len(bottom)}: {bottom}")
        object.__setattr__(self, "bottom", bottom)

    @classmethod
    def parse(cls, text: str) -> "ReducedPermutation":
        """Parse ``"4 2 3 1"``, or the two-row labeled form ``"a b c / b c a"``."""
        if "/" in text:
            return LabeledPermutation.parse(text).reduce()
        try:
            return cls(int(x) for x in text.replace(",", " ").split())
        except ValueError as exc:
            raise PermutationError(f"cannot parse permutation {text!r}") from exc

    @classmethod
    def from_bytes(cls, b: bytes) -> "ReducedPermutation":
        return cls(x + 1 for x in b)

    def to_bytes(self) -> bytes:
        return bytes(x - 1 for x in self.bottom)

    def __len__(self) -> int:
        return len(self.bottom)

    @property
    def n(self) -> int:
        return len(self.bottom)

    def __str__(self) -> str:
        return " ".join(map(str, self.bottom))

    def __repr__(self) -> str:
        return f"ReducedPermutation({str(self)!r})"

    def __call__(self, label: int) -> int:
        """Position of ``label`` on the bottom row (the value pi(label))."""
        return self.bottom.index(label) + 1

    def positions(self) -> tuple[int, ...]:
        """``pos[label - 1]`` = 1-based bottom position of ``label``."""
        pos = [0] * self.n
        for i, x in enumerate(self.bottom):
            pos[x - 1] = i + 1
        return tuple(pos)


@dataclass(frozen=True)
class LabeledPermutation:
    """Two rows over an alphabet; ``top`` and ``bottom`` each list every letter once."""

    top: tuple[Hashable, ...]
    bottom: tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.top) != len(self.bottom) or set(self.top) != set(self.bottom) or len(set(self.top)) != len(self.top):
            raise PermutationError("both rows must enumerate the same alphabet exactly once")

    @classmethod
    def parse(cls, text: str) -> "LabeledPermutation":
        try:
            top, bottom = text.split("/")
        except ValueError as exc:
            raise PermutationError(f"cannot parse labeled permutation {text!r}") from exc
        return cls(tuple(top.split()), tuple(bottom.split()))

    @classmethod
    def section(cls, pi: ReducedPermutation) -> "LabeledPermutation":
        return cls(tuple(range(1, pi.n + 1)), pi.bottom)

    @property
    def alphabet(self) -> tuple[Hashable, ...]:
        return self.top

    def reduce(self) -> ReducedPermutation:
        rank = {a: i + 1 for i, a in enumerate(self.top)}
        return ReducedPermutation(rank[a] for a in self.bottom)

    def __str__(self) -> str:
        return f"{' '.join(map(str, self.top))} / {' '.join(map(str, self.bottom))}"


# -- predicates -------------------------------------------------------------


def is_irreducible(pi: ReducedPermutation) -> bool:
    return _irreducible_seq(pi.bottom, 1)


def _irreducible_seq(b: Sequence[int], base: int) -> bool:
    hi = -1
    for k, x in enumerate(b[:-1]):
        if x > hi:
            hi = x
        if hi == k + base:
            return False
    return True


def is_standard(pi: ReducedPermutation) -> bool:
    return pi.bottom[0] == pi.n and pi.bottom[-1] == 1


# -- moves on bytes (0-based bottom rows) -------------------------------------


@lru_cache(maxsize=None)
def bottom_tables(n: int) -> tuple[bytes, ...]:
    """``tables[m]`` relabels a bottom row after moving top letter ``n-1`` behind letter ``m``."""
    tables = []
    for m in range(n):
        t = list(range(256))
        for x in range(m + 1, n - 1):
            t[x] = x + 1
        t[n - 1] = m + 1
        tables.append(bytes(t))
    return tuple(tables)


def top_move_bytes(b: bytes) -> bytes:
    j = b.index(len(b) - 1)
    return b[: j + 1] + b[-1:] + b[j + 1 : -1]


def bottom_move_bytes(b: bytes) -> bytes:
    return b.translate(bottom_tables(len(b))[b[-1]])


def invert_bytes(b: bytes) -> bytes:
    n = len(b)
    pos = bytearray(n)
    for i, x in enumerate(b):
        pos[x] = i
    return bytes(n - 1 - pos[n - 1 - i] for i in range(n))


def irreducible_bytes(b: bytes) -> bool:
    return _irreducible_seq(b, 0)


def rauzy_move(pi: ReducedPermutation, kind: MoveKind | str) -> ReducedPermutation:
    kind = MoveKind(kind)
    if kind is MoveKind.INVERT:
        return invert_sides(pi)
    if not is_irreducible(pi):
        raise PermutationError(f"Rauzy moves are defined on irreducible permutations only: {pi}")
    b = pi.to_bytes()
    b = top_move_bytes(b) if kind is MoveKind.TOP else bottom_move_bytes(b)
    return ReducedPermutation.from_bytes(b)


def invert_sides(pi: ReducedPermutation) -> ReducedPermutation:
    """Flip the two-row table top/bottom and left/right, then reduce."""
    return ReducedPermutation.from_bytes(invert_bytes(pi.to_bytes()))


# -- packed keys --------------------------------------------------------------

_M1 = int("0f" * 16, 16)
_M2 = int("00ff" * 8, 16)
_M3 = int("0000ffff" * 4, 16)
_M4 = int("00000000ffffffff" * 2, 16)


def pack(b: bytes) -> int:
    """4 bits per position, position 0 in the low nibble; requires ``len(b) <= 16``."""
    v = int.from_bytes(b, "little")
    v = (v | (v >> 4)) & _M2
    v = (v | (v >> 8)) & _M3
    v = (v | (v >> 16)) & _M4
    return (v | (v >> 32)) & 0xFFFFFFFFFFFFFFFF


def unpack(key: int, n: int) -> bytes:
    return bytes((key >> (4 * i)) & 15 for i in range(n))


def encode(b: bytes) -> Hashable:
    """Set-membership key: the packed word for ``n <= 16``, the raw bytes beyond."""
    return pack(b) if len(b) <= 16 else b


def decode(key: Hashable, n: int) -> bytes:
    return unpack(key, n) if n <= 16 else key


# -- concatenation, decomposition, degeneration -------------------------------


def concatenate(*pis: ReducedPermutation) -> ReducedPermutation:
    out: list[int] = []
    for pi in pis:
        shift = len(out)
        out.extend(x + shift for x in pi.bottom)
    return ReducedPermutation(out)


def decompose(pi: ReducedPermutation) -> list[ReducedPermutation]:
    """The unique factorization into irreducible blocks."""
    factors, start, hi = [], 0, 0
    for k, x in enumerate(pi.bottom):
        hi = max(hi, x)
        if hi == k + 1:
            factors.append(ReducedPermutation(y - start for y in pi.bottom[start : k + 1]))
            start = k + 1
    return factors


def degenerate(pi: ReducedPermutation) -> ReducedPermutation:
    """Remove the two ends of a standard permutation: ``pi~(k) = pi(k+1) - 1``."""
    if pi.n < 3 or not is_standard(pi):
        raise PermutationError(f"degeneration needs a standard permutation of length >= 3: {pi}")
    return ReducedPermutation(x - 1 for x in pi.bottom[1:-1])


def remove_letter(pi: ReducedPermutation, label: int) -> ReducedPermutation:
    """Delete ``label`` from both rows and reduce."""
    if not 1 <= label <= pi.n or pi.n < 2:
        raise PermutationError(f"cannot remove letter {label} from {pi}")
    return ReducedPermutation(x - (x > label) for x in pi.bottom if x != label)


def co_degenerate(pi: ReducedPermutation) -> ReducedPermutation:
    n = pi.n + 2
    return ReducedPermutation((n, *(x + 1 for x in pi.bottom), 1))


# -- named permutations -------------------------------------------------------


def symmetric(n: int) -> ReducedPermutation:
    if n < 1:
        raise PermutationError("n must be positive")
    return ReducedPermutation(range(n, 0, -1))


def rotation(n: int) -> ReducedPermutation:
    if n < 2:
        raise PermutationError("the rotation permutation needs n >= 2")
    return ReducedPermutation((n, *range(2, n), 1))


def triple_perm(a: int, b: int, c: int) -> ReducedPermutation:
    """Three blocks: bottom row ``a+b+1..a+b+c | a+1..a+b | 1..a``."""
    if a < 1 or c < 1 or b < 0:
        raise PermutationError(f"need a, c >= 1 and b >= 0: {(a, b, c)}")
    return ReducedPermutation((*range(a + b + 1, a + b + c + 1), *range(a + 1, a + b + 1), *range(1, a + 1)))


def with_marked_points(pi: ReducedPermutation, k: int, label: int = 1) -> ReducedPermutation:
    """Split the interval ``label`` into ``k + 1`` consecutive intervals in both rows."""
    if k < 0:
        raise PermutationError("k must be non-negative")
    top = [(x, 0) for x in range(1, pi.n + 1)]
    bottom = [(x, 0) for x in pi.bottom]

    def expand(row):
        out = []
        for x in row:
            out.extend([(x[0], j) for j in range(k + 1)] if x[0] == label else [x])
        return out

    return LabeledPermutation(tuple(expand(top)), tuple(expand(bottom))).reduce()


# -- constellations -----------------------------------------------------------


def standard_to_constellation(pi: LabeledPermutation | ReducedPermutation):
    """The two cycles (tau_t, tau_b) on the merged alphabet of a standard permutation.

    Returns two dicts mapping each letter of the merged alphabet to its image;
    the letter ``(r_b, r_t)`` stands for the merged pair of end letters.
    """
    if isinstance(pi, ReducedPermutation):
        pi = LabeledPermutation.section(pi)
    if not is_standard(pi.reduce()):
        raise PermutationError("constellations are defined for standard permutations")
    r_t, r_b = pi.top[0], pi.top[-1]
    merged = (r_b, r_t)

    def cycle(row):
        seq = [merged, *row[1:-1]]
        return {x: seq[(i + 1) % len(seq)] for i, x in enumerate(seq)}

    return cycle(pi.top), cycle(pi.bottom)
