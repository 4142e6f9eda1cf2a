"""Integer partitions as multisets, with the surgeries used by the counting formulas."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Iterable, Iterator


class PartitionError(ValueError):
    """Raised on invalid partition input or an impossible surgery."""


@dataclass(frozen=True, order=True)
class IntegerPartition:
    """A multiset of positive integers stored in weakly decreasing order."""

    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(x) for x in parts), reverse=True))
        if parts and parts[-1] < 1:
            raise PartitionError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "IntegerPartition":
        text = text.strip()
        if text in ("-", ""):
            return cls()
        try:
            return cls(int(x) for x in text.split(","))
        except ValueError as exc:
            raise PartitionError(f"cannot parse partition {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "-"

    def __repr__(self) -> str:
        return f"IntegerPartition({self.parts})"

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __contains__(self, m: object) -> bool:
        return m in self.parts

    @property
    def size(self) -> int:
        """s(p), the sum of the parts."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """l(p), the number of parts."""
        return len(self.parts)

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def is_surface_profile(self) -> bool:
        return (self.size + self.length) % 2 == 0

    def all_odd(self) -> bool:
        return all(x % 2 for x in self.parts)

    def without(self, *parts: int) -> "IntegerPartition":
        """``p \\ q`` for the sub-multiset ``q`` given by ``parts``."""
        rest = list(self.parts)
        for m in parts:
            try:
                rest.remove(m)
            except ValueError:
                raise PartitionError(f"{parts} is not a sub-multiset of {self}") from None
        return IntegerPartition(rest)

    def distinct_parts(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.parts), reverse=True))


def disjoint_union(*ps: IntegerPartition) -> IntegerPartition:
    return IntegerPartition(x for p in ps for x in p.parts)


def split(p: IntegerPartition, m: int, a: int) -> IntegerPartition:
    """Remove one ``m`` and insert ``a`` and ``m - a - 1``; zero parts are dropped."""
    if not 0 <= a <= m - 1:
        raise PartitionError(f"split angle {a} outside 0..{m - 1}")
    rest = p.without(m)
    return IntegerPartition([*rest.parts, *(x for x in (a, m - a - 1) if x > 0)])


def collapse(p: IntegerPartition, m_l: int, m_r: int) -> IntegerPartition:
    """Remove one ``m_l`` and one ``m_r`` and insert ``m_l + m_r - 1``."""
    rest = p.without(m_l, m_r)
    return IntegerPartition([*rest.parts, m_l + m_r - 1])


def centralizer_order(p: IntegerPartition) -> int:
    """z_p = prod_i e_i! i^e_i, the order of the centralizer of a permutation of cycle type p."""
    z = 1
    for i, e in p.multiplicities().items():
        z *= factorial(e) * i**e
    return z


def subpartitions_with_multiplicity(p: IntegerPartition) -> list[IntegerPartition]:
    """All 2^l(p) sub-multisets obtained by keeping or dropping each occurrence."""
    out = []
    for mask in product((False, True), repeat=p.length):
        out.append(IntegerPartition(x for x, keep in zip(p.parts, mask) if keep))
    return out


def genus_of(p: IntegerPartition) -> int:
    if not p.is_surface_profile():
        raise PartitionError(f"{p} is not a valid surface profile")
    return (p.size - p.length) // 2 + 1


def partitions_of(n: int, max_part: int | None = None) -> Iterator[IntegerPartition]:
    """All partitions of ``n`` in reverse lexicographic order."""

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first, *tail)

    for parts in rec(n, n if max_part is None else max_part):
        yield IntegerPartition(parts)


def ordered_splits(p: IntegerPartition) -> list[tuple[IntegerPartition, IntegerPartition]]:
    """Distinct ordered pairs ``(p1, p2)`` of multisets with ``p1 ⊎ p2 = p``."""
    items = sorted(p.multiplicities().items())
    out = []
    for counts in product(*(range(e + 1) for _, e in items)):
        left = [x for (x, _), c in zip(items, counts) for _ in range(c)]
        right = [x for (x, e), c in zip(items, counts) for _ in range(e - c)]
        out.append((IntegerPartition(left), IntegerPartition(right)))
    return out
