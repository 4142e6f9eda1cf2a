"""Breadth-first exploration of Rauzy classes, brute-force censuses and the rotation model.

This layer is the oracle the counting formulas are checked against.  Vertices are
kept as compact keys (``perm.encode``) of 0-based bottom rows.
"""
from __future__ import annotations

import hashlib
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterator, TextIO

from .invariant import MarkedProfile, marked_profile_bytes, spin_bytes
from .partition import IntegerPartition
from .perm import (
    MoveKind,
    PermutationError,
    ReducedPermutation,
    bottom_move_bytes,
    decode,
    encode,
    invert_bytes,
    irreducible_bytes,
    rotation,
    top_move_bytes,
    triple_perm,
)

CENSUS_MAX_LETTERS = 9


class ExplorationError(RuntimeError):
    """A structural guarantee failed during exploration."""


@dataclass
class RauzyDiagram:
    seed: ReducedPermutation
    extended: bool
    keys: set[Hashable]
    # key -> targets in the order of ``moves``; only filled when requested
    edges: dict[Hashable, tuple[Hashable, ...]] | None = None

    @property
    def n(self) -> int:
        return self.seed.n

    @property
    def moves(self) -> tuple[MoveKind, ...]:
        if self.extended:
            return (MoveKind.TOP, MoveKind.BOTTOM, MoveKind.INVERT)
        return (MoveKind.TOP, MoveKind.BOTTOM)

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, pi: ReducedPermutation) -> bool:
        return pi.n == self.n and encode(pi.to_bytes()) in self.keys

    def rows(self) -> Iterator[bytes]:
        """0-based bottom rows in lexicographic order."""
        return iter(sorted(decode(k, self.n) for k in self.keys))

    def vertices(self) -> list[ReducedPermutation]:
        return [ReducedPermutation.from_bytes(b) for b in self.rows()]


def _neighbors(b: bytes, extended: bool) -> tuple[bytes, ...]:
    if extended:
        return top_move_bytes(b), bottom_move_bytes(b), invert_bytes(b)
    return top_move_bytes(b), bottom_move_bytes(b)


def _expand(chunk: list[bytes], extended: bool) -> list[tuple[bytes, ...]]:
    return [_neighbors(b, extended) for b in chunk]


def build_class(
    seed: ReducedPermutation, extended: bool = False, with_edges: bool = False, threads: int = 1
) -> RauzyDiagram:
    """The Rauzy class of ``seed`` (closed under inversion too when ``extended``).

    With ``threads > 1`` each BFS layer is expanded in parallel chunks and merged in
    chunk order, so the vertex set and edge map are identical to the serial run.
    """
    b0 = seed.to_bytes()
    if not irreducible_bytes(b0):
        raise PermutationError(f"Rauzy classes are built from irreducible permutations: {seed}")
    n = len(b0)
    enc = encode
    visited = {enc(b0)}
    edges: dict[Hashable, tuple[Hashable, ...]] | None = {} if with_edges else None
    frontier = [b0]
    standard = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier:
            standard += sum(1 for b in frontier if b[0] == n - 1 and b[-1] == 0)
            if pool is None:
                expanded = _expand(frontier, extended)
            else:
                size = max(1, -(-len(frontier) // threads))
                parts = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                expanded = [nb for res in pool.map(_expand, parts, [extended] * len(parts)) for nb in res]
            nxt = []
            for b, nbs in zip(frontier, expanded):
                if edges is not None:
                    edges[enc(b)] = tuple(enc(x) for x in nbs)
                for x in nbs:
                    k = enc(x)
                    if k not in visited:
                        visited.add(k)
                        nxt.append(x)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    if standard < 1:
        raise ExplorationError(f"the class of {seed} contains no standard permutation")
    return RauzyDiagram(seed, extended, visited, edges)


@dataclass
class ClassStats:
    seed: str
    extended: bool
    size: int
    standard_count: int
    profile: str
    spin: int | None
    left_degree: int | None
    degree_tally: dict[int, int] = field(default_factory=dict)
    marking_tally: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "extended": self.extended,
            "size": str(self.size),
            "standard_count": str(self.standard_count),
            "profile": self.profile,
            "spin": self.spin,
            "left_degree": self.left_degree,
            "degree_tally": {str(k): str(v) for k, v in sorted(self.degree_tally.items())},
            "marking_tally": {k: str(v) for k, v in sorted(self.marking_tally.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClassStats":
        return cls(
            seed=data["seed"],
            extended=data["extended"],
            size=int(data["size"]),
            standard_count=int(data["standard_count"]),
            profile=data["profile"],
            spin=data["spin"],
            left_degree=data["left_degree"],
            degree_tally={int(k): int(v) for k, v in data["degree_tally"].items()},
            marking_tally={k: int(v) for k, v in data["marking_tally"].items()},
        )


def stats(diag: RauzyDiagram) -> ClassStats:
    n = diag.n
    tally: Counter = Counter()
    degrees: Counter = Counter()
    standard = 0
    for key in diag.keys:
        b = decode(key, n)
        mp = marked_profile_bytes(b)
        tally[str(mp)] += 1
        degrees[mp.left_degree] += 1
        standard += b[0] == n - 1 and b[-1] == 0
    b0 = diag.seed.to_bytes()
    return ClassStats(
        seed=str(diag.seed),
        extended=diag.extended,
        size=len(diag),
        standard_count=standard,
        profile=str(marked_profile_bytes(b0).profile),
        spin=spin_bytes(b0),
        left_degree=next(iter(degrees)) if len(degrees) == 1 else None,
        degree_tally=dict(degrees),
        marking_tally=dict(tally),
    )


def fingerprint(seed: ReducedPermutation, extended: bool) -> str:
    """Stable cache file stem for a class."""
    text = f"{seed}|{'ext' if extended else 'rauzy'}"
    return f"class-{seed.n}-{hashlib.sha1(text.encode()).hexdigest()[:16]}"


def cached_stats(seed: ReducedPermutation, extended: bool = False, threads: int = 1) -> ClassStats:
    """``stats(build_class(...))`` through the on-disk cache."""
    from .cache import read_json, write_json

    name = fingerprint(seed, extended) + ".json"
    data = read_json(name)
    if data and data.get("seed") == str(seed) and data.get("extended") == extended:
        return ClassStats.from_json(data)
    st = stats(build_class(seed, extended, threads=threads))
    write_json(name, st.to_json())
    return st


# -- censuses ------------------------------------------------------------------------


def census(n: int, kind: str = "irreducible") -> Counter:
    """Tally of ``(marked profile, spin)`` over the permutations of ``n`` letters.

    ``kind`` is ``"irreducible"``, ``"standard"`` or ``"all"``.  Standard permutations are
    enumerated directly (``(n-2)!`` of them), which allows two more letters.
    """
    limit = CENSUS_MAX_LETTERS + (2 if kind == "standard" else 0)
    if not 1 <= n <= limit:
        raise ValueError(f"census supports 1 <= n <= {limit} for {kind!r} permutations")
    if kind not in ("irreducible", "standard", "all"):
        raise ValueError(f"unknown census kind {kind!r}")
    out: Counter = Counter()
    for b in _rows(n, kind):
        mp = marked_profile_bytes(b)
        out[(mp, spin_bytes(b, mp))] += 1
    return out


def _rows(n: int, kind: str) -> Iterator[bytes]:
    if kind == "standard":
        if n == 1:
            yield bytes([0])
            return
        for inner in permutations(range(1, n - 1)):
            yield bytes((n - 1, *inner, 0))
        return
    for p in permutations(range(n)):
        b = bytes(p)
        if kind == "all" or irreducible_bytes(b):
            yield b


def tally_gamma_delta(tally: Counter) -> tuple[Counter, Counter]:
    """Split a census into per-marked-profile totals and odd-minus-even spin differences."""
    gamma: Counter = Counter()
    delta: Counter = Counter()
    for (mp, spin), count in tally.items():
        gamma[mp] += count
        if spin is not None:
            delta[mp] += count if spin else -count
    return gamma, delta


def census_classes(n: int) -> Counter:
    """Irreducible permutations of ``n`` letters grouped by ``(profile, component kind, left degree)``.

    The component is read off each permutation directly: hyperelliptic by membership in
    the extended class of the symmetric permutation, otherwise by spin parity where the
    stratum has spin components.  No counting formula is involved.
    """
    from .count import ComponentKind, stratum_components
    from .invariant import is_hyperelliptic_class

    K = ComponentKind
    kinds_of: dict[IntegerPartition, list] = {}
    out: Counter = Counter()
    for b in _rows(n, "irreducible") if n > 1 else ():
        mp = marked_profile_bytes(b)
        p = mp.profile
        if p not in kinds_of:
            kinds_of[p] = [c.kind for c in stratum_components(p)]
        kinds = kinds_of[p]
        if kinds == [K.CONNECTED]:
            kind = K.CONNECTED
        elif K.HYPERELLIPTIC in kinds and is_hyperelliptic_class(ReducedPermutation.from_bytes(b)):
            kind = K.HYPERELLIPTIC
        elif K.NONHYPERELLIPTIC in kinds:
            kind = K.NONHYPERELLIPTIC
        else:
            kind = K.ODD if spin_bytes(b, mp) else K.EVEN
        out[(p, kind, mp.left_degree)] += 1
    return out


def profile_classes(p: IntegerPartition, extended: bool = True) -> list[RauzyDiagram]:
    """Every (extended) class with profile ``p``, seeded from its standard permutations.

    Every class contains a standard permutation, so this covers all irreducible
    permutations with profile ``p`` on ``s(p) + 1`` letters.
    """
    n = p.size + 1
    out: list[RauzyDiagram] = []
    seen: set[Hashable] = set()
    for b in _rows(n, "standard"):
        if encode(b) in seen or marked_profile_bytes(b).profile != p:
            continue
        diag = build_class(ReducedPermutation.from_bytes(b), extended)
        seen |= diag.keys
        out.append(diag)
    return out


# -- rotation classes --------------------------------------------------------------------


@dataclass(frozen=True)
class RotationModel:
    n: int
    vertices: tuple[tuple[int, int, int], ...]
    left: dict[tuple[int, int, int], tuple[int, int, int]]
    right: dict[tuple[int, int, int], tuple[int, int, int]]


def rotation_model(n: int) -> RotationModel:
    """The graph on triples ``(a, b, c)``, ``a, c >= 1``, ``a + b + c = n``."""
    if n < 2:
        raise ValueError("the rotation model needs n >= 2")
    verts = tuple((a, n - a - c, c) for a in range(1, n) for c in range(1, n - a + 1))
    left, right = {}, {}
    for a, b, c in verts:
        left[(a, b, c)] = (1, a - 1, c) if b == 0 else (a + 1, b - 1, c)
        right[(a, b, c)] = (a, c - 1, 1) if b == 0 else (a, b - 1, c + 1)
    return RotationModel(n, verts, left, right)


def check_rotation_isomorphism(n: int) -> bool:
    """Check that ``(a,b,c) -> triple_perm(a,b,c)`` identifies the model with the rotation class.

    The map must be a bijection onto the class of the rotation permutation.  Every left
    edge ``v -> w`` of the model must be a Top move ``w -> v`` and every right edge a
    Bottom move, read backwards.  The model's arrows run against the moves as they
    are implemented here; no orientation-preserving labeled isomorphism exists for
    ``n >= 4``.  The extended class must have the same vertices.
    """
    model = rotation_model(n)
    diag = build_class(rotation(n), with_edges=True)
    key = {v: encode(triple_perm(*v).to_bytes()) for v in model.vertices}
    if len(set(key.values())) != len(model.vertices) or set(key.values()) != diag.keys:
        return False
    if build_class(rotation(n), extended=True).keys != diag.keys:
        return False
    for v in model.vertices:
        if diag.edges[key[model.left[v]]][0] != key[v]:
            return False
        if diag.edges[key[model.right[v]]][1] != key[v]:
            return False
    return True


# -- DOT export ---------------------------------------------------------------------------


def export_dot(diag: RauzyDiagram, sink: TextIO | None = None) -> str:
    """Deterministic DOT digraph; vertices in lexicographic order, edges labeled t, b, s."""
    if diag.edges is None:
        diag = build_class(diag.seed, diag.extended, with_edges=True)
    n = diag.n
    label = {k: " ".join(str(x + 1) for x in decode(k, n)) for k in diag.keys}
    order = sorted(diag.keys, key=lambda k: decode(k, n))
    index = {k: i for i, k in enumerate(order)}
    lines = [f'digraph "rauzy {diag.seed}" {{']
    for k in order:
        lines.append(f'  v{index[k]} [label="{label[k]}"];')
    for k in order:
        for move, target in zip(diag.moves, diag.edges[k]):
            lines.append(f'  v{index[k]} -> v{index[target]} [label="{move.value}"];')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text
