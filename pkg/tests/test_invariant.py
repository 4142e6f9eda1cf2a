from itertools import permutations, product

import pytest
from hypothesis import given

from rauzy import explore
from rauzy.invariant import (
    MarkedProfile,
    SpinError,
    Type1,
    Type2,
    arf,
    arf_by_count,
    concatenate_marked,
    direct_marked_profile,
    intersection_matrix,
    interval_diagram,
    is_hyperelliptic_class,
    marked_profile,
    parse_marking,
    profile,
    spin_parity,
)
from rauzy.partition import IntegerPartition as P, PartitionError, genus_of
from rauzy.perm import LabeledPermutation, PermutationError, ReducedPermutation as R, concatenate, is_irreducible, symmetric

from conftest import irreducible_st

EVEN_WITNESS = R.parse("8 5 4 3 2 7 6 1")
ODD_WITNESS = R.parse("8 3 2 5 4 7 6 1")


def irreducibles(n):
    return [R(p) for p in permutations(range(1, n + 1)) if is_irreducible(R(p))]


def gf2_rank(matrix):
    rows = [int("".join(map(str, r)), 2) for r in matrix]
    rank = 0
    while rows:
        pivot = rows.pop()
        if pivot:
            rank += 1
            top = pivot.bit_length() - 1
            rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank


def test_marking_text_forms():
    assert parse_marking("3|1") == Type1(3, 1)
    assert parse_marking("1o3") == Type2(1, 3) == parse_marking("1⊙3")
    assert str(MarkedProfile.parse("3|1;1,1")) == "3|1;1,1"
    assert MarkedProfile.parse("1o1;1").profile == P([1, 1, 1])
    with pytest.raises(PartitionError):
        parse_marking("3|3")
    with pytest.raises(PartitionError):
        parse_marking("3-1")


def test_interval_diagram_labeled_example():
    diag = interval_diagram(LabeledPermutation.parse("A B C D / B C D A"))
    assert str(diag) == "(out(B,A) in(D,A)) (out(C) in(B)) (out(D) in(C))"


def test_interval_diagram_small():
    assert interval_diagram(R.parse("2 1")).cycle_lengths() == [2]
    assert interval_diagram(R.parse("4 2 3 1")).cycle_lengths() == [2, 2, 2]
    with pytest.raises(PermutationError):
        interval_diagram(R.parse("1 2"))


@pytest.mark.parametrize("n", range(2, 8))
def test_interval_diagram_alternates(n):
    for pi in irreducibles(n):
        for cycle in interval_diagram(pi).cycles:
            tags = [e[0] for e in cycle]
            assert all(a != b for a, b in zip(tags, tags[1:] + tags[:1]))
        halves = sorted((k // 2 for k in interval_diagram(pi).cycle_lengths()), reverse=True)
        assert tuple(halves) == profile(pi).parts


def test_profile_examples():
    assert profile(R.parse("4 3 2 1")) == P([3])
    assert profile(R.parse("4 2 3 1")) == P([1, 1, 1])
    assert profile(concatenate(R.parse("3 5 4 2 1"), R.parse("2 5 4 1 3"))) == P([7, 1, 1])


def test_marking_direction_vectors():
    assert str(marked_profile(R.parse("2 4 5 1 3"))) == "3|0;1"
    assert str(marked_profile(R.parse("4 5 3 2 1"))) == "3|1;1"
    assert str(marked_profile(R.parse("2 5 3 4 1"))) == "3|2;1"
    assert str(marked_profile(R.parse("2 5 4 1 3"))) == "3o1;-"
    assert str(marked_profile(R.parse("3 5 4 2 1"))) == "1o3;-"


def test_unit_block_marking():
    assert str(marked_profile(R.parse("1"))) == "0o0;-"
    assert spin_parity(R.parse("1 2")) is None


def test_four_block_products_profiles():
    a, b = R.parse("3 5 4 2 1"), R.parse("2 5 4 1 3")
    got = [str(profile(concatenate(x, y))) for x, y in product((a, b), repeat=2)]
    assert got == ["5,3,1", "7,1,1", "3,3,3", "5,3,1"]
    for x, y in product((a, b), repeat=2):
        assert concatenate_marked(marked_profile(x), marked_profile(y)) == direct_marked_profile(concatenate(x, y))


def test_intersection_matrix_examples():
    assert intersection_matrix(R.parse("2 1")) == [[0, 1], [1, 0]]
    assert intersection_matrix(R.parse("1 2")) == [[0, 0], [0, 0]]
    omega = intersection_matrix(R.parse("4 3 2 1"))
    assert omega == [[int(i != j) for j in range(4)] for i in range(4)]
    assert gf2_rank(omega) == 4


@pytest.mark.parametrize("n", range(2, 8))
def test_intersection_rank_is_twice_genus(n):
    for pi in irreducibles(n):
        assert gf2_rank(intersection_matrix(pi)) == 2 * genus_of(profile(pi))


def test_spin_examples():
    assert spin_parity(EVEN_WITNESS) == 0
    assert spin_parity(ODD_WITNESS) == 1
    assert spin_parity(R.parse("4 3 2 1")) == 1
    even = next(pi for pi in irreducibles(6) if profile(pi) == P([2, 2, 1]))
    assert spin_parity(even) is None


def test_arf_examples():
    hyperbolic = [[0, 1], [1, 0]]
    assert arf([0, 0], hyperbolic) == 0
    assert arf([1, 0], hyperbolic) == 0
    assert arf([1, 1], hyperbolic) == 1
    with pytest.raises(SpinError):
        arf([1], [[0]])


def test_arf_accepts_bitmask_rows():
    assert arf([1, 1], [0b10, 0b01]) == arf([1, 1], [[0, 1], [1, 0]])


def test_arf_rank_four_exhaustive():
    """Every form on a rank-4 space of the standard symplectic shape."""
    omega = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    for t in product((0, 1), repeat=4):
        assert arf(list(t), omega) == arf_by_count(list(t), omega) == (t[0] & t[1]) ^ (t[2] & t[3])


def test_hyperelliptic_membership():
    assert is_hyperelliptic_class(R.parse("4 3 2 1"))
    assert not is_hyperelliptic_class(ODD_WITNESS)
    members = explore.build_class(symmetric(6)).vertices()
    assert len(members) == 31 and all(map(is_hyperelliptic_class, members))
    assert not is_hyperelliptic_class(EVEN_WITNESS)


@pytest.mark.parametrize("n", range(3, 8))
def test_invariants_constant_on_classes(n):
    """Left degree is constant on a class; profile and spin on an extended class."""
    seen = set()
    for pi in irreducibles(n):
        if pi in seen:
            continue
        ext = explore.build_class(pi, extended=True)
        verts = ext.vertices()
        seen.update(verts)
        assert len({profile(v) for v in verts}) == 1
        assert len({spin_parity(v) for v in verts}) == 1
        for v in verts[:: max(1, len(verts) // 5)]:
            cls = explore.build_class(v).vertices()
            assert len({marked_profile(w).left_degree for w in cls}) == 1


@given(irreducible_st(2, 9), irreducible_st(2, 9))
def test_spin_additive(a, b):
    sa, sb, s = spin_parity(a), spin_parity(b), spin_parity(concatenate(a, b))
    if sa is not None and sb is not None:
        assert s == sa ^ sb


@given(irreducible_st(2, 6), irreducible_st(2, 6))
def test_concatenation_table_matches_direct(a, b):
    pi = concatenate(a, b)
    assert marked_profile(pi) == direct_marked_profile(pi)
