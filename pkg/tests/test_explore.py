import io
import json

import pytest
from hypothesis import given

from rauzy import explore
from rauzy.count import class_cardinalities, irreducible_count
from rauzy.invariant import marked_profile
from rauzy.partition import IntegerPartition as P
from rauzy.perm import PermutationError, ReducedPermutation as R, rauzy_move, invert_sides, rotation, symmetric, triple_perm

from conftest import irreducible_st

EVEN_WITNESS = R.parse("8 5 4 3 2 7 6 1")
ODD_WITNESS = R.parse("8 3 2 5 4 7 6 1")


def test_build_examples():
    assert len(explore.build_class(R.parse("4 3 2 1"))) == 7
    assert len(explore.build_class(R.parse("4 2 3 1"))) == 6
    assert len(explore.build_class(ODD_WITNESS)) == 5209
    assert len(explore.build_class(EVEN_WITNESS)) == 2327


def test_build_rejects_reducible():
    with pytest.raises(PermutationError):
        explore.build_class(R.parse("2 1 3"))


def test_stats_examples():
    assert explore.stats(explore.build_class(symmetric(4))).standard_count == 1
    assert explore.stats(explore.build_class(rotation(4))).standard_count == 1
    st = explore.stats(explore.build_class(EVEN_WITNESS))
    assert (st.size, st.spin) == (2327, 0)
    assert st.size == sum(st.marking_tally.values()) == sum(st.degree_tally.values())


def test_stats_json_roundtrip():
    st = explore.stats(explore.build_class(R.parse("3 5 4 2 1"), extended=True))
    data = json.loads(json.dumps(st.to_json()))
    assert isinstance(data["size"], str)
    assert explore.ClassStats.from_json(data) == st


def test_cached_stats_warm_equals_cold(tmp_path, monkeypatch):
    monkeypatch.setenv("RAUZY_CACHE_DIR", str(tmp_path))
    cold = explore.cached_stats(symmetric(7), extended=True)
    assert list(tmp_path.glob("class-7-*.json"))
    warm = explore.cached_stats(symmetric(7), extended=True)
    assert warm == cold and warm.size == 63


def test_census_examples():
    assert sum(explore.census(6).values()) == 461
    assert sum(explore.census(4, "standard").values()) == 2
    with pytest.raises(ValueError):
        explore.census(10)
    with pytest.raises(ValueError):
        explore.census(4, "odd")


@pytest.mark.parametrize("n", range(1, 8))
def test_census_total_is_f(n):
    assert sum(explore.census(n).values()) == irreducible_count(n)


def test_census_n6_classes():
    sizes = sorted(explore.census_classes(6).values())
    assert sizes == sorted([31, 134, 105, 66, 90, 20, 15])


@pytest.mark.parametrize("n", range(2, 8))
def test_census_matches_predictor(n):
    observed = explore.census_classes(n)
    predicted = {}
    for p in explore_profiles(n):
        for row in class_cardinalities(p):
            predicted[(p, row.kind, row.degree)] = row.cardinality
    assert dict(observed) == predicted


def explore_profiles(n):
    from rauzy.partition import partitions_of

    return [p for p in partitions_of(n - 1) if p.is_surface_profile()]


def test_rotation_model_sizes():
    assert len(explore.rotation_model(4).vertices) == 6
    assert explore.rotation_model(2).vertices == ((1, 0, 1),)


@pytest.mark.parametrize("n", range(2, 10))
def test_rotation_isomorphism(n):
    assert len(explore.build_class(rotation(n))) == n * (n - 1) // 2
    assert explore.check_rotation_isomorphism(n)


@pytest.mark.parametrize("n", range(4, 8))
def test_rotation_model_reversed_arrows_networkx(n):
    """Independent check: the model with reversed arrows is label-isomorphic to the diagram."""
    nx = pytest.importorskip("networkx")
    model = explore.rotation_model(n)
    g_model = nx.MultiDiGraph()
    for v in model.vertices:
        g_model.add_edge(model.left[v], v, label="t")
        g_model.add_edge(model.right[v], v, label="b")
    diag = explore.build_class(rotation(n))
    g_diag = nx.MultiDiGraph()
    for pi in diag.vertices():
        g_diag.add_edge(pi, rauzy_move(pi, "t"), label="t")
        g_diag.add_edge(pi, rauzy_move(pi, "b"), label="b")
    match = nx.algorithms.isomorphism.categorical_multiedge_match("label", None)
    gm = nx.algorithms.isomorphism.MultiDiGraphMatcher(g_model, g_diag, edge_match=match)
    assert gm.is_isomorphic()
    assert {triple_perm(*v): None for v in model.vertices}.keys() == set(diag.vertices())


def test_export_dot_examples():
    text = explore.export_dot(explore.build_class(symmetric(4)))
    assert text.count("[label=\"t\"]") == 7 and text.count("[label=\"b\"]") == 7
    assert text.count(" -> ") == 14
    assert text.count("label=\"4 3 2 1\"") == 1
    assert explore.export_dot(explore.build_class(rotation(4))).count(" [label=\"") - 12 == 6
    sink = io.StringIO()
    again = explore.export_dot(explore.build_class(symmetric(4), with_edges=True), sink)
    assert again == text == sink.getvalue()


def test_extended_dot_has_inversion_edges():
    text = explore.export_dot(explore.build_class(symmetric(5), extended=True))
    assert text.count("[label=\"s\"]") == 15


@pytest.mark.parametrize("seed", ["6 5 4 3 2 1", "3 5 4 2 1", "8 5 4 3 2 7 6 1"])
def test_threaded_build_identical(seed):
    pi = R.parse(seed)
    serial = explore.build_class(pi, with_edges=True)
    parallel = explore.build_class(pi, with_edges=True, threads=3)
    assert serial.keys == parallel.keys and serial.edges == parallel.edges


@given(irreducible_st(3, 7))
def test_closure_and_in_degree(pi):
    diag = explore.build_class(pi, with_edges=True)
    for i in range(2):
        targets = [diag.edges[k][i] for k in diag.keys]
        assert set(targets) == diag.keys
    assert explore.stats(diag).standard_count >= 1


@given(irreducible_st(3, 7))
def test_inversion_image_of_class(pi):
    """s sends a class to an equal-size set inside one extended class, keeping the profile."""
    cls = explore.build_class(pi)
    image = {invert_sides(v) for v in cls.vertices()}
    assert len(image) == len(cls)
    assert image <= set(explore.build_class(pi, extended=True).vertices())
    assert marked_profile(pi).profile == marked_profile(invert_sides(pi)).profile


@given(irreducible_st(3, 7))
def test_row_swap_maps_class_onto_class(pi):
    swapped = lambda v: R(v.positions())
    image = {swapped(v) for v in explore.build_class(pi).vertices()}
    assert image == set(explore.build_class(swapped(pi)).vertices())


def test_extended_class_splits_by_degree():
    ext = explore.build_class(R.parse("3 5 4 2 1"), extended=True)
    degrees = {}
    for v in ext.vertices():
        degrees.setdefault(marked_profile(v).left_degree, set()).add(v)
    for deg, members in degrees.items():
        assert set(explore.build_class(next(iter(members))).vertices()) == members
    assert sum(map(len, degrees.values())) == len(ext)


def test_profile_classes_cover_profile():
    classes = explore.profile_classes(P([5]), extended=False)
    assert sorted(len(c) for c in classes) == [31, 134]
