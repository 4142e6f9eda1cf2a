import pytest
from hypothesis import settings
from hypothesis import strategies as st

from rauzy.partition import IntegerPartition
from rauzy.perm import ReducedPermutation, is_irreducible

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def isolated_cache(tmp_path_factory):
    """Keep cache files out of the user's home directory."""
    mp = pytest.MonkeyPatch()
    mp.setenv("RAUZY_CACHE_DIR", str(tmp_path_factory.mktemp("cache")))
    yield
    mp.undo()


def perms_st(min_n: int = 1, max_n: int = 8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(ReducedPermutation)
    )


def irreducible_st(min_n: int = 2, max_n: int = 8):
    return perms_st(min_n, max_n).filter(is_irreducible)


def standard_st(min_n: int = 3, max_n: int = 9):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(2, n)).map(lambda mid: ReducedPermutation((n, *mid, 1)))
    )


def partitions_st(max_len: int = 5, max_part: int = 7):
    return st.lists(st.integers(1, max_part), max_size=max_len).map(IntegerPartition)


def profiles_st(max_len: int = 4, max_part: int = 6):
    return st.lists(st.integers(1, max_part), min_size=1, max_size=max_len).map(IntegerPartition).filter(
        lambda p: p.is_surface_profile()
    )
