from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiasep.statespace import (
    Basis,
    Config,
    StateSpaceTooLarge,
    class_reverse,
    count_states,
    enumerate_configs,
    enumerate_sector,
    enumerate_tazrp_sector,
    full_rank,
    full_unrank,
    local_states,
    project,
    projection_sigma,
    sector_of,
    space_reverse,
    swap,
)
from oracles import all_configs


@pytest.mark.parametrize("n,j2,L", [(2, 1, 3), (3, 2, 2), (4, 1, 2), (3, 3, 2), (2, 2, 4)])
def test_full_space_matches_brute_force(n, j2, L):
    got = enumerate_configs(n, j2, L)
    assert len(got) == count_states(n, j2, L) == comb(j2 + n - 1, n - 1) ** L
    assert {c.sites for c in got} == set(all_configs(n, j2, L))
    assert len({c.sites for c in got}) == len(got)


def test_local_states_descend():
    assert local_states(3, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_sector_order_of_worked_example():
    got = [str(c) for c in enumerate_sector(3, 2, 2, (1, 1))]
    assert got == ["110|002", "101|011", "011|101", "002|110"]


@pytest.mark.parametrize("n,j2,L", [(3, 2, 2), (2, 1, 4), (3, 1, 3)])
def test_sectors_partition_full_space(n, j2, L):
    full = enumerate_configs(n, j2, L)
    sectors = {sector_of(c) for c in full}
    total = sum(len(enumerate_sector(n, j2, L, m)) for m in sectors)
    assert total == len(full)
    for m in sectors:
        assert all(sector_of(c) == m for c in enumerate_sector(n, j2, L, m))


def test_tazrp_sector_counts():
    # two distinguishable classes, one particle each, on four sites
    assert len(enumerate_tazrp_sector(3, 4, (1, 1))) == 16
    # two identical particles on four sites: multisets of size 2
    assert len(enumerate_tazrp_sector(2, 4, (2,))) == comb(5, 2)


@given(st.integers(2, 4), st.integers(1, 3), st.integers(1, 3), st.data())
def test_rank_unrank_roundtrip(n, j2, L, data):
    k = data.draw(st.integers(0, count_states(n, j2, L) - 1))
    c = full_unrank(k, n, j2, L)
    assert full_rank(c) == k
    assert Basis.full(n, j2, L).unrank(k) == c


def test_cap_is_enforced():
    with pytest.raises(StateSpaceTooLarge):
        enumerate_configs(4, 3, 12, cap=1000)


def test_config_validation():
    with pytest.raises(ValueError):
        Config(((1, 0), (1, 1)), 2, 1)
    with pytest.raises(ValueError):
        Config(((1, -1, 1),), 3, 1)


def test_swap_moves_one_pair():
    c = Config(((1, 1, 0), (0, 0, 2)), 3, 2)
    assert swap(c, 1, 1, 3).sites == ((0, 1, 1), (1, 0, 1))
    assert swap(c, 1, 3, 1) is None


@given(st.integers(2, 4), st.integers(1, 3), st.integers(2, 3), st.data())
def test_reversals_are_involutions(n, j2, L, data):
    c = full_unrank(data.draw(st.integers(0, count_states(n, j2, L) - 1)), n, j2, L)
    assert space_reverse(space_reverse(c)) == c
    assert class_reverse(class_reverse(c)) == c
    assert sector_of(class_reverse(c)) == tuple(reversed(sector_of(c) + (L * j2 - sum(sector_of(c)),)))[:-1]


def test_projections():
    c = Config(((1, 1, 0), (0, 1, 1)), 3, 2)
    assert project(c, projection_sigma("first", 3, 1)).sites == ((1, 1), (0, 2))
    assert project(c, projection_sigma("tilde", 3, 1)).sites == ((2, 0), (1, 1))
    t = Config(((1, 0), (0, 1)), 3, None)
    assert project(t, (1, 2, 2)).sites == ((1,), (0,))
    with pytest.raises(ValueError):
        project(t, (1, 2, 1))


def test_json_roundtrip():
    c = Config(((2, 0, 0), (0, 1, 1)), 3, 2)
    assert Config.from_json(c.to_json()) == c
