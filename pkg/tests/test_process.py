import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiasep.operators import is_zero
from multiasep.process import (
    LEFT,
    RIGHT,
    build_generator,
    class_reversed_generator,
    inductive_rate,
    space_reversed_generator,
    transitions,
)
from multiasep.qarith import ONE, qpow
from multiasep.statespace import Config, count_states, full_unrank, sector_of
from oracles import all_configs, asep_rates, numeric_generator, same, to_sympy


@pytest.mark.parametrize("n,j2,L", [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (4, 1, 2)])
def test_rates_match_oracle(n, j2, L):
    for sites in all_configs(n, j2, L):
        c = Config(sites, n, j2)
        got: dict = {}
        for t in transitions("asep", c):
            got[t.target.sites] = got.get(t.target.sites, 0) + to_sympy(t.rate)
        want = asep_rates(sites)
        assert set(got) == set(want)
        for k in want:
            assert same(got[k], want[k])


@pytest.mark.parametrize("n,j2,L", [(2, 2, 3), (3, 2, 2)])
def test_numeric_generator_matches_oracle(n, j2, L):
    states, Q = numeric_generator(n, j2, L, 0.37)
    gen = build_generator("asep", n, j2, L)
    perm = [gen.row_basis.rank(Config(s, n, j2)) for s in states]
    assert np.allclose(gen.to_dense(0.37)[np.ix_(perm, perm)], Q, atol=1e-12)


@pytest.mark.parametrize("model,n,j2,L,sector", [
    ("asep", 3, 2, 3, None), ("ssep", 3, 2, 2, None), ("tazrp", 3, None, 4, (2, 1)),
])
def test_row_sums_vanish(model, n, j2, L, sector):
    gen = build_generator(model, n, j2, L, sector)
    assert all(is_zero(s) for s in gen.row_sums())


@given(st.integers(2, 4), st.integers(1, 3), st.integers(2, 3), st.data())
def test_moves_conserve_class_totals(n, j2, L, data):
    c = full_unrank(data.draw(st.integers(0, count_states(n, j2, L) - 1)), n, j2, L)
    for t in transitions("asep", c):
        assert sector_of(t.target) == sector_of(c)
        assert t.rate.has_nonnegative_coefficients()


def test_worked_example_entries():
    gen = build_generator("asep", 3, 2, 2, (1, 1))
    # 110|002 -> 101|011: the class-2 particle swaps with one of two holes
    assert gen[0, 1] == qpow(1) + qpow(3)
    # reverse move: the class-2 particle jumps back left over one class-1 and one hole
    assert gen[1, 0] == qpow(5)


def test_ssep_is_symmetric_count_rates():
    c = Config(((2, 0), (0, 2)), 2, 2)
    (t,) = [t for t in transitions("ssep", c)]
    assert t.rate == ONE * 4


def test_tazrp_only_moves_right():
    c = Config(((1, 1), (0, 0), (0, 0)), 3, None)
    ts = transitions("tazrp", c)
    assert {t.direction for t in ts} == {RIGHT}
    assert {t.target.sites for t in ts} == {((0, 1), (1, 0), (0, 0)), ((1, 0), (0, 1), (0, 0))}
    with pytest.raises(ValueError):
        build_generator("tazrp", 3, None, 3)


def test_reversed_generators_are_generators():
    gen = build_generator("asep", 3, 1, 3)
    for g in (space_reversed_generator(gen), class_reversed_generator(gen)):
        assert all(is_zero(s) for s in g.row_sums())


@pytest.mark.parametrize("direction", [RIGHT, LEFT])
def test_inductive_rate_matches_generator(direction):
    c = Config(((1, 2, 0, 1), (0, 1, 2, 1)), 4, 4)
    by_target = {t.target: t.rate for t in transitions("asep", c) if t.direction == direction}
    for t in transitions("asep", c):
        if t.direction == direction:
            assert is_zero(inductive_rate(c, t.x, direction, t.k, t.l) - by_target[t.target])


def test_unknown_model():
    with pytest.raises(ValueError):
        transitions("tasep", Config(((1, 0),), 2, 1))
