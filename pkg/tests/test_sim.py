import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats
from scipy.linalg import expm

from multiasep.duality import duality_a, reversible_measure
from multiasep.process import LEFT, RIGHT, build_generator, transitions
from multiasep.qarith import ONE, eval_at, qpow
from multiasep.sim import (
    decision_tree,
    estimate_duality_gap,
    gillespie_run,
    inductive_step,
    reversible_probabilities,
    sample_reversible,
    semigroup,
    semigroup_duality_gap,
    simulate_many,
    trace_probability,
)
from multiasep.statespace import Basis, Config, sector_of, swap
from multiasep.verify import SELF_DUALITY_GRID


def test_seeded_runs_are_identical():
    c0 = Config(((2, 0, 0), (1, 0, 1), (0, 0, 2)), 3, 2)
    a = gillespie_run("asep", 0.5, c0, 5.0, 11)
    b = gillespie_run("asep", 0.5, c0, 5.0, 11)
    assert a.to_jsonl() == b.to_jsonl()
    assert gillespie_run("asep", 0.5, c0, 5.0, 12).to_jsonl() != a.to_jsonl()


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20)
def test_trajectories_conserve_classes(seed):
    c0 = Config(((2, 0, 0), (0, 1, 1), (0, 0, 2)), 3, 2)
    traj = gillespie_run("asep", 0.6, c0, 3.0, seed)
    assert all(sector_of(c) == sector_of(c0) for _, c in traj.jumps)
    times = [t for t, _ in traj.jumps]
    assert times == sorted(times) and (not times or times[-1] <= 3.0)


def test_trajectory_export_lines():
    traj = gillespie_run("ssep", 0.5, Config(((1, 0), (0, 1)), 2, 1), 2.0, 0)
    lines = traj.to_jsonl().splitlines()
    assert json.loads(lines[0]) == {"time": 0.0, "config": [[1, 0], [0, 1]]}
    assert len(lines) == len(traj.jumps) + 1


def test_invalid_q_is_rejected():
    with pytest.raises(ValueError):
        gillespie_run("asep", 1.5, Config(((1, 0), (0, 1)), 2, 1), 1.0, 0)


def test_first_jump_statistics():
    c0 = Config(((1, 1, 0), (0, 1, 1)), 3, 2)
    moves = transitions("asep", c0)
    rates = {}
    for m in moves:
        rates[m.target] = rates.get(m.target, 0.0) + float(eval_at(m.rate, 0.5))
    total = sum(rates.values())
    first_times, first_targets = [], Counter()
    for seed in range(5000):
        traj = gillespie_run("asep", 0.5, c0, 50.0, seed)
        t, c = traj.jumps[0]
        first_times.append(t)
        first_targets[c] += 1
    mean, se = np.mean(first_times), np.std(first_times) / np.sqrt(len(first_times))
    assert abs(mean - 1 / total) < 3 * se
    obs = [first_targets[k] for k in rates]
    exp = [5000 * r / total for r in rates.values()]
    assert stats.chisquare(obs, exp).pvalue > 0.001


# clock-and-cascade sampler ------------------------------------------------------------


def test_hole_only_site_never_jumps():
    c = Config(((0, 0, 2), (1, 1, 0)), 3, 2)
    rng = np.random.default_rng(0)
    for _ in range(200):
        new, _ = inductive_step(c, 1, RIGHT, 0.5, rng)
        assert new is None
    law = decision_tree(c, 1, RIGHT)
    assert set(law) == {None} and law[None] == ONE


def test_cascade_worked_scenario_probability():
    # site x holds classes 1,2,2,3,3,3,5 bottom to top; site x+1 holds 1,1,2,3,4,4,5
    c = Config(((1, 2, 3, 0, 1), (2, 1, 1, 2, 1)), 5, 7)
    target = swap(c, 1, 3, 4)
    law = decision_tree(c, 1, RIGHT)
    # three lighter particles decline, one of three class-3 accepts; the top class 5 is
    # avoided and one of the two class-4 particles is attempted
    want = qpow(6) * (ONE - qpow(6)) * qpow(2) * (ONE - qpow(4))
    assert law[target] == want
    # one explicit path: three declines, an accept, one avoid, one attempt
    path = [("ask", 1, False), ("ask", 2, False), ("ask", 2, False), ("ask", 3, True),
            ("attempt", 5, False), ("attempt", 4, True)]
    assert trace_probability(path) == qpow(6) * (ONE - qpow(2)) * qpow(2) * (ONE - qpow(2))


@pytest.mark.parametrize("direction", [RIGHT, LEFT])
def test_cascade_chi_square(direction):
    sites = ((1, 1, 0), (0, 1, 1)) if direction == RIGHT else ((0, 1, 1), (1, 1, 0))
    c = Config(sites, 3, 2)
    law = {k: float(eval_at(v, 0.5)) for k, v in decision_tree(c, 1, direction).items()}
    assert abs(sum(law.values()) - 1) < 1e-12
    rng = np.random.default_rng(2024)
    counts = Counter(inductive_step(c, 1, direction, 0.5, rng)[0] for _ in range(100_000))
    keys = list(law)
    assert len(keys) > 2
    assert set(counts) <= set(keys)
    p = stats.chisquare([counts[k] for k in keys], [1e5 * law[k] for k in keys]).pvalue
    assert p > 0.001


def test_trace_probability_matches_sampler():
    c = Config(((1, 1, 0), (0, 1, 1)), 3, 2)
    rng = np.random.default_rng(5)
    new, trace = inductive_step(c, 1, RIGHT, 0.5, rng)
    assert 0 < trace_probability(trace, 0.5) <= 1


# semigroup ----------------------------------------------------------------------------------


def test_semigroup_at_zero_is_identity():
    gen = build_generator("asep", 2, 1, 3)
    assert np.array_equal(semigroup(gen, 0.0, 0.5), np.eye(len(gen.row_basis)))


@pytest.mark.parametrize("q0", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_semigroup_matches_expm(q0, t):
    Q = build_generator("asep", 3, 2, 2).to_dense(q0)
    P = semigroup(Q, t)
    assert np.abs(P - expm(t * Q)).max() < 1e-10
    assert np.abs(P.sum(axis=1) - 1).max() < 1e-10


def test_semigroup_cap_and_sign():
    Q = np.zeros((3, 3))
    with pytest.raises(ValueError):
        semigroup(Q, -1.0)
    with pytest.raises(ValueError):
        semigroup(Q, 1.0, cap=2)


@pytest.mark.parametrize("n,j2,L", SELF_DUALITY_GRID)
def test_semigroup_duality_on_grid(n, j2, L):
    for q0 in (0.3, 0.5, 0.8):
        for t in (0.5, 1.0, 2.0):
            assert semigroup_duality_gap(n, j2, L, q0, t) < 1e-8


# Monte Carlo ------------------------------------------------------------------------------------


def test_estimate_at_time_zero_is_exact():
    x0 = Config(((1, 0), (1, 0), (0, 1)), 2, 1)
    y0 = Config(((0, 1), (1, 0), (0, 1)), 2, 1)
    r = estimate_duality_gap(x0, y0, 0.0, 0.5, 1000, 0)
    exact = float(eval_at(duality_a(x0, y0), 0.5))
    assert r["lhs"] == pytest.approx(exact, rel=1e-12) and r["rhs"] == pytest.approx(exact, rel=1e-12)
    assert r["lhs_stderr"] == pytest.approx(0, abs=1e-15)


def test_estimate_is_reproducible():
    x0 = Config(((1, 0), (1, 0), (0, 1)), 2, 1)
    y0 = Config(((0, 1), (1, 0), (0, 1)), 2, 1)
    a = estimate_duality_gap(x0, y0, 1.0, 0.5, 5000, 9)
    b = estimate_duality_gap(x0, y0, 1.0, 0.5, 5000, 9)
    assert a == b


def test_estimate_agrees_with_semigroup():
    x0 = Config(((1, 0), (1, 0), (0, 1)), 2, 1)
    y0 = Config(((0, 1), (1, 0), (0, 1)), 2, 1)
    gen = build_generator("asep", 2, 1, 3, sector_of(x0))
    P = semigroup(gen, 1.0, 0.5)
    d = np.array([float(eval_at(duality_a(e, y0), 0.5)) for e in gen.row_basis])
    exact = (P @ d)[gen.row_basis.rank(x0)]
    r = estimate_duality_gap(x0, y0, 1.0, 0.5, 50_000, 3)
    assert abs(r["lhs"] - exact) < 4 * r["lhs_stderr"]


# reversible measure sampling -------------------------------------------------------------------


def test_worked_sector_frequencies():
    basis = Basis.sector(3, 2, 2, (1, 1))
    q0 = 0.5
    w = np.array([q0 ** -4, (q0 + 1 / q0) * q0 ** -7, (q0 + 1 / q0) * q0 ** -9, q0 ** -12])
    assert np.allclose(reversible_probabilities(basis, q0), w / w.sum(), rtol=1e-12)
    draws = sample_reversible(3, 2, 2, (1, 1), q0, seed=4, size=100_000)
    counts = Counter(draws)
    p = stats.chisquare([counts[c] for c in basis], 1e5 * w / w.sum()).pvalue
    assert p > 0.001


def test_single_state_sector_and_empty_sector():
    (only,) = Basis.sector(2, 1, 3, (3,))
    assert sample_reversible(2, 1, 3, (3,), 0.5, seed=1) == only
    with pytest.raises(ValueError):
        sample_reversible(2, 1, 3, (4,), 0.5, seed=1)


def test_reversible_measure_is_stationary_under_dynamics():
    n, j2, L, m, q0 = 3, 2, 2, (1, 1), 0.5
    basis = Basis.sector(n, j2, L, m)
    p = reversible_probabilities(basis, q0)
    starts = sample_reversible(n, j2, L, m, q0, seed=21, size=5000)
    finals = Counter(gillespie_run("asep", q0, c, 1.5, 1000 + k).final for k, c in enumerate(starts))
    assert stats.chisquare([finals[c] for c in basis], 5000 * p).pvalue > 0.001
    # vectorized chains started from the measure as well
    gen = build_generator("asep", n, j2, L, m)
    rng = np.random.default_rng(8)
    idx = rng.choice(len(basis), size=50_000, p=p)
    end = simulate_many(gen.to_dense(q0), idx, 2.0, idx.size, rng)
    assert stats.chisquare(np.bincount(end, minlength=len(basis)), 50_000 * p).pvalue > 0.001


def test_weights_match_closed_form():
    basis = Basis.sector(3, 2, 2, (1, 1))
    raw = [float(eval_at(reversible_measure(c), 0.5)) for c in basis]
    assert raw[0] / raw[3] == pytest.approx(0.5 ** 8)
