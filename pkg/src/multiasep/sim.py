"""Simulation at numeric ``q``: Gillespie paths, the clock-and-cascade sampler,
uniformized semigroups and Monte Carlo duality estimates."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import sparse, stats

from .duality import duality_a, duality_b_asep, duality_b_tazrp, duality_matrix, reversible_measure
from .operators import SparseOperator
from .process import LEFT, RIGHT, build_generator, transitions
from .operators import is_zero
from .qarith import ONE, RationalFunction, eval_at, qpow, rf_sum
from .statespace import Basis, Config, sector_of, space_reverse, swap

__all__ = [
    "Trajectory",
    "gillespie_run",
    "inductive_step",
    "trace_probability",
    "decision_tree",
    "inductive_move_rates",
    "sampler_equivalence",
    "numeric_generator",
    "simulate_many",
    "semigroup",
    "semigroup_duality_gap",
    "estimate_duality_gap",
    "sample_reversible",
    "reversible_probabilities",
]


def _check_q(q0: float):
    if not 0 < q0 < 1:
        raise ValueError(f"q0 must lie in (0, 1), got {q0}")


# single trajectories ----------------------------------------------------------


@dataclass
class Trajectory:
    initial: Config
    jumps: list = field(default_factory=list)  # (time, Config)
    t_end: float = 0.0
    seed: int | None = None

    def state_at(self, t: float) -> Config:
        cur = self.initial
        for s, c in self.jumps:
            if s > t:
                break
            cur = c
        return cur

    @property
    def final(self) -> Config:
        return self.jumps[-1][1] if self.jumps else self.initial

    def to_jsonl(self) -> str:
        lines = [json.dumps({"time": 0.0, "config": [list(s) for s in self.initial.sites]})]
        lines += [json.dumps({"time": t, "config": [list(s) for s in c.sites]}) for t, c in self.jumps]
        return "\n".join(lines) + "\n"


def gillespie_run(model: str, q0: float, c0: Config, t_end: float, seed: int) -> Trajectory:
    """Exact path simulation with aggregated generator rates."""
    if model != "ssep":
        _check_q(q0)
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    rng = np.random.default_rng(seed)
    cache: dict = {}
    traj = Trajectory(c0, [], t_end, seed)
    t, cur = 0.0, c0
    while True:
        if cur not in cache:
            moves = transitions(model, cur)
            rates = np.array([float(eval_at(m.rate, q0)) for m in moves])
            if not np.all(np.isfinite(rates)):
                raise OverflowError("rate overflow")
            cache[cur] = ([m.target for m in moves], rates)
        targets, rates = cache[cur]
        total = rates.sum()
        if total <= 0:
            break
        t += rng.exponential(1 / total)
        if t > t_end:
            break
        cur = targets[rng.choice(len(targets), p=rates / total)]
        traj.jumps.append((t, cur))
    return traj


# clock-and-cascade sampler -------------------------------------------------------


def _stack(site: Sequence[int], top_first: bool) -> list:
    """Particle classes at a site, bottom (heaviest) first unless ``top_first``."""
    out = [i + 1 for i, v in enumerate(site) for _ in range(v)]
    return out[::-1] if top_first else out


def _phases(c: Config, x: int, direction: str):
    """(asking stack, attempt stack) for the clock at bond ``(x, x+1)``."""
    a, b = c.sites[x - 1], c.sites[x]
    if direction == RIGHT:
        return _stack(a, top_first=False), _stack(b, top_first=True)
    if direction == LEFT:
        return _stack(b, top_first=True), _stack(a, top_first=False)
    raise ValueError(f"direction must be {RIGHT!r} or {LEFT!r}")


def _outcome(c: Config, x: int, direction: str, jumper: int, target: int):
    if target <= jumper:
        return None
    return swap(c, x, jumper, target) if direction == RIGHT else swap(c, x, target, jumper)


def inductive_step(c: Config, x: int, direction: str, q0: float, rng: np.random.Generator):
    """One ring of the clock at bond ``(x, x+1)``.

    Returns ``(new_config or None, trace)``; the trace lists
    ``(phase, class, said_yes)`` for every particle consulted.
    """
    ask, attempt = _phases(c, x, direction)
    p = 1 - q0 * q0
    trace = []
    draws = rng.random(len(ask) + len(attempt))
    jumper = None
    for k, cls in enumerate(ask):
        yes = bool(draws[k] < p)
        trace.append(("ask", cls, yes))
        if yes:
            jumper = cls
            break
    if jumper is None:
        return None, trace
    for k, cls in enumerate(attempt):
        yes = bool(draws[len(ask) + k] < p)
        trace.append(("attempt", cls, yes))
        if yes:
            return _outcome(c, x, direction, jumper, cls), trace
    return None, trace


def trace_probability(trace: Sequence[tuple], q=None):
    """Probability of a trace; symbolic in ``q`` by default, numeric if ``q`` is a number."""
    if q is None:
        yes, no = ONE - qpow(2), qpow(2)
        out = ONE
    else:
        yes, no = 1 - q * q, q * q
        out = 1.0
    for _, _, said in trace:
        out = out * (yes if said else no)
    return out


def decision_tree(c: Config, x: int, direction: str) -> dict:
    """Exact outcome law of one clock ring, by walking every branch particle by particle.

    Keys are target configurations, or ``None`` for no jump; values are
    Laurent polynomials in ``q`` summing to 1.
    """
    ask, attempt = _phases(c, x, direction)
    yes, no = ONE - qpow(2), qpow(2)
    law: dict = {}

    def add(key, prob):
        law[key] = law[key] + prob if key in law else prob

    reach = ONE
    for cls in ask:
        chosen = reach * yes
        inner = ONE
        for tgt in attempt:
            add(_outcome(c, x, direction, cls, tgt), chosen * inner * yes)
            inner = inner * no
        add(None, chosen * inner)
        reach = reach * no
    add(None, reach)
    return {k: v for k, v in law.items() if not v.is_zero()}


def clock_rate(direction: str) -> RationalFunction:
    den = (ONE - qpow(2)) * (ONE - qpow(2))
    return RationalFunction(qpow(-1) if direction == RIGHT else qpow(1), den)


def inductive_move_rates(c: Config) -> dict:
    """Rate of every move out of ``c`` implied by the clock description."""
    out: dict = {}
    for x in range(1, c.L):
        for direction in (RIGHT, LEFT):
            for tgt, prob in decision_tree(c, x, direction).items():
                if tgt is None:
                    continue
                r = clock_rate(direction) * prob
                out[tgt] = out[tgt] + r if tgt in out else r
    return out


def sampler_equivalence(n: int, j2: int, L: int = 2) -> tuple:
    """Compare the clock description with the generator on every configuration.

    Both the per-move rates and the jump law conditioned on a move must agree
    exactly.  Returns ``(True, count)`` or ``(False, counterexample)``.
    """
    count = 0
    for c in Basis.full(n, j2, L):
        tree = inductive_move_rates(c)
        gen: dict = {}
        for t in transitions("asep", c):
            gen[t.target] = gen[t.target] + t.rate if t.target in gen else t.rate
        if set(tree) != set(gen):
            return False, {"config": str(c), "reason": "different move sets"}
        tot_tree, tot_gen = rf_sum(tree.values()), rf_sum(gen.values())
        for tgt in gen:
            if not is_zero(tree[tgt] - gen[tgt]):
                return False, {"config": str(c), "target": str(tgt), "tree": str(tree[tgt]), "gen": str(gen[tgt])}
            if not is_zero(tree[tgt] * tot_gen - tot_tree * gen[tgt]):
                return False, {"config": str(c), "target": str(tgt), "reason": "conditional law differs"}
        count += 1
    return True, count


# many replicas on an enumerated sector ---------------------------------------------


def numeric_generator(gen: SparseOperator, q0) -> np.ndarray:
    """Dense float matrix of a symbolic generator at ``q0``."""
    return gen.to_dense(q0)


def simulate_many(Q: np.ndarray, start: int | np.ndarray, t: float, replicas: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Final state indices of ``replicas`` independent chains run to time ``t``."""
    exit_rates = -np.diag(Q).copy()
    jump = np.where(exit_rates[:, None] > 0, np.maximum(Q, 0) / np.where(exit_rates > 0, exit_rates, 1)[:, None], 0)
    np.fill_diagonal(jump, 0)
    cum = np.cumsum(jump, axis=1)
    state = np.broadcast_to(np.asarray(start), (replicas,)).copy()
    clock = np.zeros(replicas)
    active = exit_rates[state] > 0
    while active.any():
        idx = np.nonzero(active)[0]
        clock[idx] += rng.exponential(1.0, idx.size) / exit_rates[state[idx]]
        moving = idx[clock[idx] <= t]
        done = idx[clock[idx] > t]
        active[done] = False
        if moving.size:
            u = rng.random(moving.size) * cum[state[moving], -1]
            nxt = (cum[state[moving]] < u[:, None]).sum(axis=1)
            state[moving] = np.minimum(nxt, Q.shape[0] - 1)
            active[moving] = exit_rates[state[moving]] > 0
    return state


def semigroup(Q, t: float, q0=None, tol: float = 1e-12, cap: int = 5000) -> np.ndarray:
    """``exp(t Q)`` by uniformization.

    ``Q`` may be a dense array, a scipy sparse matrix, or a symbolic
    :class:`SparseOperator` together with ``q0``.  The time interval is split
    so each piece has ``Lambda t <= 32``; in each piece the Poisson series is
    cut where its tail drops below ``tol / pieces``.
    """
    if isinstance(Q, SparseOperator):
        if q0 is None:
            raise ValueError("a symbolic generator needs q0")
        Q = Q.to_dense(q0)
    elif sparse.issparse(Q):
        Q = Q.toarray()
    Q = np.asarray(Q, dtype=float)
    dim = Q.shape[0]
    if dim > cap:
        raise ValueError(f"{dim} states exceed the cap {cap}")
    if t < 0:
        raise ValueError("t must be non-negative")
    lam = float(np.max(-np.diag(Q))) if dim else 0.0
    if t == 0 or lam == 0:
        return np.eye(dim)
    pieces = max(1, math.ceil(lam * t / 32))
    tau = t / pieces
    mu = lam * tau
    P = np.eye(dim) + Q / lam
    kmax = int(stats.poisson.isf(tol / pieces, mu)) + 1
    weights = stats.poisson.pmf(np.arange(kmax + 1), mu)
    out = np.zeros_like(P)
    term = np.eye(dim)
    for k in range(kmax + 1):
        out += weights[k] * term
        term = term @ P
    return np.linalg.matrix_power(out, pieces)


def semigroup_duality_gap(n: int, j2: int, L: int, q0: float, t: float,
                          sector: Sequence[int] | None = None) -> float:
    """``max |exp(tL) D - D exp(tL)^T|`` for the self-duality function."""
    gen = build_generator("asep", n, j2, L, sector)
    D = duality_matrix(duality_a, gen.row_basis).to_dense(q0)
    P = semigroup(gen, t, q0)
    return float(np.max(np.abs(P @ D - D @ P.T)))


# Monte Carlo duality ----------------------------------------------------------------


def _processes(model: str, x0: Config, y0: Config, reversed_x: bool):
    if model == "tazrp":
        gx = build_generator("tazrp", x0.n, None, x0.L, sector_of(x0))
        gy = build_generator("tazrp", y0.n, None, y0.L, sector_of(y0))
        fn = duality_b_tazrp
        reversed_x = True
    else:
        gx = build_generator(model, x0.n, x0.j2, x0.L, sector_of(x0))
        gy = build_generator(model, y0.n, y0.j2, y0.L, sector_of(y0))
        fn = duality_b_asep if reversed_x else duality_a
    if reversed_x:
        gx = gx.relabel(space_reverse)
    return gx, gy, fn


def _mean_stderr(values: np.ndarray) -> tuple:
    return float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(values.size))


def estimate_duality_gap(x0: Config, y0: Config, t: float, q0: float, replicas: int, seed: int,
                         model: str = "asep", reversed_x: bool = False,
                         duality: Callable | None = None, chunks: int = 8) -> dict:
    """Monte Carlo estimates of ``E_x[D(X_t, y)]`` and ``E_y[D(x, Y_t)]``.

    For q-TAZRP (and with ``reversed_x``) the ``X`` process is the space
    reversal of the model.  Replicas are split into ``chunks`` streams spawned
    from one seed, so results do not depend on how chunks are scheduled.
    """
    _check_q(q0)
    gx, gy, fn = _processes(model, x0, y0, reversed_x)
    fn = duality or fn
    dx = np.array([float(eval_at(fn(e, y0), q0)) for e in gx.row_basis])
    dy = np.array([float(eval_at(fn(x0, k), q0)) for k in gy.row_basis])
    Qx, Qy = gx.to_dense(q0), gy.to_dense(q0)
    ix, iy = gx.row_basis.rank(x0), gy.row_basis.rank(y0)
    seqs = np.random.SeedSequence(seed).spawn(2 * chunks)
    sizes = [replicas // chunks + (1 if k < replicas % chunks else 0) for k in range(chunks)]
    lhs = np.concatenate([dx[simulate_many(Qx, ix, t, s, np.random.default_rng(seqs[k]))]
                          for k, s in enumerate(sizes)])
    rhs = np.concatenate([dy[simulate_many(Qy, iy, t, s, np.random.default_rng(seqs[chunks + k]))]
                          for k, s in enumerate(sizes)])
    lm, ls = _mean_stderr(lhs)
    rm, rs = _mean_stderr(rhs)
    return {"lhs": lm, "lhs_stderr": ls, "rhs": rm, "rhs_stderr": rs,
            "exact": float(eval_at(fn(x0, y0), q0)) if t == 0 else None,
            "replicas": replicas, "seed": seed, "t": t, "q0": q0}


# reversible measure sampling ----------------------------------------------------------


def reversible_probabilities(basis: Basis, q0: float) -> np.ndarray:
    w = np.array([float(eval_at(reversible_measure(c), q0)) for c in basis])
    return w / w.sum()


def sample_reversible(n: int, j2: int, L: int, sector: Sequence[int], q0: float, seed: int,
                      size: int | None = None):
    """Exact draws from the normalized reversible measure of one sector."""
    _check_q(q0)
    basis = Basis.sector(n, j2, L, sector)
    if len(basis) == 0:
        raise ValueError("empty sector")
    p = reversible_probabilities(basis, q0)
    rng = np.random.default_rng(seed)
    if size is None:
        return basis.configs[rng.choice(len(basis), p=p)]
    return [basis.configs[k] for k in rng.choice(len(basis), size=size, p=p)]
