"""Exact identity checks with reproducible counterexamples.

Every check returns a :class:`CheckReport`.  Symbolic checks compare exact
Laurent polynomials / rational functions; the two limit checks that are
numeric say so in their ``notes``.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Callable, Iterable, Sequence

from . import quantumgroup as qg
from .duality import (
    LEGACY,
    blockwise_proportional,
    duality_a,
    duality_b_asep,
    duality_b_tazrp,
    duality_matrix,
    log_duality_b_asep,
    normalized_factorial,
    normalized_measure,
    reversible_measure,
)
from .operators import SparseOperator, is_zero, scalar_from_text, scalar_to_text
from .process import (
    asep_transitions,
    build_generator,
    inductive_rate,
    ssep_transitions,
    tazrp_transitions,
)
from .qarith import (
    ONE,
    ZERO,
    LaurentPoly,
    RationalFunction,
    eval_at,
    q2_factorial,
    q_int,
    q_int2,
    qpow,
    rf_sum,
)
from .sim import sampler_equivalence, semigroup, semigroup_duality_gap
from .statespace import (
    Basis,
    Config,
    class_reverse,
    count_states,
    project,
    projection_sigma,
    sector_of,
    space_reverse,
)

__all__ = [
    "CheckReport",
    "check_intertwine",
    "check_self_duality",
    "check_reversed_duality",
    "check_tazrp_duality",
    "check_cp_symmetry",
    "check_detailed_balance",
    "check_hamiltonian_pipeline",
    "check_stationary_expectation",
    "check_limits",
    "check_duality_limit",
    "check_projection",
    "check_ssep_projection",
    "check_inductive_rates",
    "check_legacy_reductions",
    "check_representation",
    "check_coproduct",
    "check_qarith_identities",
    "check_mutation_sensitivity",
    "check_sampler_equivalence",
    "check_semigroup_duality",
    "mutate_entry",
    "run_fixtures",
    "load_golden",
    "REGISTRY",
    "CheckSpec",
    "default_jobs",
    "run_job",
    "run_checks",
    "state_grid",
]


@dataclass
class CheckReport:
    name: str
    params: dict
    passed: bool
    counterexample: dict | None = None
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=str)


def _cfg(c) -> list:
    return [list(s) for s in c.sites] if isinstance(c, Config) else c


def _txt(v) -> str:
    return scalar_to_text(v) if isinstance(v, (LaurentPoly, RationalFunction)) else str(v)


def _entry_cx(row, col, lhs, rhs, **extra) -> dict:
    out = {"row": _cfg(row), "col": _cfg(col), "lhs": _txt(lhs), "rhs": _txt(rhs)}
    out.update(extra)
    return out


def _report(name: str, params: dict, start: float, failure: dict | None = None,
            notes: Iterable = ()) -> CheckReport:
    return CheckReport(name, params, failure is None, failure, time.perf_counter() - start, list(notes))


def _diff_cx(A: SparseOperator, B: SparseOperator, what: str) -> dict | None:
    d = A.first_difference(B)
    if d is None:
        return None
    r, c, va, vb = d
    return _entry_cx(A.row_basis.configs[r], A.col_basis.configs[c], va, vb, identity=what)


# duality ------------------------------------------------------------------


def check_intertwine(A: SparseOperator, D: SparseOperator, B: SparseOperator,
                     name: str = "intertwine", params: dict | None = None) -> CheckReport:
    """``A D = D B^T`` entrywise."""
    start = time.perf_counter()
    if A.shape[1] != D.shape[0] or D.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: A{A.shape} D{D.shape} B{B.shape}")
    return _report(name, params or {}, start, _diff_cx(A @ D, D @ B.T, "A D = D B^T"))


def _sector_scaled(D: SparseOperator, scalars: Callable[[tuple, tuple], object]) -> SparseOperator:
    rb, cb = D.row_basis, D.col_basis
    rows = []
    for r, row in enumerate(D.rows):
        sr = sector_of(rb.configs[r])
        rows.append({c: v * scalars(sr, sector_of(cb.configs[c])) for c, v in row.items()})
    return SparseOperator(rb, cb, rows)


def check_self_duality(n: int, j2: int, L: int, generator: SparseOperator | None = None,
                       sector_scalars: Callable | None = None) -> CheckReport:
    """The process is self-dual with respect to :func:`duality_a`."""
    gen = build_generator("asep", n, j2, L) if generator is None else generator
    D = duality_matrix(duality_a, gen.row_basis)
    if sector_scalars is not None:
        D = _sector_scaled(D, sector_scalars)
    return check_intertwine(gen, D, gen, "self-duality", {"n": n, "j2": j2, "L": L})


def check_reversed_duality(n: int, j2: int, L: int) -> CheckReport:
    """Space-reversed process dual to the forward one via :func:`duality_b_asep`."""
    gen = build_generator("asep", n, j2, L)
    D = duality_matrix(duality_b_asep, gen.row_basis)
    return check_intertwine(gen.relabel(space_reverse), D, gen, "reversed-duality",
                            {"n": n, "j2": j2, "L": L})


def _sectors(n: int, max_particles: int):
    for m in product(range(max_particles + 1), repeat=n - 1):
        if sum(m) <= max_particles:
            yield m


def check_tazrp_duality(n: int, L: int, max_particles: int = 3) -> CheckReport:
    """Space-reversed q-TAZRP dual to q-TAZRP, every sector pair up to ``max_particles``."""
    start = time.perf_counter()
    params = {"n": n, "L": L, "max_particles": max_particles}
    gens = {m: build_generator("tazrp", n, None, L, m) for m in _sectors(n, max_particles)}
    pairs = 0
    for me, ge in gens.items():
        rev = ge.relabel(space_reverse)
        for mx, gx in gens.items():
            D = duality_matrix(duality_b_tazrp, ge.row_basis, gx.row_basis)
            rep = check_intertwine(rev, D, gx)
            pairs += 1
            if not rep.passed:
                return _report("tazrp-duality", params, start, rep.counterexample)
    return _report("tazrp-duality", params, start, notes=[f"{pairs} sector pairs"])


def check_cp_symmetry(n: int, j2: int, L: int) -> CheckReport:
    """Class reversal conjugates the generator into its space reversal, and the
    reversed duality is the class-reversed self-duality up to sector constants."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L}
    gen = build_generator("asep", n, j2, L)
    cx = _diff_cx(gen.relabel(class_reverse), gen.relabel(space_reverse), "V L V = space-reversed L")
    if cx:
        return _report("cp-symmetry", params, start, cx)
    b = gen.row_basis
    Db = duality_matrix(duality_b_asep, b)
    Dt = duality_matrix(lambda e, x: duality_a(class_reverse(e), x), b)
    ok, info = blockwise_proportional(Db, Dt)
    if not ok:
        r, c, a, bb, why = info
        return _report("cp-symmetry", params, start, _entry_cx(r, c, a, bb, identity=why))
    return _report("cp-symmetry", params, start)


# reversible measure ------------------------------------------------------------


def check_detailed_balance(n: int, j2: int, L: int, model: str = "asep",
                           sector: Sequence[int] | None = None) -> CheckReport:
    """``P(a) L(a, b) = P(b) L(b, a)`` for every pair; SSEP is checked at ``q = 1``."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L, "model": model, "sector": list(sector) if sector else None}
    gen = build_generator(model, n, j2, L, sector)
    if model == "ssep":
        P = [eval_at(reversible_measure(c), 1) for c in gen.row_basis]
    elif model == "asep":
        P = [reversible_measure(c) for c in gen.row_basis]
    else:
        raise ValueError("detailed balance needs asep or ssep")
    for a, row in enumerate(gen.rows):
        for b, rate in row.items():
            if b == a:
                continue
            back = gen[b, a]
            lhs, rhs = P[a] * rate, P[b] * back
            if not is_zero(lhs - rhs):
                return _report("detailed-balance", params, start,
                               _entry_cx(gen.row_basis.configs[a], gen.row_basis.configs[b], lhs, rhs))
    return _report("detailed-balance", params, start)


def _group_by_sector(basis: Basis) -> dict:
    out: dict = {}
    for c in basis:
        out.setdefault(sector_of(c), []).append(c)
    return out


def stationary_expectations(fn: Callable, basis_x: Basis, basis_y: Basis) -> dict:
    """For every sector pair, the two one-sided stationary averages of ``fn``.

    Returns ``{(mx, my): (lhs_by_y, rhs_by_x)}`` where ``lhs_by_y[y]`` is the
    average of ``fn(X, y)`` with ``X`` reversible in sector ``mx`` and
    ``rhs_by_x[x]`` averages ``fn(x, Y)``.
    """
    gx, gy = _group_by_sector(basis_x), _group_by_sector(basis_y)
    px = {m: normalized_measure(Basis(cs)) for m, cs in gx.items()}
    py = {m: normalized_measure(Basis(cs)) for m, cs in gy.items()}
    out = {}
    for mx, xs in gx.items():
        for my, ys in gy.items():
            lhs = {y: rf_sum(p * fn(x, y) for p, x in zip(px[mx], xs)) for y in ys}
            rhs = {x: rf_sum(p * fn(x, y) for p, y in zip(py[my], ys)) for x in xs}
            out[(mx, my)] = (lhs, rhs)
    return out


_DUALITIES = {"a": duality_a, **LEGACY}


def check_stationary_expectation(n: int, j2: int, L: int, duality: str = "a") -> CheckReport:
    """Stationary averages of a self-duality function are constant on sector pairs."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L, "duality": duality}
    fn = _DUALITIES[duality]
    basis = Basis.full(n, j2, L)
    for blk, (lhs, rhs) in stationary_expectations(fn, basis, basis).items():
        ref = next(iter(lhs.values()))
        for y, v in lhs.items():
            if not is_zero(v - ref):
                return _report("stationary-expectation", params, start,
                               _entry_cx(blk[0], y, v, ref, identity="E[D(X, y)] varies with y"))
        for x, v in rhs.items():
            if not is_zero(v - ref):
                return _report("stationary-expectation", params, start,
                               _entry_cx(x, blk[1], v, ref, identity="E[D(x, Y)] differs from E[D(X, y)]"))
    return _report("stationary-expectation", params, start)


# quantum-group pipeline -----------------------------------------------------------


@lru_cache(maxsize=8)
def pipeline_objects(n: int, j2: int, L: int) -> dict:
    """Hamiltonian, ground state and operator-derived duality for one chain."""
    h = qg.two_site_hamiltonian(n, j2)
    H = qg.hamiltonian_chain(n, j2, L, h)
    S, G, B2 = qg.build_S_G_B(n, j2, L)
    basis = H.row_basis
    D = SparseOperator(basis, basis, [
        {b: qg._div(v * B2[b], G[a] * G[b]) for b, v in row.items()} for a, row in enumerate(S.rows)])
    return {"h": h, "H": H, "S": S, "G": G, "B2": B2, "D": D}


def check_hamiltonian_pipeline(n: int, j2: int, L: int,
                               generator: SparseOperator | None = None) -> CheckReport:
    """Central element -> Hamiltonian -> ground state -> generator and duality."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L}
    objs = pipeline_objects(n, j2, L)
    notes = []
    # two-site central element against the closed-form Hamiltonian
    cx = _diff_cx(objs["h"].off_diagonal(), qg.hamiltonian_closed(n, j2), "Delta(C) off-diagonal = h")
    if cx:
        return _report("hamiltonian-pipeline", params, start, cx)
    notes.append(f"two-site vacuum eigenvalue of Delta(C): {qg.vacuum_eigenvalue(n, j2)}")
    H, G, B2 = objs["H"], objs["G"], objs["B2"]
    # B^{-1} H B symmetric, checked as H(a,b) B^2(b) = H(b,a) B^2(a)
    for a, row in enumerate(H.rows):
        for b, v in row.items():
            lhs, rhs = v * B2[b], H[b, a] * B2[a]
            if not is_zero(lhs - rhs):
                return _report("hamiltonian-pipeline", params, start,
                               _entry_cx(H.row_basis.configs[a], H.row_basis.configs[b], lhs, rhs,
                                         identity="B^-1 H B symmetric"))
    # g is an eigenvector of H
    lam = qg._div(qg.vacuum_eigenvalue(n, j2), (qpow(1) - qpow(-1)) ** 2) * (L - 1)
    for k, (hg, g) in enumerate(zip(H.apply(G), G)):
        if not is_zero(hg - lam * g):
            return _report("hamiltonian-pipeline", params, start,
                           _entry_cx(H.row_basis.configs[k], "g", hg, lam * g, identity="H g = lambda g"))
    direct = build_generator("asep", n, j2, L) if generator is None else generator
    cx = _diff_cx(qg.ground_state_transform(H, G), direct, "G^-1 H G = generator")
    if cx:
        return _report("hamiltonian-pipeline", params, start, cx)
    Dref = duality_matrix(duality_a, direct.row_basis)
    ok, info = blockwise_proportional(objs["D"], Dref)
    if not ok:
        r, c, a, b, why = info
        return _report("hamiltonian-pipeline", params, start,
                       _entry_cx(r, c, a, b, identity="G^-1 S G^-1 B^2 ~ duality_a: " + why))
    rep = check_intertwine(direct, objs["D"], direct)
    if not rep.passed:
        return _report("hamiltonian-pipeline", params, start, rep.counterexample)
    return _report("hamiltonian-pipeline", params, start, notes=notes)


# rates: limits and reductions --------------------------------------------------------


def _rate_table(trans: Iterable) -> dict:
    out: dict = {}
    for t in trans:
        out[t.target] = out[t.target] + t.rate if t.target in out else t.rate
    return out


def _compare_tables(c: Config, got: dict, want: dict, scalar_eq: Callable) -> dict | None:
    for tgt in set(got) | set(want):
        a, b = got.get(tgt, ZERO), want.get(tgt, ZERO)
        if not scalar_eq(a, b):
            return _entry_cx(c, tgt, a, b)
    return None


def _limit_ssep(n: int, j2: int, L: int) -> dict | None:
    for c in Basis.full(n, j2, L):
        got = {t: r.at_q1() for t, r in _rate_table(asep_transitions(c)).items()}
        want = {t: r.at_q1() for t, r in _rate_table(ssep_transitions(c)).items()}
        cx = _compare_tables(c, got, want, lambda a, b: a == b)
        if cx:
            return cx
    return None


def _limit_n2(j2: int, L: int) -> dict | None:
    """Rescaled rates against the single-species ASEP(q, j) formulas."""
    for c in Basis.full(2, j2, L):
        got = {t.target: t.rate * qpow(2 - 2 * j2) for t in asep_transitions(c)}
        want = {}
        for x in range(1, L):
            mu, lam = c.sites[x - 1], c.sites[x]
            if mu[0] and lam[1]:
                tgt = Config(c.sites[:x - 1] + ((mu[0] - 1, mu[1] + 1), (lam[0] + 1, lam[1] - 1))
                             + c.sites[x + 1:], 2, j2)
                want[tgt] = qpow(1 - 2 * j2) * q_int2(mu[0]) * q_int2(lam[1])
            if mu[1] and lam[0]:
                tgt = Config(c.sites[:x - 1] + ((mu[0] + 1, mu[1] - 1), (lam[0] - 1, lam[1] + 1))
                             + c.sites[x + 1:], 2, j2)
                want[tgt] = qpow(2 * mu[0] + 2 * lam[1] - 2 * j2 + 3) * q_int2(mu[1]) * q_int2(lam[0])
        cx = _compare_tables(c, got, want, lambda a, b: is_zero(a - b))
        if cx:
            return cx
    return None


def _limit_jhalf(n: int, L: int) -> dict | None:
    """Single occupancy: heavier class passes lighter at rate q^-1 (right) or q (left)."""
    for c in Basis.full(n, 1, L):
        cls = [s.index(1) + 1 for s in c.sites]
        want = {}
        for x in range(1, L):
            a, b = cls[x - 1], cls[x]
            if a == b:
                continue
            new = list(c.sites)
            new[x - 1], new[x] = c.sites[x], c.sites[x - 1]
            want[Config(tuple(new), n, 1)] = qpow(-1) if a < b else qpow(1)
        cx = _compare_tables(c, _rate_table(asep_transitions(c)), want, lambda a, b: is_zero(a - b))
        if cx:
            return cx
    return None


def _embed(c: Config, j2: int) -> Config:
    return Config(tuple(tuple(s) + (j2 - sum(s),) for s in c.sites), c.n, j2)


def _unembed(c: Config) -> Config:
    return Config(tuple(tuple(s[:-1]) for s in c.sites), c.n, None)


def tazrp_configs(n: int, L: int, particles: int) -> list:
    out = []
    for m in _sectors(n, particles):
        if sum(m) == particles:
            out.extend(Basis.tazrp_sector(n, L, m))
    return out


def tazrp_rate_deviation(n: int, L: int, particles: int, j2: int, q0: float) -> float:
    """Largest gap between normalized ASEP rates at ``j2`` and q-TAZRP rates.

    ASEP rates are multiplied by ``q0 (1 - q0^2)``, the time change under
    which right jumps into the hole reservoir converge.
    """
    norm = q0 * (1 - q0 * q0)
    worst = 0.0
    for c in tazrp_configs(n, L, particles):
        got: dict = {}
        for t in asep_transitions(_embed(c, j2)):
            k = _unembed(t.target)
            got[k] = got.get(k, 0.0) + norm * float(eval_at(t.rate, q0))
        want: dict = {}
        for t in tazrp_transitions(c):
            want[t.target] = want.get(t.target, 0.0) + float(eval_at(t.rate, q0))
        for k in set(got) | set(want):
            worst = max(worst, abs(got.get(k, 0.0) - want.get(k, 0.0)))
    return worst


def _limit_tazrp(n: int, L: int, particles: int, q0: float, j2s: Sequence[int]) -> tuple:
    devs = [tazrp_rate_deviation(n, L, particles, j2, q0) for j2 in j2s]
    bound = min(1e-3, 10 * q0 ** (2 * (max(j2s) - particles)))
    notes = [f"deviations {dict(zip(j2s, devs))}", f"bound {bound:.3g}"]
    monotone = all(b < a for a, b in zip(devs, devs[1:]))
    if not monotone or devs[-1] >= bound:
        return _entry_cx("j2", list(j2s), devs, bound, identity="monotone and below bound"), notes
    return None, notes


def check_limits(kind: str, n: int = 3, j2: int = 2, L: int = 2, q0: float = 0.5,
                 particles: int = 2, j2s: Sequence[int] = (6, 10, 14)) -> CheckReport:
    """Rate reductions: ``ssep``, ``n2_rescale``, ``jhalf`` (exact) and ``tazrp`` (numeric)."""
    start = time.perf_counter()
    name = f"limit-{kind}"
    notes: list = []
    if kind == "ssep":
        params = {"n": n, "j2": j2, "L": L}
        cx = _limit_ssep(n, j2, L)
    elif kind == "n2_rescale":
        params = {"j2": j2, "L": L}
        cx = _limit_n2(j2, L)
    elif kind == "jhalf":
        params = {"n": n, "L": L}
        cx = _limit_jhalf(n, L)
    elif kind == "tazrp":
        params = {"n": n, "L": L, "particles": particles, "q0": q0, "j2s": list(j2s)}
        cx, notes = _limit_tazrp(n, L, particles, q0, j2s)
        notes.append("numeric")
    else:
        raise ValueError(f"unknown limit {kind!r}")
    return _report(name, params, start, cx, notes)


def check_duality_limit(n: int = 3, L: int = 3, particles: int = 2, q0: float = 0.5,
                        j2s: Sequence[int] = (6, 10, 14), tol: float = 1e-5) -> CheckReport:
    """Reversed ASEP duality tends to the q-TAZRP one up to sector-pair constants.

    For each sector pair the ratio of the two functions must flatten out:
    its relative spread decreases along ``j2s`` and ends below ``tol``.
    """
    start = time.perf_counter()
    params = {"n": n, "L": L, "particles": particles, "q0": q0, "j2s": list(j2s), "tol": tol}
    groups: dict = {}
    for c in (c for p in range(particles + 1) for c in tazrp_configs(n, L, p)):
        groups.setdefault(sector_of(c), []).append(c)
    spreads = []
    for j2 in j2s:
        worst = 0.0
        for es in groups.values():
            for xs in groups.values():
                logs = [log_duality_b_asep(_embed(e, j2), _embed(x, j2), q0)
                        - math.log(float(eval_at(duality_b_tazrp(e, x), q0))) for e in es for x in xs]
                worst = max(worst, math.expm1(max(logs) - min(logs)))
        spreads.append(worst)
    fact = [normalized_factorial(m, q0) for m in (10, 20, 40)]
    notes = [f"spreads {dict(zip(j2s, spreads))}", f"normalized [m]! at m=10,20,40: {fact}", "numeric"]
    monotone = all(b < a for a, b in zip(spreads, spreads[1:]))
    cx = None
    if not monotone or spreads[-1] >= tol:
        cx = _entry_cx("j2", list(j2s), spreads, tol, identity="ratio spread shrinks below tol")
    elif abs(fact[-1] - 1) > 1e-9:
        cx = _entry_cx("m", 40, fact[-1], 1, identity="normalized factorial -> 1")
    return _report("duality-limit", params, start, cx, notes)


# projections ---------------------------------------------------------------------


def projection_matrix(basis: Basis, target: Basis, sigma) -> SparseOperator:
    m = target.configs[0].n
    rows = [{target.rank(project(c, sigma, m)): ONE} for c in basis]
    return SparseOperator(basis, target, rows)


def _projection_report(name, params, start, big: SparseOperator, small: SparseOperator, sigma):
    P = projection_matrix(big.row_basis, small.row_basis, sigma)
    cx = _diff_cx(big @ P, P @ small, "L_n P = P L_m")
    return _report(name, params, start, cx)


def check_projection(n: int, j2: int | None, L: int, kind: str = "first", model: str = "asep",
                     max_particles: int = 3) -> CheckReport:
    """Merging classes (``first``: ``n-1`` with holes; ``tilde``: ``n-2`` with ``n-1``) is Markov."""
    start = time.perf_counter()
    sigma = projection_sigma(kind, n, n - 2)
    params = {"n": n, "j2": j2, "L": L, "kind": kind, "model": model}
    if model in ("asep", "ssep"):
        big = build_generator(model, n, j2, L)
        small = build_generator(model, n - 1, j2, L)
        return _projection_report("projection", params, start, big, small, sigma)
    if model != "tazrp":
        raise ValueError(f"unknown model {model!r}")
    params["max_particles"] = max_particles
    for m in _sectors(n, max_particles):
        big = build_generator("tazrp", n, None, L, m)
        pm = sector_of(project(big.row_basis.configs[0], sigma, n - 1))
        small = build_generator("tazrp", n - 1, None, L, pm)
        rep = _projection_report("projection", params, start, big, small, sigma)
        if not rep.passed:
            return rep
    return _report("projection", params, start)


def surjections(n: int, m: int):
    for images in product(range(1, m + 1), repeat=n):
        if set(images) == set(range(1, m + 1)):
            yield images


def check_ssep_projection(n: int, j2: int, L: int) -> CheckReport:
    """Every class map, permutations included, projects SSEP onto SSEP."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L}
    big = build_generator("ssep", n, j2, L)
    count = 0
    for m in range(2, n + 1):
        small = build_generator("ssep", m, j2, L)
        for sigma in surjections(n, m):
            rep = _projection_report("projection-ssep", params, start, big, small, sigma)
            count += 1
            if not rep.passed:
                rep.counterexample["sigma"] = list(sigma)
                return rep
    return _report("projection-ssep", params, start, notes=[f"{count} class maps"])


def check_inductive_rates(n: int, j2: int, L: int) -> CheckReport:
    """Clock-and-cascade rates equal the generator rates move by move."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L}
    for c in Basis.full(n, j2, L):
        for t in asep_transitions(c):
            ind = inductive_rate(c, t.x, t.direction, t.k, t.l)
            if not is_zero(ind - t.rate):
                return _report("inductive-rates", params, start,
                               _entry_cx(c, t.target, ind, t.rate, move=[t.x, t.direction, t.k, t.l]))
    return _report("inductive-rates", params, start)


def check_legacy_reductions(n: int, j2: int, L: int) -> CheckReport:
    """``duality_a`` against the earlier single- and two-species duality functions."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L}
    basis = Basis.full(n, j2, L)
    Da = duality_matrix(duality_a, basis)
    names = []
    if j2 == 1 and n == 2:
        names.append("schutz")
    if j2 == 1 and n == 3:
        names.append("twospecies")
    if n == 2:
        names += ["cgrs_D", "cgrs_Dprime"]
    for name in names:
        ok, info = blockwise_proportional(Da, duality_matrix(LEGACY[name], basis))
        if not ok:
            r, c, a, b, why = info
            return _report("legacy-reductions", params, start, _entry_cx(r, c, a, b, identity=f"{name}: {why}"))
    return _report("legacy-reductions", params, start, notes=[f"compared with {names}" if names else "vacuous"])


# representation theory ------------------------------------------------------------


def _column(M: SparseOperator, c: int) -> dict:
    return {r: row[c] for r, row in enumerate(M.rows) if c in row}


def check_representation(n: int, j2: int) -> CheckReport:
    """Algebra relations and the explicit action formulas on one site."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2}
    for label, ok in qg.check_relations(n, j2):
        if not ok:
            return _report("representation", params, start, {"relation": label})
    basis = qg.site_basis(n, j2)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                cx = _diff_cx(qg.e_matrix(i, j, n, j2), qg.e_matrix_inductive(i, j, n, j2),
                              f"E{i}{j} closed = inductive")
                if cx:
                    return _report("representation", params, start, cx)
    for i in range(1, n):
        E = qg.e_matrix(i, i + 1, n, j2)
        power = SparseOperator.identity(basis)
        for m in range(1, j2 + 1):
            power = power @ E
            divided = power.map(lambda v: qg._div(v, q2_factorial(m)))
            for c, cfg in enumerate(basis):
                mu = cfg.sites[0]
                coeff, tgt = qg.divided_power_formula(i, m, mu)
                want = {} if tgt is None else {basis.rank(Config((tgt,), n, j2)): coeff}
                got = _column(divided, c)
                if set(got) != set(want) or any(not is_zero(got[k] - want[k]) for k in got):
                    return _report("representation", params, start,
                                   {"relation": f"divided power E{i}{i + 1}^{m}", "mu": list(mu),
                                    "got": {str(basis.configs[k]): _txt(v) for k, v in got.items()},
                                    "want": {str(basis.configs[k]): _txt(v) for k, v in want.items()}})
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ops = qg.twisted_action_operators(i, j, n)
            mats = [qg.word_matrix(w, n, j2) for w in ops]
            for c, cfg in enumerate(basis):
                mu = cfg.sites[0]
                for (label, coeff, tgt), M in zip(qg.twisted_action_formulas(i, j, mu), mats):
                    want = {} if tgt is None or is_zero(coeff) else {basis.rank(Config((tgt,), n, j2)): coeff}
                    got = _column(M, c)
                    if set(got) != set(want) or any(not is_zero(got[k] - want[k]) for k in got):
                        return _report("representation", params, start,
                                       {"relation": f"{label} (i={i}, j={j})", "mu": list(mu),
                                        "got": {str(basis.configs[k]): _txt(v) for k, v in got.items()},
                                        "want": {str(basis.configs[k]): _txt(v) for k, v in want.items()}})
    return _report("representation", params, start)


def check_coproduct(n: int, j2: int, L: int = 3) -> CheckReport:
    """Coassociativity, the explicit iterated coproducts, composite coproducts and centrality."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L}
    gens = [("E", i) for i in range(1, n)] + [("F", i) for i in range(1, n)] + [("K", i) for i in range(1, n + 1)]
    for gen in gens:
        elem = qg._generator_element(gen, n)
        for m in range(2, L + 1):
            right = qg.evaluate(qg.coproduct_iterated(elem, n, m), n, j2)
            left = qg.evaluate(qg.coproduct_iterated_left(elem, n, m), n, j2)
            cx = _diff_cx(right, left, f"coassociativity {gen} on {m} sites")
            if cx:
                return _report("coproduct", params, start, cx)
            cx = _diff_cx(qg.coproduct_chain(gen, n, j2, m), right, f"explicit iterated coproduct {gen}")
            if cx:
                return _report("coproduct", params, start, cx)
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            closed = qg.evaluate(qg.coproduct_composite(i, j, n), n, j2)
            built = qg.evaluate(qg.coproduct_composite_from_generators(i, j, n), n, j2)
            cx = _diff_cx(closed, built, f"composite coproduct E{i}{j}")
            if cx:
                return _report("coproduct", params, start, cx)
    C = qg.central_two_site(n, j2)
    for gen in gens:
        X = qg.coproduct_chain(gen, n, j2, 2)
        cx = _diff_cx(C @ X, X @ C, f"Delta(C) commutes with Delta{gen}")
        if cx:
            return _report("coproduct", params, start, cx)
    return _report("coproduct", params, start)


def check_qarith_identities(max_n: int = 12) -> CheckReport:
    start = time.perf_counter()
    params = {"max_n": max_n}
    qs = qpow(1) + qpow(-1)

    def fail(label, lhs, rhs):
        return _report("qarith", params, start, {"identity": label, "lhs": _txt(lhs), "rhs": _txt(rhs)})

    def sym_int(k):
        return q_int(k) if k >= 0 else -q_int(-k)

    for a in range(max_n + 1):
        for b in range(max_n + 1):
            lhs = q_int(a + 1) * q_int(b) - q_int(a) * q_int(b + 1)
            if lhs != sym_int(b - a):
                return fail(f"weyl({a},{b})", lhs, sym_int(b - a))
    for a in range(1, max_n + 1):
        lhs = q_int(a + 1) - qs * q_int(a) + q_int(a - 1)
        if not lhs.is_zero():
            return fail(f"serre({a})", lhs, ZERO)
        lhs = q_int(a + 1) - qpow(-1) * q_int(a)
        if lhs != qpow(a):
            return fail(f"lusztig({a})", lhs, qpow(a))
        if qpow(a - 1) * q_int(a) != q_int2(a):
            return fail(f"bridge({a})", qpow(a - 1) * q_int(a), q_int2(a))
    for k in range(11):
        for m in range(11):
            lhs = q_int2(k + m)
            rhs = qpow(2 * m) * q_int2(k) + q_int2(m)
            if lhs != rhs:
                return fail(f"split({k},{m})", lhs, rhs)
    for parts in _compositions_upto(8, 5):
        lhs, rhs = telescope_sides(parts)
        if lhs != rhs:
            return fail(f"telescope{parts}", lhs, rhs)
        for j in range(3):
            lhs, rhs = shifted_telescope_sides(parts, j)
            if lhs != rhs:
                return fail(f"shifted-telescope{parts}, j={j}", lhs, rhs)
    return _report("qarith", params, start)


def _compositions_upto(total: int, max_parts: int):
    for k in range(1, max_parts + 1):
        for parts in product(range(total + 1), repeat=k):
            if sum(parts) <= total:
                yield parts


def telescope_sides(parts: Sequence[int]) -> tuple:
    """``{m_1 + ... + m_k}`` and its weighted split into the blocks ``m_r``."""
    k = len(parts)
    rhs = ZERO
    for r in range(k):
        rhs = rhs + qpow(2 * sum(parts[r + 1:])) * q_int2(parts[r])
    return q_int2(sum(parts)), rhs


def shifted_telescope_sides(parts: Sequence[int], j: int = 0) -> tuple:
    """Both sides of the shifted telescoping sum, multiplied through by ``1 - q^2``.

    ``parts`` are ``m_{j+1}, ..., m_n``; the sum runs over ``s = j+1..n`` of
    ``q^{2s-1} q^{2(m_{j+1} + ... + m_{s-1})} {m_s + 1}``.
    """
    n = j + len(parts)
    lhs = ZERO
    for r, s in enumerate(range(j + 1, n + 1)):
        lhs = lhs + qpow(2 * s - 1 + 2 * sum(parts[:r])) * q_int2(parts[r] + 1)
    lhs = lhs * (ONE - qpow(2))
    rhs = qpow(2 * j + 1) - qpow(2 * n + 1 + 2 * sum(parts))
    return lhs, rhs


# mutation sensitivity ----------------------------------------------------------------


def mutate_entry(gen: SparseOperator, r: int, c: int, factor=None) -> SparseOperator:
    """Copy of ``gen`` with one off-diagonal rate multiplied by ``factor`` (default ``q``).

    The diagonal is re-balanced so the result is still a Markov generator.
    """
    if r == c or c not in gen.rows[r]:
        raise ValueError("need an existing off-diagonal entry")
    factor = qpow(1) if factor is None else factor
    rows = [dict(row) for row in gen.rows]
    rows[r][c] = rows[r][c] * factor
    return SparseOperator(gen.row_basis, gen.col_basis, rows).with_zero_row_sums()


def check_mutation_sensitivity(n: int, j2: int, L: int, limit: int | None = None,
                               use_pipeline: bool = False) -> CheckReport:
    """Every single-entry perturbation must break self-duality (or the pipeline)."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L, "limit": limit, "use_pipeline": use_pipeline}
    gen = build_generator("asep", n, j2, L)
    entries = [(r, c) for r, row in enumerate(gen.rows) for c in row if c != r]
    if limit is not None:
        entries = entries[:limit]
    for r, c in entries:
        bad = mutate_entry(gen, r, c)
        reports = [check_self_duality(n, j2, L, generator=bad)]
        if use_pipeline:
            reports.append(check_hamiltonian_pipeline(n, j2, L, generator=bad))
        if all(rep.passed for rep in reports) or any(
                not rep.passed and not rep.counterexample for rep in reports):
            return _report("mutation-sensitivity", params, start,
                           {"row": _cfg(gen.row_basis.configs[r]), "col": _cfg(gen.col_basis.configs[c]),
                            "identity": "mutation went undetected"})
    return _report("mutation-sensitivity", params, start, notes=[f"{len(entries)} mutations detected"])


# simulation consistency ------------------------------------------------------------


def check_sampler_equivalence(n: int, j2: int, L: int = 2) -> CheckReport:
    """Clock-and-cascade move law equals the generator move law, by exact enumeration."""
    start = time.perf_counter()
    ok, info = sampler_equivalence(n, j2, L)
    params = {"n": n, "j2": j2, "L": L}
    if ok:
        return _report("sampler-equivalence", params, start, notes=[f"{info} configurations"])
    return _report("sampler-equivalence", params, start, info)


def check_semigroup_duality(n: int, j2: int, L: int, q0s: Sequence[float] = (0.3, 0.5, 0.8),
                            times: Sequence[float] = (0.5, 1.0, 2.0), tol: float = 1e-8) -> CheckReport:
    """``exp(tL) D = D exp(tL)^T`` numerically, plus stochasticity of ``exp(tL)``."""
    start = time.perf_counter()
    params = {"n": n, "j2": j2, "L": L, "q0s": list(q0s), "times": list(times), "tol": tol}
    gen = build_generator("asep", n, j2, L)
    worst = 0.0
    for q0 in q0s:
        for t in times:
            gap = semigroup_duality_gap(n, j2, L, q0, t)
            rows = float(abs(semigroup(gen, t, q0).sum(axis=1) - 1).max())
            worst = max(worst, gap)
            if gap >= tol or rows > 1e-10:
                return _report("semigroup-duality", params, start,
                               {"q0": q0, "t": t, "max_gap": gap, "row_sum_error": rows, "identity": "semigroup duality"})
    return _report("semigroup-duality", params, start, notes=[f"largest gap {worst:.3g}"])


# golden fixtures ---------------------------------------------------------------------


def load_golden() -> dict:
    text = resources.files("multiasep").joinpath("data/golden.json").read_text()
    return json.loads(text)


def _parse_cfg(sites, bounded: bool = True) -> Config:
    return Config.from_sites(sites, bounded=bounded)


def _global_scalar(A: list, B: list):
    """``s`` with ``A = s B`` entrywise, or ``None``."""
    s = None
    for a, b in zip(A, B):
        if is_zero(a) != is_zero(b):
            return None
        if is_zero(a):
            continue
        r = RationalFunction(a) / b if not isinstance(a, RationalFunction) else a / b
        if s is None:
            s = r
        elif not is_zero(r - s):
            return None
    return s


def _fixture_generator(fx: dict) -> tuple:
    gen = build_generator("asep", fx["n"], fx["j2"], fx["L"], fx["sector"])
    order = [gen.row_basis.rank(_parse_cfg(s)) for s in fx["states"]]
    ours = [gen[r, c] for r in order for c in order]
    theirs = [scalar_from_text(t) for row in fx["matrix"] for t in row]
    s = _global_scalar(theirs, ours)
    if s is None:
        return False, {"identity": "matrix not a scalar multiple"}, []
    return True, None, [f"reference matrix = ({s.simplify()}) x generator"]


def _fixture_measure(fx: dict) -> tuple:
    basis = Basis([_parse_cfg(s) for s in fx["states"]])
    P = normalized_measure(basis)
    ref = [scalar_from_text(t) for t in fx["weights"]]
    Z = rf_sum(ref)
    for c, p, w in zip(basis, P, ref):
        if not is_zero(p - w / Z):
            return False, _entry_cx(c, "P", p, w / Z), []
    return True, None, []


def _fixture_values(fx: dict) -> tuple:
    fn = _DUALITIES[fx["duality"]]
    for e, x, t in fx["values"]:
        got, want = fn(_parse_cfg(e), _parse_cfg(x)), scalar_from_text(t)
        if not is_zero(got - want):
            return False, _entry_cx(e, x, got, want), []
    return True, None, []


def _fixture_expectation(fx: dict) -> tuple:
    fn = _DUALITIES[fx["duality"]]
    ys = Basis.sector(fx["n"], fx["j2"], fx["L"], fx["y_sector"])
    P = normalized_measure(ys)
    want = scalar_from_text(fx["value"])
    for x in fx["x"]:
        got = rf_sum(p * fn(_parse_cfg(x), y) for p, y in zip(P, ys))
        if not is_zero(got - want):
            return False, _entry_cx(x, fx["y_sector"], got, want), []
    return True, None, []


def _fixture_rows(fx: dict) -> tuple:
    ys = Basis([_parse_cfg(s) for s in fx["states"]])
    P = normalized_measure(ys, lambda c: reversible_measure(c))
    notes = []
    scalar = None
    sums = []
    for e, row in zip(fx["eta"], fx["rows"]):
        eta = _parse_cfg(e)
        ours = [duality_a(eta, y) for y in ys]
        theirs = [scalar_from_text(t) for t in row]
        s = _global_scalar(theirs, ours)
        if s is None or (scalar is not None and not is_zero(s - scalar)):
            return False, {"identity": "duality row not proportional", "eta": e}, []
        scalar = s
        # reference rows are paired with the unnormalized reference weights
        w = [scalar_from_text(t) for t in fx["weights"]]
        sums.append(rf_sum(a * b for a, b in zip(w, theirs)))
    notes.append(f"reference rows = ({scalar.simplify()}) x computed rows")
    lhs, rhs = scalar_from_text(fx["identity"][0]), scalar_from_text(fx["identity"][1])
    if not is_zero(lhs - rhs) or not is_zero(sums[0] - lhs) or not is_zero(sums[1] - rhs):
        return False, _entry_cx("identity", "", sums[0], sums[1]), notes
    exp = [rf_sum(p * duality_a(_parse_cfg(e), y) for p, y in zip(P, ys)) for e in fx["eta"]]
    if not is_zero(exp[0] - exp[1]):
        return False, _entry_cx(fx["eta"][0], fx["eta"][1], exp[0], exp[1]), notes
    return True, None, notes


def _fixture_tazrp(fx: dict) -> tuple:
    eta, xi = _parse_cfg(fx["eta"], False), _parse_cfg(fx["xi"], False)
    ge = build_generator("tazrp", eta.n, None, eta.L, sector_of(eta))
    gx = build_generator("tazrp", xi.n, None, xi.L, sector_of(xi))
    D = duality_matrix(duality_b_tazrp, ge.row_basis, gx.row_basis)
    lhs = (ge.relabel(space_reverse) @ D)[eta, xi]
    rhs = (D @ gx.T)[eta, xi]
    want_d, want = scalar_from_text(fx["D"]), scalar_from_text(fx["value"])
    if not is_zero(D[eta, xi] - want_d):
        return False, _entry_cx(eta, xi, D[eta, xi], want_d, identity="D"), []
    if not is_zero(lhs - want) or not is_zero(rhs - want):
        return False, _entry_cx(eta, xi, lhs, rhs, identity="L D = D L* = value"), []
    return True, None, [f"D = {D[eta, xi]}"]


def _fixture_schutz(fx: dict) -> tuple:
    for L in fx["L"]:
        full = Config(tuple((1, 0) for _ in range(L)), 2, 1)
        want = qpow(2 * L)
        for x in range(L):
            y = Config(tuple((1, 0) if z == x else (0, 1) for z in range(L)), 2, 1)
            got = LEGACY["schutz"](full, y)
            if not is_zero(got - want):
                return False, _entry_cx(full, y, got, want), []
    return True, None, []


_FIXTURE_KINDS = {
    "generator": _fixture_generator,
    "measure": _fixture_measure,
    "values": _fixture_values,
    "expectation": _fixture_expectation,
    "rows": _fixture_rows,
    "tazrp": _fixture_tazrp,
    "schutz": _fixture_schutz,
}


def run_fixtures(golden: dict | None = None) -> list:
    golden = load_golden() if golden is None else golden
    out = []
    for name in sorted(golden):
        fx = golden[name]
        start = time.perf_counter()
        ok, cx, notes = _FIXTURE_KINDS[fx["kind"]](fx)
        rep = _report(f"fixture:{name}", {}, start, None if ok else (cx or {"identity": name}), notes)
        out.append(rep)
    return out


# registry and runner -----------------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    name: str
    fn: Callable
    description: str
    defaults: tuple  # tuple of param dicts


def _grid(*triples) -> tuple:
    return tuple({"n": n, "j2": j2, "L": L} for n, j2, L in triples)


SELF_DUALITY_GRID = ((2, 1, 3), (2, 1, 4), (2, 2, 2), (2, 2, 3), (3, 1, 2), (3, 1, 3), (3, 2, 2), (4, 1, 2))
PIPELINE_GRID = ((2, 2, 2), (3, 1, 3), (3, 2, 2))

REGISTRY: dict = {s.name: s for s in [
    CheckSpec("self-duality", check_self_duality,
              "L D = D L^T with D the multi-species self-duality function", _grid(*SELF_DUALITY_GRID)),
    CheckSpec("reversed-duality", check_reversed_duality,
              "space-reversed ASEP is dual to ASEP", _grid((3, 2, 2), (2, 2, 3))),
    CheckSpec("tazrp-duality", check_tazrp_duality,
              "space-reversed q-TAZRP is dual to q-TAZRP",
              tuple({"n": n, "L": L, "max_particles": 3} for n in (2, 3) for L in (3, 4))),
    CheckSpec("cp-symmetry", check_cp_symmetry,
              "class reversal = space reversal on the generator; reversed duality from class reversal",
              _grid((2, 2, 3), (3, 1, 3), (3, 2, 2))),
    CheckSpec("detailed-balance", check_detailed_balance,
              "reversible measure satisfies detailed balance (SSEP at q = 1)",
              _grid((2, 1, 3), (2, 2, 3), (3, 1, 3), (3, 2, 2), (4, 1, 2))
              + tuple({"n": 3, "j2": 2, "L": 2, "model": "ssep"} for _ in (0,))),
    CheckSpec("hamiltonian-pipeline", check_hamiltonian_pipeline,
              "central element -> Hamiltonian -> ground state -> generator and duality", _grid(*PIPELINE_GRID)),
    CheckSpec("stationary-expectation", check_stationary_expectation,
              "stationary averages of the duality are constant on sector pairs",
              _grid((2, 2, 2), (3, 2, 2), (3, 1, 3))
              + ({"n": 2, "j2": 2, "L": 2, "duality": "cgrs_Dprime"},
                 {"n": 2, "j2": 1, "L": 3, "duality": "schutz"})),
    CheckSpec("limit-ssep", lambda **p: check_limits("ssep", **p),
              "q = 1 rates are SSEP rates", _grid((3, 2, 2), (2, 2, 3), (3, 1, 3))),
    CheckSpec("limit-n2-rescale", lambda **p: check_limits("n2_rescale", **p),
              "n = 2 rates times q^(2-2j) match ASEP(q, j)",
              tuple({"j2": j2, "L": L} for j2, L in ((1, 3), (2, 2), (2, 3), (3, 2)))),
    CheckSpec("limit-jhalf", lambda **p: check_limits("jhalf", **p),
              "2j = 1 gives multi-species ASEP with rates q^-1, q",
              tuple({"n": n, "L": L} for n, L in ((2, 4), (3, 3), (4, 3)))),
    CheckSpec("limit-tazrp", lambda **p: check_limits("tazrp", **p),
              "rates approach q-TAZRP as 2j grows (numeric)",
              ({"n": 3, "L": 3, "particles": 2, "q0": 0.5}, {"n": 2, "L": 3, "particles": 2, "q0": 0.5})),
    CheckSpec("duality-limit", check_duality_limit,
              "reversed ASEP duality approaches the q-TAZRP duality (numeric)",
              ({"n": 3, "L": 3, "particles": 2, "q0": 0.5}, {"n": 3, "L": 3, "particles": 2, "q0": 0.3})),
    CheckSpec("projection", check_projection,
              "merging classes is a Markov projection",
              tuple({"n": 3, "j2": j2, "L": L, "kind": k, "model": "asep"}
                    for j2 in (1, 2) for L in (2, 3) for k in ("first", "tilde"))
              + tuple({"n": 3, "j2": None, "L": L, "kind": k, "model": "tazrp"}
                      for L in (2, 3) for k in ("first", "tilde"))),
    CheckSpec("projection-ssep", check_ssep_projection,
              "every class map projects SSEP onto SSEP", _grid((3, 1, 3), (3, 2, 2))),
    CheckSpec("inductive-rates", check_inductive_rates,
              "clock-and-cascade rates equal generator rates", _grid((3, 2, 2), (4, 2, 2), (3, 3, 2))),
    CheckSpec("legacy-reductions", check_legacy_reductions,
              "agreement with single- and two-species duality functions",
              _grid((2, 1, 3), (3, 1, 3), (2, 2, 2), (2, 3, 2))),
    CheckSpec("representation", check_representation,
              "algebra relations and action formulas on one site",
              tuple({"n": n, "j2": j2} for n in (2, 3, 4) for j2 in (1, 2, 3))),
    CheckSpec("coproduct", check_coproduct,
              "coassociativity, iterated and composite coproducts, centrality",
              tuple({"n": n, "j2": j2, "L": 3} for n, j2 in ((2, 1), (2, 2), (3, 1)))
              + ({"n": 3, "j2": 2, "L": 2},)),
    CheckSpec("qarith", check_qarith_identities, "q-integer identities", ({"max_n": 12},)),
    CheckSpec("mutation-sensitivity", check_mutation_sensitivity,
              "single-entry rate perturbations break the duality check",
              _grid((2, 1, 3), (3, 1, 2))
              + tuple({"n": n, "j2": j2, "L": L, "use_pipeline": True} for n, j2, L in ((2, 2, 2), (3, 2, 2)))),
    CheckSpec("sampler-equivalence", check_sampler_equivalence,
              "clock-and-cascade move law equals generator move law",
              tuple({"n": n, "j2": j2, "L": 2} for n in (2, 3, 4) for j2 in (1, 2, 3, 4))),
    CheckSpec("semigroup-duality", check_semigroup_duality,
              "exp(tL) D = D exp(tL)^T numerically", _grid(*SELF_DUALITY_GRID)),
]}


def state_grid(max_states: int = 5000, ns=(2, 3, 4), j2s=(1, 2, 3), Ls=range(2, 13)) -> list:
    """Every ``(n, j2, L)`` whose full space has at most ``max_states`` states."""
    return [(n, j2, L) for n in ns for j2 in j2s for L in Ls if count_states(n, j2, L) <= max_states]


def default_jobs(names: Iterable[str] | None = None) -> list:
    names = sorted(REGISTRY) if names is None else list(names)
    return [(name, dict(p)) for name in names for p in REGISTRY[name].defaults]


def run_job(job: tuple) -> CheckReport:
    name, params = job
    if name not in REGISTRY:
        raise KeyError(f"unknown check {name!r}")
    start = time.perf_counter()
    try:
        rep = REGISTRY[name].fn(**params)
    except Exception as exc:  # surfaced as a failing report, never swallowed
        rep = CheckReport(name, params, False, {"error": f"{type(exc).__name__}: {exc}"})
    rep.name = name
    rep.params = dict(params)
    rep.seconds = time.perf_counter() - start
    return rep


def run_checks(jobs: Sequence[tuple], workers: int | None = 1) -> list:
    """Run jobs (concurrently when ``workers > 1``); reports sorted by name then params."""
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_job, jobs))
    else:
        reports = [run_job(j) for j in jobs]
    return sorted(reports, key=lambda r: (r.name, json.dumps(r.params, sort_keys=True, default=str)))
