"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` (lines appear as they finish).
"""
from __future__ import annotations

import json
import sys
import time
from contextlib import redirect_stdout
from io import StringIO

from multiasep import cli
from multiasep import verify as V
from multiasep.duality import normalized_measure
from multiasep.operators import is_zero, scalar_from_text
from multiasep.qarith import ONE, RationalFunction, q_int, qpow, rf_sum
from multiasep.sim import estimate_duality_gap, sampler_equivalence, semigroup_duality_gap
from multiasep.statespace import Basis, Config

RESULTS: list = []


def record(number: int, title: str, ok: bool, seconds: float, budget: float | None, detail: str = ""):
    within = budget is None or seconds < budget
    status = "PASS" if ok and within else "FAIL"
    limit = f" (limit {budget:g}s)" if budget is not None else ""
    line = f"[{status}] criterion {number:2d}: {title} ({seconds:.2f}s{limit}){' ' + detail if detail else ''}"
    RESULTS.append(line)
    if __name__ == "__main__":
        print(line, flush=True)
    assert ok, line
    assert within, line


def _all_pass(reports) -> tuple:
    bad = [f"{r.name} {r.params}: {r.counterexample}" for r in reports if not r.passed]
    return not bad, "; ".join(bad[:3])


# 1 --------------------------------------------------------------------------------------


def test_criterion_01_golden_generator():
    start = time.perf_counter()
    buf = StringIO()
    with redirect_stdout(buf):
        code = cli.main(["generator", "--model", "asep", "--n", "3", "--j2", "2", "--L", "2", "--sector", "1,1"])
    data = json.loads(buf.getvalue())
    golden = V.load_golden()["n3_sector_generator"]
    configs = [tuple(tuple(s) for s in c) for c in data["rows"]]
    entries = {(r, c): scalar_from_text(v) for r, c, v in data["entries"]}
    order = [configs.index(tuple(tuple(s) for s in st)) for st in golden["states"]]
    ours = [entries.get((r, c), ONE - ONE) for r in order for c in order]
    theirs = [scalar_from_text(t) for row in golden["matrix"] for t in row]
    scale = V._global_scalar(theirs, ours)
    ok = code == 0 and scale is not None and is_zero(scale - qpow(2))
    record(1, "golden generator fixture", ok, time.perf_counter() - start, 1.0,
           f"reference matrix = ({scale.simplify() if scale is not None else None}) x generator")


# 2 --------------------------------------------------------------------------------------


def test_criterion_02_golden_stationary():
    start = time.perf_counter()
    basis = Basis.sector(3, 2, 2, (1, 1))
    ref = [qpow(-4), q_int(2) * qpow(-7), q_int(2) * qpow(-9), qpow(-12)]
    Z = rf_sum(ref)
    P = normalized_measure(basis)
    ok = all(is_zero(p - RationalFunction(w) / Z) for p, w in zip(P, ref))
    record(2, "golden stationary fixture", ok, time.perf_counter() - start, 1.0)


# 3 --------------------------------------------------------------------------------------


def test_criterion_03_golden_duality():
    start = time.perf_counter()
    reports = [r for r in V.run_fixtures()
               if r.name.split(":")[1] in ("n2_dprime_values", "n2_dprime_expectation", "n3_duality_rows",
                                           "tazrp_worked_example")]
    ok, detail = _all_pass(reports)
    two = q_int(2)
    lhs = RationalFunction(qpow(2) + ONE, two ** 2)
    rhs = RationalFunction(qpow(3) + qpow(1) + two, two ** 3)
    ok = ok and len(reports) == 4 and is_zero(lhs - rhs)
    record(3, "golden duality fixtures", ok, time.perf_counter() - start, 1.0, detail)


# 4 --------------------------------------------------------------------------------------


def test_criterion_04_self_duality_suite():
    start = time.perf_counter()
    ok, detail = _all_pass(V.run_checks(V.default_jobs(["self-duality"])))
    grid = {tuple(p.values()) for _, p in V.default_jobs(["self-duality"])}
    ok = ok and grid == set(V.SELF_DUALITY_GRID)
    record(4, "self-duality L D = D L^T on 8 lattices", ok, time.perf_counter() - start, 60.0, detail)


# 5 --------------------------------------------------------------------------------------


def test_criterion_05_reversed_duality_suite():
    start = time.perf_counter()
    ok, detail = _all_pass(V.run_checks(V.default_jobs(["reversed-duality", "tazrp-duality"])))
    record(5, "space-reversed ASEP and q-TAZRP dualities", ok, time.perf_counter() - start, 60.0, detail)


# 6 --------------------------------------------------------------------------------------


def test_criterion_06_quantum_group_pipeline():
    start = time.perf_counter()
    ok, detail = _all_pass(V.run_checks(V.default_jobs(["hamiltonian-pipeline"])))
    record(6, "central element -> Hamiltonian -> generator and duality", ok,
           time.perf_counter() - start, 120.0, detail)


# 7 --------------------------------------------------------------------------------------


def test_criterion_07_representation():
    start = time.perf_counter()
    jobs = [("representation", {"n": n, "j2": j2}) for n in (2, 3, 4) for j2 in (1, 2, 3)]
    ok, detail = _all_pass(V.run_checks(jobs))
    record(7, "algebra relations and action formulas, n <= 4, 2j <= 3", ok,
           time.perf_counter() - start, 30.0, detail)


# 8 --------------------------------------------------------------------------------------


def test_criterion_08_projections():
    start = time.perf_counter()
    ok, detail = _all_pass(V.run_checks(V.default_jobs(["projection", "projection-ssep"])))
    record(8, "class-merging projections (ASEP, q-TAZRP, SSEP any map)", ok,
           time.perf_counter() - start, 30.0, detail)


# 9 --------------------------------------------------------------------------------------


def test_criterion_09_limits():
    start = time.perf_counter()
    names = ["limit-ssep", "limit-n2-rescale", "limit-jhalf", "limit-tazrp"]
    reports = V.run_checks(V.default_jobs(names))
    ok, detail = _all_pass(reports)
    devs = [V.tazrp_rate_deviation(3, 3, 2, j2, 0.5) for j2 in (6, 10, 14)]
    ok = ok and devs[0] > devs[1] > devs[2] and devs[2] < 1e-3
    record(9, "reductions and limits", ok, time.perf_counter() - start, 60.0,
           detail or "q-TAZRP deviations " + ", ".join(f"{d:.2e}" for d in devs))


# 10 -------------------------------------------------------------------------------------


def test_criterion_10_qarith_identities():
    start = time.perf_counter()
    rep = V.check_qarith_identities(12)
    record(10, "q-arithmetic identities up to 12", rep.passed, time.perf_counter() - start, 5.0,
           str(rep.counterexample or ""))


# 11 -------------------------------------------------------------------------------------

ASEP_PAIR = (Config(((1, 0), (1, 0), (0, 1)), 2, 1), Config(((0, 1), (1, 0), (0, 1)), 2, 1), "asep")
TAZRP_PAIR = (Config(((0, 0), (1, 1), (0, 0), (0, 0)), 3, None), Config(((1, 1), (0, 0), (0, 0), (0, 0)), 3, None), "tazrp")


def test_criterion_11_monte_carlo_duality():
    start = time.perf_counter()
    worst, ok = 0.0, True
    for x0, y0, model in (ASEP_PAIR, TAZRP_PAIR):
        for seed in (1, 2, 3):
            r = estimate_duality_gap(x0, y0, 1.0, 0.5, 100_000, seed, model=model)
            se = (r["lhs_stderr"] ** 2 + r["rhs_stderr"] ** 2) ** 0.5
            z = abs(r["lhs"] - r["rhs"]) / se
            worst = max(worst, z)
            ok = ok and se > 0 and z <= 3
    mc_seconds = time.perf_counter() - start
    t1 = time.perf_counter()
    gap = semigroup_duality_gap(3, 2, 2, 0.5, 1.0)
    sg_seconds = time.perf_counter() - t1
    ok = ok and gap < 1e-8 and mc_seconds < 300 and sg_seconds < 30
    record(11, "Monte Carlo and semigroup duality", ok, time.perf_counter() - start, 330.0,
           f"largest |lhs-rhs|/stderr {worst:.2f}; semigroup gap {gap:.1e}")


# 12 -------------------------------------------------------------------------------------


def test_criterion_12_sampler_equivalence():
    start = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        for j2 in (1, 2, 3, 4):
            ok, info = sampler_equivalence(n, j2, 2)
            if not ok:
                bad.append(info)
    record(12, "clock-and-cascade law equals generator law, n <= 4, 2j <= 4", not bad,
           time.perf_counter() - start, 10.0, str(bad[:1]) if bad else "")


# 13 -------------------------------------------------------------------------------------


def test_criterion_13_mutation_sensitivity():
    start = time.perf_counter()
    jobs = [("mutation-sensitivity", {"n": n, "j2": j2, "L": L, "use_pipeline": (n, j2, L) in V.PIPELINE_GRID})
            for n, j2, L in V.SELF_DUALITY_GRID]
    reports = V.run_checks(jobs)
    ok, detail = _all_pass(reports)
    count = sum(int(r.notes[0].split()[0]) for r in reports if r.passed)
    record(13, "every single-entry mutation is caught", ok, time.perf_counter() - start, None,
           detail or f"{count} mutations detected")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
