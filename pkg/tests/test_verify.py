import json

import pytest

from multiasep import verify as V
from multiasep.process import build_generator


def test_report_serializes():
    rep = V.check_self_duality(2, 1, 3)
    assert rep.passed and rep.counterexample is None
    data = json.loads(rep.to_json())
    assert data["name"] == "self-duality" and data["passed"] is True


def test_mutation_produces_counterexample():
    gen = build_generator("asep", 2, 2, 2)
    r, c = next((r, c) for r, row in enumerate(gen.rows) for c in row if c != r)
    bad = V.mutate_entry(gen, r, c)
    rep = V.check_self_duality(2, 2, 2, generator=bad)
    assert not rep.passed
    cx = rep.counterexample
    assert {"row", "col", "lhs", "rhs"} <= set(cx)
    assert cx["lhs"] != cx["rhs"]


def test_mutation_rejects_diagonal():
    gen = build_generator("asep", 2, 1, 2)
    with pytest.raises(ValueError):
        V.mutate_entry(gen, 0, 0)


def test_fixtures_all_pass():
    reports = V.run_fixtures()
    assert len(reports) == 8
    assert all(r.passed for r in reports), [r.name for r in reports if not r.passed]


def test_worked_generator_scalar_is_reported():
    (rep,) = [r for r in V.run_fixtures() if r.name.endswith("n3_sector_generator")]
    assert any("reference matrix = (q^2)" in note for note in rep.notes)


def test_unknown_check_is_a_failing_report():
    rep = V.run_job(("self-duality", {"n": 2, "j2": 1, "L": 3, "bogus": 1}))
    assert not rep.passed and "error" in rep.counterexample
    with pytest.raises(KeyError):
        V.run_job(("no-such-check", {}))


def test_parallel_runner_matches_serial():
    jobs = V.default_jobs(["limit-jhalf", "inductive-rates"])
    serial = V.run_checks(jobs, workers=1)
    parallel = V.run_checks(jobs, workers=2)
    strip = lambda rs: [(r.name, r.params, r.passed, r.counterexample) for r in rs]  # noqa: E731
    assert strip(serial) == strip(parallel)


@pytest.mark.parametrize("name", ["cp-symmetry", "detailed-balance", "stationary-expectation",
                                  "legacy-reductions", "projection-ssep", "limit-ssep",
                                  "limit-n2-rescale", "duality-limit", "coproduct"])
def test_registry_defaults_pass(name):
    for rep in V.run_checks(V.default_jobs([name])):
        assert rep.passed, (rep.params, rep.counterexample)


def test_tazrp_rate_deviation_shrinks():
    devs = [V.tazrp_rate_deviation(3, 3, 2, j2, 0.5) for j2 in (6, 10, 14)]
    assert devs[0] > devs[1] > devs[2]
    assert devs[-1] < 1e-3


def test_state_grid_respects_cap():
    from multiasep.statespace import count_states
    grid = V.state_grid(500)
    assert grid and all(count_states(*t) <= 500 for t in grid)
