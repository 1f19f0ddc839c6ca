import math

import pytest

import vdtp_tune as vt


def test_presets_resolve():
    names = vt.preset_names()
    assert "Urban" in names and "Highway" in names
    urban = vt.scenario("Urban")
    assert urban.reference_config.chunk_size == 25600


def test_chunk_count():
    assert vt.n_chunks(1048576, 40960) == 26
    assert vt.n_chunks(100, 128) == 1


def test_fitness_term_zero_data_is_finite():
    value = vt.fitness_term(3.0, 2.0, 0.0)
    assert math.isfinite(value)
    assert value == pytest.approx(5.0 / math.log10(2.0), rel=1e-12)


def test_evaluate_is_deterministic():
    cfg = vt.VdtpConfig(25600, 8, 8.0)
    s = vt.scenario("Urban")
    a = vt.evaluate(cfg, s, 3, 11)
    b = vt.evaluate(cfg, s, 3, 11)
    assert a.fitness == b.fitness
    assert len(a.replications) == 3


def test_bound_violation_reported():
    msgs = vt.bound_violations(vt.VdtpConfig(100, 8, 8.0), vt.Bounds.vdtp())
    assert len(msgs) == 1 and "chunk_size" in msgs[0]


def test_run_python_objective_budget():
    params = vt.OptimizerParams.defaults(vt.Algorithm.DE)
    rec = vt.run(params, lambda x: sum(v * v for v in x), vt.Bounds.cube(2, -5, 5), 3, 200)
    assert rec.evaluations_used == 200
    assert rec.best_fitness == rec.trace[-1].best_fitness
    bests = [t.best_fitness for t in rec.trace]
    assert all(b >= c for b, c in zip(bests, bests[1:]))


def test_benchmark_runs_all_algorithms():
    for alg in (vt.Algorithm.PSO, vt.Algorithm.DE, vt.Algorithm.GA, vt.Algorithm.ES, vt.Algorithm.SA):
        rec = vt.run_benchmark(vt.OptimizerParams.defaults(alg), "sphere", 3, 5, 1000)
        assert len(rec.trace) == 1000
        assert 0.0 <= rec.best_fitness < rec.trace[0].best_fitness


def test_invalid_params_raise():
    p = vt.OptimizerParams.defaults(vt.Algorithm.GA)
    with pytest.raises(vt.ConfigError):
        p.set("p_cross", "1.5")
        p.validate(1000)


def test_stats_example():
    a = [1, 2, 3, 4, 5, 6]
    r = vt.stats.wilcoxon_signed_rank(a, [x + 10 for x in a])
    assert r.p_value == pytest.approx(0.03125, abs=1e-15)
    f = vt.stats.friedman_ranks([[1, 2, 3], [1, 3, 2]])
    assert f.mean_ranks[0] == 1.0


def test_compare_report(tmp_path):
    report = vt.compare("Urban", 3, 40, 2, 1, str(tmp_path))
    assert "Friedman" in report
    for name in ("summary.csv", "tests.csv", "ranks.csv", "qos.csv"):
        assert (tmp_path / name).exists()
