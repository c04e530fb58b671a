import csv
import io
import math

import pytest

from maxcov.experiments import (
    CSV_HEADER,
    SweepConfig,
    aggregate,
    build_random_instance,
    corpus_sweep,
    default_mu_grid,
    instance_seeds,
    random_graph_runs,
    random_graph_sweep,
    rows_to_csv,
    run_random_instance,
)
from maxcov.rouge import rouge1_multi
from maxcov.solvers import bp_solve, g_greedy
from maxcov.textsum import PreprocessConfig, build_cover_graph, compute_tfidf, load_corpus, toy_corpus_path


def small_cfg(**kw):
    base = dict(instances=3, n_x=12, n_y=18, deg_x=3, deg_y=2, budget=30, mu_grid=(0.0, 2.0, 5.0), iterations=40)
    base.update(kw)
    return SweepConfig(**base)


def test_default_grids():
    grid = default_mu_grid("random")
    assert grid[0] == 0 and grid[-1] == 10 and len(grid) == 21
    assert SweepConfig().mu_grid == tuple(grid)
    log_grid = default_mu_grid("corpus")
    assert log_grid[0] == pytest.approx(1e-3) and log_grid[-1] == pytest.approx(1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(mode="grid")
    with pytest.raises(ValueError):
        SweepConfig(mode="corpus")
    with pytest.raises(ValueError):
        SweepConfig(damping=1.0)
    with pytest.raises(ValueError):
        SweepConfig.from_dict({"beta": 2, "gamma": 1})


def test_config_roundtrip():
    cfg = small_cfg(preprocess=PreprocessConfig(remove_stopwords=False))
    assert SweepConfig.from_dict(cfg.to_dict()) == cfg


def test_seeds_reproducible_and_distinct():
    a = instance_seeds(0, 50)
    assert a == instance_seeds(0, 50)
    assert a[:10] == instance_seeds(0, 10)
    assert len(set(a)) == 50
    assert a != instance_seeds(1, 50)


def test_single_instance_matches_direct_calls():
    cfg = small_cfg(instances=1, mu_grid=(1.5,))
    (row,) = random_graph_sweep(cfg)
    seed = instance_seeds(cfg.seed, 1)[0]
    inst = build_random_instance(cfg, seed)
    assert row.greedy_weight_mean == g_greedy(inst).covered_weight
    assert row.bp_weight_mean == bp_solve(inst, cfg.bp_params(1.5)).covered_weight
    assert row.n == 1 and math.isnan(row.bp_weight_se)


def test_replay_from_seed():
    cfg = small_cfg()
    runs = random_graph_runs(cfg)
    again = run_random_instance(cfg, runs[1].seed)
    assert again.bp_weights == runs[1].bp_weights
    assert again.greedy_weight == runs[1].greedy_weight


def test_greedy_constant_across_mu():
    rows = random_graph_sweep(small_cfg())
    assert len({r.greedy_weight_mean for r in rows}) == 1
    assert [r.mu for r in rows] == [0.0, 2.0, 5.0]


def test_aggregate_statistics():
    cfg = small_cfg()
    runs = random_graph_runs(cfg)
    rows = aggregate(cfg, runs)
    for k, row in enumerate(rows):
        vals = [r.bp_weights[k] for r in runs]
        mean = sum(vals) / 3
        sd = math.sqrt(sum((v - mean) ** 2 for v in vals) / 2)
        assert row.bp_weight_mean == pytest.approx(mean, rel=1e-12)
        assert row.bp_weight_se == pytest.approx(sd / math.sqrt(3), rel=1e-12, abs=1e-12)


def test_threads_do_not_change_results():
    cfg = small_cfg()
    assert random_graph_sweep(cfg) == random_graph_sweep(SweepConfig.from_dict({**cfg.to_dict(), "threads": 2}))


def test_positivity_tracking():
    runs = random_graph_runs(small_cfg(), track_positivity=True)
    assert all(len(r.min_h_hat) == 3 and min(r.min_h_hat) > 0 for r in runs)


def test_instance_failure_names_seed():
    cfg = small_cfg(n_y=17)  # 36 stubs on X cannot match 34 on Y
    with pytest.raises(RuntimeError, match="seed"):
        random_graph_runs(cfg)


def corpus_cfg(**kw):
    base = dict(mode="corpus", corpus=str(toy_corpus_path()), beta=45.0, budget=40, mu_grid=(0.001, 0.01, 0.1))
    base.update(kw)
    return SweepConfig(**base)


def test_corpus_sweep_rows():
    cfg = corpus_cfg()
    rows = corpus_sweep(cfg)
    assert len(rows) == 3 and all(r.n == 2 for r in rows)
    assert all(0 <= r.bp_rouge1 <= 1 and 0 <= r.greedy_rouge1 <= 1 for r in rows)


def test_corpus_greedy_rouge_by_hand():
    cfg = corpus_cfg()
    pp = cfg.preprocess
    clusters = load_corpus(toy_corpus_path(), pp)
    weights = compute_tfidf(clusters, (), pp)
    scores = []
    for cluster, w in zip(clusters, weights):
        cg = build_cover_graph(cluster, w, cfg.budget, pp)
        sol = g_greedy(cg.instance)
        toks = [t for i in sorted(sol.selected) for t in cg.sentences[i].tokens]
        scores.append(rouge1_multi(toks, cluster.references))
    assert corpus_sweep(cfg)[0].greedy_rouge1 == pytest.approx(sum(scores) / 2, abs=1e-15)


def test_csv_format(tmp_path):
    rows = random_graph_sweep(small_cfg(instances=1, mu_grid=(0.5,)))
    text = rows_to_csv(rows, tmp_path / "out.csv")
    assert (tmp_path / "out.csv").read_text() == text
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == CSV_HEADER
    assert len(parsed) == 2
    row = dict(zip(CSV_HEADER, parsed[1]))
    assert float(row["mu"]) == 0.5
    assert row["bp_weight_se"] == "" and row["bp_rouge1"] == ""
    assert row["n"] == "1"
