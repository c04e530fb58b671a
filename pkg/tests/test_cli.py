import csv
import io
import json

import pytest

from maxcov.cli import dispatch
from maxcov.graph import load_graph, store_graph, validate_graph
from maxcov.textsum import toy_corpus_path


@pytest.fixture
def graph_file(tmp_path, example_graph):
    path = tmp_path / "g.json"
    store_graph(example_graph, path)
    return path


def run(capsys, *argv):
    code = dispatch([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_g_greedy(capsys, graph_file):
    code, out, err = run(capsys, "solve", "--graph", graph_file, "--solver", "g-greedy", "--budget", 2)
    assert code == 0
    result = json.loads(out)
    assert result["covered_weight"] == 4
    assert result["cost"] <= 2
    assert json.loads(err.splitlines()[0])["config"]["solver"] == "g-greedy"


def test_solve_bp(capsys, graph_file):
    code, out, _ = run(capsys, "solve", "--graph", graph_file, "--solver", "bp", "--budget", 2, "--beta", 5)
    assert code == 0
    assert json.loads(out)["cost"] <= 2


def test_gen_graph_then_solve_and_oracle(capsys, tmp_path):
    path = tmp_path / "rand.json"
    code, _, _ = run(capsys, "gen-graph", "--nx", 12, "--ny", 18, "--dx", 3, "--dy", 2, "--seed", 4, "--out", path)
    assert code == 0
    g = load_graph(path)
    assert validate_graph(g) == [] and (g.n_x, g.n_y) == (12, 18)
    code, out, _ = run(capsys, "solve", "--graph", path, "--budget", 20)
    greedy = json.loads(out)["covered_weight"]
    code, out, _ = run(capsys, "oracle", "--graph", path, "--budget", 20)
    assert code == 0
    assert json.loads(out)["covered_weight"] >= greedy


def test_gen_graph_stdout_is_deterministic(capsys):
    argv = ["gen-graph", "--nx", 6, "--ny", 9, "--dx", 3, "--dy", 2, "--seed", 1]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_sweep_one_instance(capsys, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"instances": 1, "n_x": 12, "n_y": 18, "deg_x": 3, "deg_y": 2, "budget": 20}))
    code, out, _ = run(capsys, "sweep", "--config", config, "--mu", "0.5,1", "--iters", 30)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["mu"]) for r in rows] == [0.5, 1.0]
    assert all(r["n"] == "1" for r in rows)


def test_flags_override_config(capsys, tmp_path, graph_file):
    config = tmp_path / "c.json"
    config.write_text(json.dumps({"budget": 0, "solver": "greedy"}))
    _, out, err = run(capsys, "solve", "--config", config, "--graph", graph_file)
    assert json.loads(out)["covered_weight"] == 0
    _, out, err = run(capsys, "solve", "--config", config, "--graph", graph_file, "--budget", 2)
    assert json.loads(out)["covered_weight"] > 0
    assert json.loads(err.splitlines()[0])["config"]["solver"] == "greedy"


def test_summarize_toy_corpus(capsys):
    code, out, _ = run(capsys, "summarize", "--corpus", toy_corpus_path(), "--budget", 30, "--solver", "bp", "--beta", 45, "--mu", 0.01)
    assert code == 0
    clusters = json.loads(out)["clusters"]
    assert len(clusters) == 2
    assert all(c["word_count"] <= 30 and 0 <= c["rouge1"] <= 1 for c in clusters)


def test_rouge_command(capsys, tmp_path):
    (tmp_path / "s.txt").write_text("The cat sat.")
    (tmp_path / "r.txt").write_text("The cat ran far.")
    code, out, _ = run(
        capsys, "rouge", "--summary", tmp_path / "s.txt", "--refs", tmp_path / "r.txt", "--stopwords", "off", "--stem", "off"
    )
    assert code == 0
    assert abs(json.loads(out)["rouge1"] - 0.5) < 1e-12


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["solve"],
        ["solve", "--graph", "/nonexistent/g.json"],
        ["solve", "--budget", "abc"],
        ["sweep", "--stopwords", "maybe"],
        ["sweep", "--mode", "corpus"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    assert dispatch(argv) == 1


def test_invalid_parameter_exit_1(capsys, graph_file):
    assert dispatch(["solve", "--graph", str(graph_file), "--solver", "bp", "--damping", "1.5"]) == 1


def test_bad_data_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n_x": 1,')
    assert dispatch(["solve", "--graph", str(bad)]) == 2
    assert "line" in capsys.readouterr().err
    empty_corpus = tmp_path / "corpus"
    empty_corpus.mkdir()
    assert dispatch(["summarize", "--corpus", str(empty_corpus)]) == 2


def test_oracle_limit_exit_2(capsys, tmp_path):
    path = tmp_path / "big.json"
    dispatch(["gen-graph", "--nx", "30", "--ny", "45", "--dx", "3", "--dy", "2", "--out", str(path)])
    assert dispatch(["oracle", "--graph", str(path), "--budget", "10"]) == 2
