"""``maxcov`` command line.

Exit status: 0 on success, 1 on usage errors, 2 on bad input data.  Every
command logs its fully resolved configuration to stderr before running.
Numeric options can come from ``--config`` (JSON); flags override the file.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .graph import CoverInstance, GraphError, graph_to_dict, load_graph, random_weighted_biregular, store_graph
from .oracle import OracleLimitError, OracleLimits, exact_solve
from .rouge import RougeError, rouge1_multi
from .solvers import BPError, BPParams
from .textsum import (
    CorpusError,
    PreprocessConfig,
    compute_tfidf,
    load_cluster,
    load_corpus,
    solve_with,
    summarize,
    tokenize_normalize,
)
from .experiments import SweepConfig, corpus_sweep, random_graph_sweep, rows_to_csv

log = logging.getLogger("maxcov")

DATA_ERRORS = (GraphError, CorpusError, RougeError, OracleLimitError, BPError, OSError, json.JSONDecodeError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _mu_list(value: str) -> list[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad mu list {value!r}") from exc


def _add_bp_flags(p, mu_type=float):
    p.add_argument("--beta", type=float)
    p.add_argument("--mu", type=mu_type)
    p.add_argument("--iters", type=int, dest="iterations")
    p.add_argument("--damping", type=float)
    p.add_argument("--budget", type=float)


def _add_text_flags(p):
    p.add_argument("--stopwords", type=_on_off, dest="remove_stopwords", metavar="{on,off}")
    p.add_argument("--stem", type=_on_off, dest="apply_stemming", metavar="{on,off}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--out", help="output file (default: stdout)")
    parser = _Parser(prog="maxcov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-graph", parents=[common], help="sample a weighted biregular graph")
    p.add_argument("--nx", type=int, dest="n_x")
    p.add_argument("--ny", type=int, dest="n_y")
    p.add_argument("--dx", type=int, dest="deg_x")
    p.add_argument("--dy", type=int, dest="deg_y")
    p.add_argument("--wlo", type=int, dest="weight_lo")
    p.add_argument("--whi", type=int, dest="weight_hi")

    p = sub.add_parser("solve", parents=[common], help="run an approximate solver on a graph file")
    p.add_argument("--graph")
    p.add_argument("--solver", choices=["greedy", "g-greedy", "bp"])
    _add_bp_flags(p)

    p = sub.add_parser("oracle", parents=[common], help="exact optimum on a small graph file")
    p.add_argument("--graph")
    p.add_argument("--budget", type=float)
    p.add_argument("--max-nodes", type=int, dest="max_x_nodes")
    p.add_argument("--time-budget", type=float, dest="time_budget")

    p = sub.add_parser("sweep", parents=[common], help="mu sweep, CSV output")
    p.add_argument("--mode", choices=["random", "corpus"])
    p.add_argument("--corpus")
    p.add_argument("--instances", type=int)
    _add_bp_flags(p, mu_type=_mu_list)
    _add_text_flags(p)

    p = sub.add_parser("summarize", parents=[common], help="extractive summaries for a corpus or one cluster")
    p.add_argument("--corpus")
    p.add_argument("--solver", choices=["greedy", "g-greedy", "bp"])
    _add_bp_flags(p)
    _add_text_flags(p)

    p = sub.add_parser("rouge", parents=[common], help="ROUGE-1 of a summary against reference files")
    p.add_argument("--summary")
    p.add_argument("--refs", nargs="+")
    p.add_argument("--rouge-mode", choices=["multiset", "set"], dest="rouge_mode")
    _add_text_flags(p)
    return parser


DEFAULTS = {
    "seed": 0,
    "threads": 1,
    "solver": "g-greedy",
    "beta": 3.0,
    "mu": 0.0,
    "iterations": 150,
    "damping": 0.0,
    "budget": 100.0,
    "n_x": 100,
    "n_y": 300,
    "deg_x": 9,
    "deg_y": 3,
    "weight_lo": 1,
    "weight_hi": 10,
    "max_x_nodes": 25,
    "time_budget": 60.0,
    "remove_stopwords": True,
    "apply_stemming": True,
    "rouge_mode": "multiset",
}


def resolve(args: argparse.Namespace) -> dict:
    """Defaults, then the config file, then explicit flags."""
    cfg = {}
    if args.config:
        data = json.loads(_existing(args.config, "--config").read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise UsageError(f"{args.config}: config must be a JSON object")
        cfg.update(data)
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("config", "command")}
    cfg.update(flags)
    return cfg


def _existing(path, flag: str) -> Path:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{flag}: no such file or directory: {path}")
    return p


def _get(cfg: dict, key: str):
    return cfg.get(key, DEFAULTS.get(key))


def _require(cfg: dict, key: str, flag: str):
    if cfg.get(key) is None:
        raise UsageError(f"missing required option {flag}")
    return cfg[key]


def _preprocess(cfg: dict) -> PreprocessConfig:
    base = cfg.get("preprocess") or {}
    pp = PreprocessConfig.from_dict(base)
    return pp.with_(
        remove_stopwords=cfg.get("remove_stopwords", pp.remove_stopwords),
        apply_stemming=cfg.get("apply_stemming", pp.apply_stemming),
    )


def _bp_params(cfg: dict) -> BPParams:
    return BPParams(
        beta=_get(cfg, "beta"),
        mu=_get(cfg, "mu"),
        iterations=_get(cfg, "iterations"),
        damping=_get(cfg, "damping"),
    )


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _echo(command: str, resolved: dict) -> None:
    print(json.dumps({"command": command, "config": resolved}, sort_keys=True, default=str), file=sys.stderr)


def cmd_gen_graph(cfg):
    resolved = {k: _get(cfg, k) for k in ("n_x", "n_y", "deg_x", "deg_y", "weight_lo", "weight_hi", "seed")}
    _echo("gen-graph", resolved)
    g = random_weighted_biregular(
        resolved["n_x"], resolved["n_y"], resolved["deg_x"], resolved["deg_y"],
        resolved["weight_lo"], resolved["weight_hi"], seed=resolved["seed"],
    )
    if cfg.get("out"):
        store_graph(g, cfg["out"])
    else:
        _emit(json.dumps(graph_to_dict(g)) + "\n", None)


def cmd_solve(cfg):
    path = _existing(_require(cfg, "graph", "--graph"), "--graph")
    solver = _get(cfg, "solver")
    params = _bp_params(cfg)
    resolved = {"graph": str(path), "solver": solver, "budget": _get(cfg, "budget"), "bp": params.to_dict()}
    _echo("solve", resolved)
    inst = CoverInstance(load_graph(path), resolved["budget"])
    sol = solve_with(inst, solver, params)
    out = sol.to_dict()
    out["params"] = resolved
    _emit(json.dumps(out, sort_keys=True) + "\n", cfg.get("out"))


def cmd_oracle(cfg):
    path = _existing(_require(cfg, "graph", "--graph"), "--graph")
    lim = OracleLimits(_get(cfg, "max_x_nodes"), _get(cfg, "time_budget"))
    resolved = {"graph": str(path), "budget": _get(cfg, "budget"), "max_x_nodes": lim.max_x_nodes, "time_budget": lim.time_budget}
    _echo("oracle", resolved)
    sol = exact_solve(CoverInstance(load_graph(path), resolved["budget"]), lim)
    out = sol.to_dict()
    out["params"] = resolved
    _emit(json.dumps(out, sort_keys=True) + "\n", cfg.get("out"))


def cmd_sweep(cfg):
    keys = set(SweepConfig.__dataclass_fields__)
    data = {k: v for k, v in cfg.items() if k in keys}
    if "mu" in cfg:
        mu = cfg["mu"]
        data["mu_grid"] = mu if isinstance(mu, list) else [mu]
    data["preprocess"] = _preprocess(cfg)
    if "corpus" in cfg:
        _existing(cfg["corpus"], "--corpus")
    if "corpus" in cfg and "mode" not in cfg:
        data["mode"] = "corpus"
    try:
        sweep = SweepConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    _echo("sweep", sweep.to_dict())
    rows = random_graph_sweep(sweep) if sweep.mode == "random" else corpus_sweep(sweep)
    _emit(rows_to_csv(rows), cfg.get("out"))


def cmd_summarize(cfg):
    root = _existing(_require(cfg, "corpus", "--corpus"), "--corpus")
    pp = _preprocess(cfg)
    solver = _get(cfg, "solver")
    params = _bp_params(cfg)
    budget = _get(cfg, "budget")
    resolved = {"corpus": str(root), "solver": solver, "budget": budget, "bp": params.to_dict(), "preprocess": pp.to_dict()}
    _echo("summarize", resolved)
    clusters = [load_cluster(root, pp)] if (root / "docs").is_dir() else load_corpus(root, pp)
    weights = compute_tfidf(clusters, (), pp)
    results = []
    for cluster, w in zip(clusters, weights):
        s = summarize(cluster, solver, params, pp, budget, weights=w)
        entry = {"cluster": cluster.id, "summary": list(s.sentences), "word_count": s.word_count}
        entry.update(s.solution.to_dict())
        if cluster.references:
            entry["rouge1"] = rouge1_multi(s.tokens, cluster.references, _get(cfg, "rouge_mode"))
        results.append(entry)
    _emit(json.dumps({"params": resolved, "clusters": results}, indent=2, sort_keys=True) + "\n", cfg.get("out"))


def cmd_rouge(cfg):
    summary = _existing(_require(cfg, "summary", "--summary"), "--summary")
    refs = [_existing(r, "--refs") for r in _require(cfg, "refs", "--refs")]
    pp = _preprocess(cfg)
    mode = _get(cfg, "rouge_mode")
    _echo("rouge", {"summary": str(summary), "refs": [str(r) for r in refs], "rouge_mode": mode, "preprocess": pp.to_dict()})
    tokens = tokenize_normalize(summary.read_text(encoding="utf-8"), pp)
    ref_tokens = [tokenize_normalize(r.read_text(encoding="utf-8"), pp) for r in refs]
    score = rouge1_multi(tokens, ref_tokens, mode)
    _emit(json.dumps({"rouge1": score, "references": len(refs)}) + "\n", cfg.get("out"))


COMMANDS = {
    "gen-graph": cmd_gen_graph,
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
    "summarize": cmd_summarize,
    "rouge": cmd_rouge,
}


def dispatch(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("MAXCOV_LOG", "WARNING").upper(), format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve(args)
        COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"maxcov: error: {exc}", file=sys.stderr)
        return 1
    except DATA_ERRORS as exc:
        print(f"maxcov: data error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # parameter validation (negative beta, bad damping, ...)
        print(f"maxcov: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
