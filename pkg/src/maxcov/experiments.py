"""Parameter sweeps over the chemical potential mu.

Random mode draws weighted biregular graphs and compares BP at every mu
with g-greedy; corpus mode does the same on summarization instances and adds
ROUGE-1.  Both produce :class:`SweepRow` lists that serialize to CSV.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .graph import CoverInstance, random_weighted_biregular
from .rouge import corpus_rouge, rouge1_multi
from .solvers import BPParams, bp_solve, g_greedy
from .textsum import PreprocessConfig, build_cover_graph, compute_tfidf, load_corpus

__all__ = [
    "SweepConfig",
    "SweepRow",
    "InstanceRun",
    "instance_seeds",
    "run_random_instance",
    "random_graph_runs",
    "random_graph_sweep",
    "corpus_sweep",
    "aggregate",
    "rows_to_csv",
    "CSV_HEADER",
    "default_mu_grid",
]

log = logging.getLogger(__name__)

CSV_HEADER = [
    "mu",
    "bp_weight_mean",
    "bp_weight_se",
    "greedy_weight_mean",
    "greedy_weight_se",
    "bp_rouge1",
    "greedy_rouge1",
    "n",
]


def default_mu_grid(mode: str) -> list[float]:
    """Linear 0..10 step 0.5 for random graphs; log-spaced 1e-3..1 for corpora."""
    if mode == "random":
        return [0.5 * k for k in range(21)]
    return [float(f"{v:.6g}") for v in np.logspace(-3, 0, 13)]


@dataclass(frozen=True)
class SweepConfig:
    mode: str = "random"
    mu_grid: tuple[float, ...] = ()
    beta: float = 3.0
    budget: float = 100.0
    iterations: int = 150
    damping: float = 0.3
    convergence_tol: float = 1e-6
    seed: int = 0
    # random mode
    instances: int = 100
    n_x: int = 100
    n_y: int = 300
    deg_x: int = 9
    deg_y: int = 3
    weight_lo: int = 1
    weight_hi: int = 10
    # corpus mode
    corpus: Optional[str] = None
    background: Optional[str] = None
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    rouge_mode: str = "multiset"
    threads: int = 1

    def __post_init__(self):
        if self.mode not in ("random", "corpus"):
            raise ValueError(f"mode must be 'random' or 'corpus', got {self.mode!r}")
        if not self.mu_grid:
            object.__setattr__(self, "mu_grid", tuple(default_mu_grid(self.mode)))
        object.__setattr__(self, "mu_grid", tuple(sorted(float(m) for m in self.mu_grid)))
        if self.instances < 1:
            raise ValueError("instance count must be >= 1")
        if self.mode == "corpus" and not self.corpus:
            raise ValueError("corpus mode needs a corpus path")
        self.bp_params(0.0)  # validates beta / iterations / damping

    def bp_params(self, mu: float) -> BPParams:
        return BPParams(
            beta=self.beta,
            mu=mu,
            iterations=self.iterations,
            damping=self.damping,
            convergence_tol=self.convergence_tol,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mu_grid"] = list(self.mu_grid)
        d["preprocess"] = self.preprocess.to_dict()
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        data = dict(data)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown sweep options: {sorted(unknown)}")
        if isinstance(data.get("preprocess"), dict):
            data["preprocess"] = PreprocessConfig.from_dict(data["preprocess"])
        if "mu_grid" in data:
            data["mu_grid"] = tuple(data["mu_grid"])
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> "SweepConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class SweepRow:
    mu: float
    bp_weight_mean: float
    bp_weight_se: float
    greedy_weight_mean: float
    greedy_weight_se: float
    bp_rouge1: Optional[float]
    greedy_rouge1: Optional[float]
    n: int


@dataclass
class InstanceRun:
    """Per-instance results of a sweep; ``seed`` replays the instance."""

    seed: int
    greedy_weight: float
    bp_weights: list[float]
    last_max_delta: list[float]
    min_h_hat: list[float] = field(default_factory=list)
    greedy_rouge1: Optional[float] = None
    bp_rouge1: list[Optional[float]] = field(default_factory=list)


def instance_seeds(master_seed: int, count: int) -> list[int]:
    """Independent per-instance integer seeds derived from ``master_seed``."""
    return [int(s) for s in np.random.SeedSequence(master_seed).generate_state(count, dtype=np.uint32)]


def build_random_instance(cfg: SweepConfig, seed: int) -> CoverInstance:
    g = random_weighted_biregular(
        cfg.n_x, cfg.n_y, cfg.deg_x, cfg.deg_y, cfg.weight_lo, cfg.weight_hi, seed=seed
    )
    return CoverInstance(g, cfg.budget)


def run_random_instance(cfg: SweepConfig, seed: int, track_positivity: bool = False) -> InstanceRun:
    """g-greedy once and BP at every mu on the instance drawn from ``seed``.

    With ``track_positivity`` the smallest BP factor message seen over all
    sweeps is recorded per mu.
    """
    try:
        inst = build_random_instance(cfg, seed)
        run = InstanceRun(seed, g_greedy(inst).covered_weight, [], [])
        for mu in cfg.mu_grid:
            lowest = [math.inf]

            def watch(state):
                if state.h_hat.size:
                    lowest[0] = min(lowest[0], float(state.h_hat.min()))

            sol = bp_solve(inst, cfg.bp_params(mu), callback=watch if track_positivity else None)
            run.bp_weights.append(sol.covered_weight)
            run.last_max_delta.append(sol.diagnostics["last_max_delta"])
            if track_positivity:
                run.min_h_hat.append(lowest[0])
        return run
    except Exception as exc:
        raise RuntimeError(f"instance with seed {seed} failed: {exc}") from exc


def _mean_se(values: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=np.float64)
    mean = float(arr.mean())
    se = float(arr.std(ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else math.nan
    return mean, se


def aggregate(cfg: SweepConfig, runs: Sequence[InstanceRun]) -> list[SweepRow]:
    """Collapse per-instance runs into one row per mu, in grid order."""
    g_mean, g_se = _mean_se([r.greedy_weight for r in runs])
    g_rouge = [r.greedy_rouge1 for r in runs if r.greedy_rouge1 is not None]
    rows = []
    for k, mu in enumerate(cfg.mu_grid):
        b_mean, b_se = _mean_se([r.bp_weights[k] for r in runs])
        b_rouge = [r.bp_rouge1[k] for r in runs if r.bp_rouge1 and r.bp_rouge1[k] is not None]
        rows.append(
            SweepRow(
                mu=mu,
                bp_weight_mean=b_mean,
                bp_weight_se=b_se,
                greedy_weight_mean=g_mean,
                greedy_weight_se=g_se,
                bp_rouge1=corpus_rouge(b_rouge) if b_rouge else None,
                greedy_rouge1=corpus_rouge(g_rouge) if g_rouge else None,
                n=len(runs),
            )
        )
    return rows


def _map(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


class _RandomTask:
    def __init__(self, cfg: SweepConfig, track_positivity: bool):
        self.cfg = cfg
        self.track_positivity = track_positivity

    def __call__(self, seed: int) -> InstanceRun:
        return run_random_instance(self.cfg, seed, self.track_positivity)


def random_graph_runs(cfg: SweepConfig, track_positivity: bool = False) -> list[InstanceRun]:
    if cfg.mode != "random":
        raise ValueError("random_graph_runs needs a random-mode config")
    seeds = instance_seeds(cfg.seed, cfg.instances)
    log.info("random sweep: %d instances x %d mu values", len(seeds), len(cfg.mu_grid))
    return _map(_RandomTask(cfg, track_positivity), seeds, cfg.threads)


def random_graph_sweep(cfg: SweepConfig) -> list[SweepRow]:
    return aggregate(cfg, random_graph_runs(cfg))


class _ClusterTask:
    def __init__(self, cfg: SweepConfig):
        self.cfg = cfg

    def __call__(self, item) -> InstanceRun:
        index, cluster, weights = item
        cfg = self.cfg
        cg = build_cover_graph(cluster, weights, cfg.budget, cfg.preprocess)
        inst = cg.instance

        def rouge_of(sol):
            if not cluster.references:
                return None
            tokens = [t for i in sorted(sol.selected) for t in cg.sentences[i].tokens]
            return rouge1_multi(tokens, cluster.references, cfg.rouge_mode)

        greedy = g_greedy(inst)
        run = InstanceRun(index, greedy.covered_weight, [], [], greedy_rouge1=rouge_of(greedy))
        for mu in cfg.mu_grid:
            sol = bp_solve(inst, cfg.bp_params(mu))
            run.bp_weights.append(sol.covered_weight)
            run.last_max_delta.append(sol.diagnostics["last_max_delta"])
            run.bp_rouge1.append(rouge_of(sol))
        return run


def corpus_runs(cfg: SweepConfig) -> list[InstanceRun]:
    """Per-cluster runs; IDF statistics are computed once over the whole corpus first."""
    if cfg.mode != "corpus":
        raise ValueError("corpus_runs needs a corpus-mode config")
    clusters = load_corpus(cfg.corpus, cfg.preprocess)
    background = load_corpus(cfg.background, cfg.preprocess) if cfg.background else []
    weights = compute_tfidf(clusters, background, cfg.preprocess)
    items = list(zip(range(len(clusters)), clusters, weights))
    return _map(_ClusterTask(cfg), items, cfg.threads)


def corpus_sweep(cfg: SweepConfig) -> list[SweepRow]:
    return aggregate(cfg, corpus_runs(cfg))


def _fmt(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return repr(float(v)) if isinstance(v, float) else str(v)


def rows_to_csv(rows: Sequence[SweepRow], path=None) -> str:
    """Render rows as CSV (missing values left empty); also write to ``path`` if given."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(getattr(row, name)) for name in CSV_HEADER])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
