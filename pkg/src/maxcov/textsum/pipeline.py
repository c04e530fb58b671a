"""Cluster -> coverage instance -> extractive summary."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..graph import BipartiteGraph, CoverInstance, CoverSolution
from ..solvers import BPParams, bp_solve, g_greedy, simple_greedy
from .corpus import Cluster, CorpusError, SentenceRecord, sentence_records
from .preprocess import PreprocessConfig
from .tfidf import TermWeights, compute_tfidf

__all__ = ["CoverGraph", "Summary", "build_cover_graph", "summarize", "solve_with", "SOLVER_NAMES"]

SOLVER_NAMES = ("greedy", "g-greedy", "bp")


@dataclass(frozen=True)
class CoverGraph:
    """A coverage instance plus the sentence and term behind each node id."""

    instance: CoverInstance
    sentences: tuple[SentenceRecord, ...]
    terms: tuple[str, ...]


@dataclass(frozen=True)
class Summary:
    sentences: tuple[str, ...]
    records: tuple[SentenceRecord, ...]
    solution: CoverSolution

    @property
    def tokens(self) -> list[str]:
        return [t for rec in self.records for t in rec.tokens]

    @property
    def word_count(self) -> int:
        return sum(rec.word_count for rec in self.records)

    @property
    def text(self) -> str:
        return "\n".join(self.sentences)


def build_cover_graph(
    cluster: Cluster, weights: TermWeights, budget: float, cfg: PreprocessConfig = PreprocessConfig()
) -> CoverGraph:
    """Sentences become X-nodes (cost = token count), distinct terms Y-nodes.

    Sentences left empty by preprocessing are dropped.  Terms are numbered in
    sorted order.
    """
    records = tuple(r for r in sentence_records(cluster, cfg) if r.word_count > 0)
    vocab = sorted({t for r in records for t in r.tokens})
    missing = [t for t in vocab if t not in weights]
    if missing:
        raise CorpusError(f"no weight for terms: {missing[:20]}{' ...' if len(missing) > 20 else ''}")
    term_id = {t: a for a, t in enumerate(vocab)}
    edges = [(i, term_id[t]) for i, r in enumerate(records) for t in sorted(set(r.tokens))]
    g = BipartiteGraph.from_edges(
        len(records),
        len(vocab),
        [r.word_count for r in records],
        [weights[t] for t in vocab],
        edges,
    )
    return CoverGraph(CoverInstance(g, budget), records, tuple(vocab))


def solve_with(inst: CoverInstance, solver: str, params: BPParams | None = None) -> CoverSolution:
    if solver == "greedy":
        return simple_greedy(inst)
    if solver == "g-greedy":
        return g_greedy(inst)
    if solver == "bp":
        return bp_solve(inst, params or BPParams())
    raise ValueError(f"unknown solver {solver!r}; expected one of {SOLVER_NAMES}")


def summarize(
    cluster: Cluster,
    solver: str = "g-greedy",
    params: BPParams | None = None,
    cfg: PreprocessConfig = PreprocessConfig(),
    budget: float = 100,
    weights: TermWeights | None = None,
    background: Sequence[Cluster] = (),
) -> Summary:
    """Pick sentences covering the most term weight within ``budget`` words.

    Without ``weights`` the TF-IDF weights are computed from this cluster and
    ``background``.  Output sentences follow document order, then position.
    """
    if weights is None:
        weights = compute_tfidf([cluster], background, cfg)[0]
    cg = build_cover_graph(cluster, weights, budget, cfg)
    sol = solve_with(cg.instance, solver, params)
    picked = sorted((cg.sentences[i] for i in sol.selected), key=lambda r: (r.doc_index, r.position))
    return Summary(tuple(r.text for r in picked), tuple(picked), sol)
