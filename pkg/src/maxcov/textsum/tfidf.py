"""Cluster-level TF-IDF term weights with a first-sentence boost."""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from .corpus import Cluster, CorpusError, sentence_records
from .preprocess import PreprocessConfig

__all__ = ["TermWeights", "compute_tfidf", "document_frequencies", "term_frequencies"]

TermWeights = dict[str, float]


def _doc_token_sets(cluster: Cluster, cfg: PreprocessConfig) -> list[set[str]]:
    sets = [set() for _ in cluster.documents]
    for rec in sentence_records(cluster, cfg):
        sets[rec.doc_index].update(rec.tokens)
    return sets


def document_frequencies(clusters: Sequence[Cluster], cfg: PreprocessConfig) -> tuple[Counter, int]:
    """Per-term document counts and the total number of documents."""
    df: Counter = Counter()
    n_docs = 0
    for cluster in clusters:
        for tokens in _doc_token_sets(cluster, cfg):
            df.update(tokens)
            n_docs += 1
    return df, n_docs


def term_frequencies(cluster: Cluster, cfg: PreprocessConfig) -> dict[str, float]:
    """Each term's share of all tokens in the cluster."""
    counts = Counter(t for rec in sentence_records(cluster, cfg) for t in rec.tokens)
    total = sum(counts.values())
    if total == 0:
        raise CorpusError(f"cluster {cluster.id!r} has no tokens after preprocessing")
    return {t: counts[t] / total for t in sorted(counts)}


def compute_tfidf(
    clusters: Sequence[Cluster],
    background: Sequence[Cluster] = (),
    cfg: PreprocessConfig = PreprocessConfig(),
) -> list[TermWeights]:
    """One weight map per cluster in ``clusters``.

    TF is the term's share of all tokens in the cluster; IDF is
    ``ln(D / df)`` with document counts taken over ``clusters`` and
    ``background`` together.  Terms found in the first sentence of any
    document of the cluster get their weight multiplied by
    ``cfg.first_sentence_boost``.
    """
    if not clusters:
        raise CorpusError("compute_tfidf needs at least one cluster")
    df, n_docs = document_frequencies([*clusters, *background], cfg)
    out = []
    for cluster in clusters:
        tf = term_frequencies(cluster, cfg)
        lead_terms = {t for rec in sentence_records(cluster, cfg) if rec.position == 0 for t in rec.tokens}
        weights = {}
        for term, freq in tf.items():
            w = freq * math.log(n_docs / df[term])
            if term in lead_terms:
                w *= cfg.first_sentence_boost
            weights[term] = w
        out.append(weights)
    return out
