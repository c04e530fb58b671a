"""ROUGE-1 recall against one or more reference summaries."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from statistics import fmean
from typing import Iterable, Sequence

__all__ = ["RougeScore", "RougeError", "rouge1", "rouge1_multi", "corpus_rouge"]


class RougeError(ValueError):
    pass


@dataclass(frozen=True)
class RougeScore:
    value: float
    match_count: int
    reference_length: int


def rouge1(summary: Sequence[str], reference: Sequence[str], mode: str = "multiset") -> RougeScore:
    """Unigram recall of ``reference`` by ``summary``.

    In ``"multiset"`` mode each reference occurrence can be matched by at most
    one summary occurrence (clipped counts).  ``"set"`` mode compares distinct
    words only, and the reference length is then its vocabulary size.
    """
    if mode == "multiset":
        ref = Counter(reference)
        summ = Counter(summary)
    elif mode == "set":
        ref = Counter(set(reference))
        summ = Counter(set(summary))
    else:
        raise RougeError(f"unknown ROUGE-1 mode {mode!r}")
    length = sum(ref.values())
    if length == 0:
        raise RougeError("empty reference")
    matches = sum(min(n, summ[t]) for t, n in ref.items())
    return RougeScore(matches / length, matches, length)


def rouge1_multi(summary: Sequence[str], references: Iterable[Sequence[str]], mode: str = "multiset") -> float:
    """Mean ROUGE-1 over several references."""
    scores = [rouge1(summary, ref, mode).value for ref in references]
    if not scores:
        raise RougeError("no references")
    return fmean(scores)


def corpus_rouge(per_cluster: Iterable[float]) -> float:
    """Unweighted mean of per-cluster scores."""
    values = list(per_cluster)
    if not values:
        raise RougeError("no cluster scores")
    return fmean(values)
