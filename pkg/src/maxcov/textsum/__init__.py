"""Extractive multi-document summarization as budgeted maximum coverage."""

from .corpus import (
    Cluster,
    CorpusError,
    Document,
    SentenceRecord,
    load_cluster,
    load_corpus,
    sentence_records,
    toy_corpus_path,
)
from .pipeline import SOLVER_NAMES, CoverGraph, Summary, build_cover_graph, solve_with, summarize
from .preprocess import PreprocessConfig, load_stopwords, split_sentences, tokenize_normalize
from .tfidf import TermWeights, compute_tfidf, document_frequencies, term_frequencies

__all__ = [
    "Cluster",
    "CorpusError",
    "CoverGraph",
    "Document",
    "PreprocessConfig",
    "SOLVER_NAMES",
    "SentenceRecord",
    "Summary",
    "TermWeights",
    "build_cover_graph",
    "compute_tfidf",
    "document_frequencies",
    "load_cluster",
    "load_corpus",
    "load_stopwords",
    "sentence_records",
    "solve_with",
    "split_sentences",
    "summarize",
    "term_frequencies",
    "tokenize_normalize",
    "toy_corpus_path",
]
