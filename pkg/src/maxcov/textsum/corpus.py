"""Corpus layout: one directory per cluster with ``docs/*.txt`` and optional ``refs/*.txt``."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .preprocess import PreprocessConfig, split_sentences, tokenize_normalize

__all__ = ["Document", "Cluster", "SentenceRecord", "CorpusError", "load_cluster", "load_corpus", "toy_corpus_path"]


class CorpusError(ValueError):
    """Missing or malformed corpus data."""


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[str, ...]
    source: str = ""

    @classmethod
    def from_text(cls, doc_id: str, text: str, source: str = "") -> "Document":
        return cls(doc_id, tuple(split_sentences(text)), source)


@dataclass(frozen=True)
class Cluster:
    id: str
    documents: tuple[Document, ...]
    references: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if not self.documents:
            raise CorpusError(f"cluster {self.id!r} has no documents")


@dataclass(frozen=True)
class SentenceRecord:
    doc_index: int
    doc_id: str
    position: int
    text: str
    tokens: tuple[str, ...] = field(repr=False)

    @property
    def word_count(self) -> int:
        return len(self.tokens)


def sentence_records(cluster: Cluster, cfg: PreprocessConfig) -> list[SentenceRecord]:
    """Every sentence of the cluster in (document, position) order, empty ones included."""
    return [
        SentenceRecord(d, doc.id, pos, text, tuple(tokenize_normalize(text, cfg)))
        for d, doc in enumerate(cluster.documents)
        for pos, text in enumerate(doc.sentences)
    ]


def _read_texts(directory: Path) -> list[tuple[str, str, str]]:
    return [
        (p.stem, p.read_text(encoding="utf-8"), str(p))
        for p in sorted(directory.glob("*.txt"))
    ]


def load_cluster(path, cfg: PreprocessConfig = PreprocessConfig()) -> Cluster:
    """Read one cluster directory; reference summaries are tokenized with ``cfg``."""
    path = Path(path)
    docs_dir = path / "docs"
    if not docs_dir.is_dir():
        raise CorpusError(f"{path}: missing docs/ directory")
    docs = tuple(Document.from_text(i, t, s) for i, t, s in _read_texts(docs_dir))
    if not docs:
        raise CorpusError(f"{docs_dir}: no .txt documents")
    refs = ()
    if (path / "refs").is_dir():
        refs = tuple(tuple(tokenize_normalize(t, cfg)) for _, t, _ in _read_texts(path / "refs"))
    return Cluster(path.name, docs, refs)


def load_corpus(root, cfg: PreprocessConfig = PreprocessConfig()) -> list[Cluster]:
    """All clusters under ``root``, in directory-name order."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root {root} is not a directory")
    clusters = [load_cluster(p, cfg) for p in sorted(root.iterdir()) if p.is_dir()]
    if not clusters:
        raise CorpusError(f"{root}: no cluster directories")
    return clusters


def toy_corpus_path() -> Path:
    """Location of the small corpus shipped with the package."""
    return Path(str(resources.files("maxcov.data").joinpath("toy_corpus")))
