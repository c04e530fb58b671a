"""Sentence splitting and token normalisation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from nltk.stem.porter import PorterStemmer

__all__ = [
    "PreprocessConfig",
    "load_stopwords",
    "split_sentences",
    "tokenize_normalize",
    "ABBREVIATIONS",
]

ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof sr jr st mt ft rev gen col lt sgt capt gov sen rep pres
    inc ltd co corp bros dept univ assn est approx vs etc no nos vol fig al
    jan feb mar apr jun jul aug sep sept oct nov dec
    u.s u.k u.n e.g i.e a.m p.m
    """.split()
)

_SENTENCE_END = re.compile(r"""[.!?]+["'”’)\]]*(?=\s+["'“‘(\[]?[A-Z0-9])""")
_PARAGRAPH = re.compile(r"\n\s*\n")
_WORD_BEFORE = re.compile(r"(\S+)$")
_DELETE_INNER = re.compile(r"['’.]")
_NON_WORD = re.compile(r"[^\w\s]|_")
_PAPER_MARKS = re.compile(r"[!()]")

DEFAULT_STOPWORDS = "stopwords_en.txt"


@lru_cache(maxsize=None)
def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Read a stop-word list, one lowercase word per line.

    ``None`` loads the English list bundled with the package.
    """
    if path is None:
        text = resources.files("maxcov.data").joinpath(DEFAULT_STOPWORDS).read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@dataclass(frozen=True)
class PreprocessConfig:
    """Options shared by term weighting, graph construction and ROUGE.

    ``strip_all_punctuation=False`` removes only exclamation marks and
    parentheses.  ``stopwords_path=None`` uses the bundled list.
    """

    remove_stopwords: bool = True
    stopwords_path: str | None = None
    apply_stemming: bool = True
    first_sentence_boost: float = 1.5
    strip_all_punctuation: bool = True
    lowercase: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not self.first_sentence_boost >= 1:
            raise ValueError(f"first_sentence_boost must be >= 1, got {self.first_sentence_boost}")

    @property
    def stopwords(self) -> frozenset[str]:
        return load_stopwords(self.stopwords_path)

    def to_dict(self) -> dict:
        return {
            "remove_stopwords": self.remove_stopwords,
            "stopwords_path": self.stopwords_path,
            "apply_stemming": self.apply_stemming,
            "first_sentence_boost": self.first_sentence_boost,
            "strip_all_punctuation": self.strip_all_punctuation,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PreprocessConfig":
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown preprocess options: {sorted(unknown)}")
        return cls(**known)

    def with_(self, **changes) -> "PreprocessConfig":
        return replace(self, **changes)


def _is_abbreviation(text_before: str) -> bool:
    m = _WORD_BEFORE.search(text_before)
    if m is None:
        return False
    word = m.group(1).lstrip("\"'(“‘[").rstrip(".")
    if len(word) == 1 and word.isalpha() and word.isupper():
        return True  # an initial, as in "J. Smith"
    return word.lower() in ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    """Split raw text into sentences.

    A sentence ends at ``.``, ``!`` or ``?`` (plus any closing quotes or
    brackets) when followed by whitespace and an uppercase letter, digit or
    opening quote.  Periods after known abbreviations and single initials do
    not end a sentence.  Blank lines always end one.
    """
    sentences = []
    for para in _PARAGRAPH.split(text):
        para = " ".join(para.split())
        start = 0
        for m in _SENTENCE_END.finditer(para):
            if m.group(0).startswith(".") and len(m.group(0).rstrip("\"'”’)]")) == 1:
                if _is_abbreviation(para[start : m.start()]):
                    continue
            sentences.append(para[start : m.end()].strip())
            start = m.end()
        tail = para[start:].strip()
        if tail:
            sentences.append(tail)
    return [s for s in sentences if s]


_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@lru_cache(maxsize=65536)
def _stem(token: str) -> str:
    return _stemmer.stem(token)


def tokenize_normalize(sentence: str, cfg: PreprocessConfig = PreprocessConfig()) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace, drop stop words, stem.

    With full stripping, apostrophes and periods are deleted in place
    ("don't" -> "dont", "U.S." -> "us") and every other punctuation mark
    becomes a separator.
    """
    text = sentence.lower() if cfg.lowercase else sentence
    if cfg.strip_all_punctuation:
        text = _NON_WORD.sub(" ", _DELETE_INNER.sub("", text))
    else:
        text = _PAPER_MARKS.sub("", text)
    tokens = text.split()
    if cfg.remove_stopwords:
        stop = cfg.stopwords
        tokens = [t for t in tokens if t not in stop]
    if cfg.apply_stemming:
        tokens = [_stem(t) for t in tokens]
    return tokens
