"""Lexical kernel: token bags, normalization and cosine similarity.

Two normalization modes exist.  ``prose`` mode is for natural language
(messages, titles, discussion text): it lowercases, splits on anything that is
not a letter or digit, removes stop words and applies the classic Porter
stemmer.  ``identifier`` mode is for code identifiers taken from stack traces:
it splits only on characters that cannot appear in a Java identifier and keeps
camel-case names whole, so ``NullPointerException`` stays one term.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from functools import lru_cache
from importlib import resources

from nltk.stem.porter import PorterStemmer

__all__ = [
    "PROSE",
    "IDENTIFIER",
    "TokenBag",
    "normalize",
    "cosine",
    "load_stopwords",
    "STOPWORDS",
]

PROSE = "prose"
IDENTIFIER = "identifier"

_PROSE_TOKEN = re.compile(r"[^\W_]+")
_IDENT_TOKEN = re.compile(r"[\w$]+")
_STEMMER = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def load_stopwords(path=None) -> frozenset[str]:
    """Read a stop-word file: one lowercase word per line, ``#`` starts a comment."""
    if path is None:
        text = resources.files("errorsearch").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip()
        if word:
            words.add(word)
    return frozenset(words)


STOPWORDS = load_stopwords()


class TokenBag(Mapping[str, int]):
    """Immutable multiset of terms with positive integer counts."""

    __slots__ = ("_counts", "_sq_norm")

    def __init__(self, counts: Mapping[str, int] | Iterable[str] = ()):
        if isinstance(counts, Mapping):
            items = dict(counts)
        else:
            items = Counter(counts)
        for term, n in items.items():
            if not term or any(ch.isspace() for ch in term):
                raise ValueError(f"invalid term {term!r}")
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"count for {term!r} must be a positive integer, got {n!r}")
        self._counts = items
        self._sq_norm = sum(n * n for n in items.values())

    def __getitem__(self, term: str) -> int:
        return self._counts[term]

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other):
        if isinstance(other, TokenBag):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return self._counts == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __add__(self, other: TokenBag) -> TokenBag:
        merged = Counter(self._counts)
        merged.update(other._counts)
        return TokenBag(dict(merged))

    def __repr__(self):
        inner = ", ".join(f"{t}:{n}" for t, n in self._counts.items())
        return f"TokenBag({{{inner}}})"

    @property
    def squared_norm(self) -> int:
        return self._sq_norm

    def total(self) -> int:
        return sum(self._counts.values())

    def terms(self) -> list[str]:
        """Every term repeated by its count, in insertion order."""
        out = []
        for term, n in self._counts.items():
            out.extend([term] * n)
        return out

    @classmethod
    def union(cls, bags: Iterable[TokenBag]) -> TokenBag:
        merged: Counter[str] = Counter()
        for bag in bags:
            merged.update(bag._counts)
        return cls(dict(merged))


@lru_cache(maxsize=65536)
def _stem(word: str) -> str:
    # Porter is not idempotent ("cause" -> "caus" -> "cau"); iterate to a fixpoint
    # so that normalizing an already-normalized bag is a no-op.
    for _ in range(8):
        stemmed = _STEMMER.stem(word)
        if stemmed == word:
            break
        word = stemmed
    return word


def normalize(text: str, mode: str = PROSE, stopwords: frozenset[str] = STOPWORDS) -> TokenBag:
    """Turn free text into a :class:`TokenBag` using the given mode."""
    if not text:
        return TokenBag()
    if mode == PROSE:
        terms = []
        for token in _PROSE_TOKEN.findall(text.lower()):
            if token in stopwords:
                continue
            stem = _stem(token)
            if stem and stem not in stopwords:
                terms.append(stem)
        return TokenBag(Counter(terms))
    if mode == IDENTIFIER:
        return TokenBag(Counter(t for t in _IDENT_TOKEN.findall(text) if t not in stopwords))
    raise ValueError(f"unknown normalization mode {mode!r}")


def cosine(a: Mapping[str, int], b: Mapping[str, int]) -> float:
    """Cosine of the angle between two term-frequency vectors; 0 if either is empty."""
    if not a or not b:
        return 0.0
    if len(a) > len(b):
        a, b = b, a
    dot = sum(n * b.get(term, 0) for term, n in a.items())
    if dot == 0:
        return 0.0
    na = a.squared_norm if isinstance(a, TokenBag) else sum(n * n for n in a.values())
    nb = b.squared_norm if isinstance(b, TokenBag) else sum(n * n for n in b.values())
    return min(1.0, dot / math.sqrt(na * nb))
