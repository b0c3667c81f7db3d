"""Word counting and the known-word index used by all splitters."""

from __future__ import annotations

import string
from collections import Counter
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ParseError

DEFAULT_PUNCTUATION = string.punctuation + "„“”‚‘’«»…–—"
PREFIX_LENGTH = 3
DEFAULT_MIN_LENGTH = 3


def canonical(word: str) -> str:
    return word.lower()


def tokenize(line: str, punctuation: str = DEFAULT_PUNCTUATION) -> list[str]:
    """Whitespace-split ``line`` and strip leading/trailing punctuation.

    Tokens are returned in their original casing; tokens that consist only
    of punctuation are dropped.
    """
    tokens = []
    for raw in line.split():
        tok = raw.strip(punctuation)
        if tok:
            tokens.append(tok)
    return tokens


class WordCountTable:
    """Mapping canonical word -> corpus count. Missing words count 0."""

    def __init__(self, entries=None):
        self._counts: dict[str, int] = {}
        if entries:
            for word, count in dict(entries).items():
                if count < 0:
                    raise ValueError(f"negative count for {word!r}")
                if count:
                    key = canonical(word)
                    self._counts[key] = self._counts.get(key, 0) + int(count)

    def __getitem__(self, word: str) -> int:
        return self._counts.get(canonical(word), 0)

    def get(self, word: str, default: int = 0) -> int:
        return self._counts.get(canonical(word), default)

    def __contains__(self, word: str) -> bool:
        return canonical(word) in self._counts

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, WordCountTable):
            return self._counts == other._counts
        if isinstance(other, dict):
            return self._counts == other
        return NotImplemented

    def __add__(self, other: WordCountTable) -> WordCountTable:
        merged = Counter(self._counts)
        merged.update(other._counts)
        return WordCountTable(merged)

    def __repr__(self) -> str:
        return f"WordCountTable({len(self)} words)"

    def items(self):
        return self._counts.items()

    def scaled(self, factor: int) -> WordCountTable:
        return WordCountTable({w: c * factor for w, c in self._counts.items()})


def count_words(corpus_lines: Iterable[str], punctuation: str = DEFAULT_PUNCTUATION) -> WordCountTable:
    counts: Counter[str] = Counter()
    for line in corpus_lines:
        counts.update(canonical(tok) for tok in tokenize(line, punctuation))
    return WordCountTable(counts)


class KnownWordIndex:
    """Known words bucketed by their first three letters.

    Words shorter than the prefix length (only possible with
    ``min_length < 3``) are bucketed under the whole word.
    """

    def __init__(self, words: Iterable[str] = (), min_length: int = DEFAULT_MIN_LENGTH):
        if min_length < 1:
            raise ValueError("min_length must be >= 1")
        self.min_length = min_length
        self.buckets: dict[str, frozenset[str]] = {}
        grouped: dict[str, set[str]] = {}
        for word in words:
            word = canonical(word)
            if len(word) >= min_length:
                grouped.setdefault(word[:PREFIX_LENGTH], set()).add(word)
        self.buckets = {k: frozenset(v) for k, v in grouped.items()}

    def __contains__(self, word: str) -> bool:
        return word in self.buckets.get(word[:PREFIX_LENGTH], ())

    def bucket(self, prefix: str) -> frozenset[str]:
        return self.buckets.get(prefix[:PREFIX_LENGTH], frozenset())

    def words(self) -> set[str]:
        out: set[str] = set()
        for bucket in self.buckets.values():
            out |= bucket
        return out

    def __len__(self) -> int:
        return sum(len(b) for b in self.buckets.values())

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.words()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnownWordIndex):
            return NotImplemented
        return self.min_length == other.min_length and self.buckets == other.buckets

    def __repr__(self) -> str:
        return f"KnownWordIndex({len(self)} words, min_length={self.min_length})"


def build_index(counts: WordCountTable, min_length: int = DEFAULT_MIN_LENGTH) -> KnownWordIndex:
    return KnownWordIndex(counts, min_length=min_length)


def save_counts(counts: WordCountTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for word in sorted(counts):
            fh.write(f"{word}\t{counts[word]}\n")


def load_counts(path) -> WordCountTable:
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ParseError(f"expected 2 columns, got {len(cols)}", path, line_no)
            word, raw = cols
            try:
                count = int(raw)
            except ValueError:
                raise ParseError(f"count {raw!r} is not an integer", path, line_no) from None
            if count < 0:
                raise ParseError(f"negative count {count}", path, line_no)
            entries[word] = entries.get(word, 0) + count
    return WordCountTable(entries)


def save_index(index: KnownWordIndex, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for prefix in sorted(index.buckets):
            for word in sorted(index.buckets[prefix]):
                fh.write(f"{prefix}\t{word}\n")


def load_index(path, min_length: int = DEFAULT_MIN_LENGTH) -> KnownWordIndex:
    """Read an index file (``prefix<TAB>word``) or a plain word list."""
    words = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) > 2:
                raise ParseError(f"expected 1 or 2 columns, got {len(cols)}", path, line_no)
            words.append(cols[-1])
    return KnownWordIndex(words, min_length=min_length)


def read_lines(path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()
