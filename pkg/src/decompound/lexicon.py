"""Translation lexicons p(english | german): EM training, merging, file I/O."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .corpus import DEFAULT_PUNCTUATION, canonical, tokenize
from .errors import ParseError

log = logging.getLogger(__name__)

DEFAULT_ITERATIONS = 5
DEFAULT_PRUNE_FLOOR = 1e-4


@dataclass(frozen=True)
class SentencePair:
    german: tuple[str, ...]
    english: tuple[str, ...]


class ParallelCorpus:
    """Sentence-aligned German/English token sequences (canonical form)."""

    def __init__(self, pairs: Iterable[tuple[Sequence[str], Sequence[str]]] = ()):
        self.pairs: list[SentencePair] = []
        for german, english in pairs:
            german = tuple(canonical(t) for t in german)
            english = tuple(canonical(t) for t in english)
            if not german or not english:
                raise ValueError("parallel sentence pairs must have both sides non-empty")
            self.pairs.append(SentencePair(german, english))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @classmethod
    def from_lines(cls, german_lines, english_lines, punctuation=DEFAULT_PUNCTUATION, path=None):
        german_lines = list(german_lines)
        english_lines = list(english_lines)
        if len(german_lines) != len(english_lines):
            raise ParseError(
                f"line count mismatch: {len(german_lines)} German vs {len(english_lines)} English", path)
        pairs = []
        for line_no, (g, e) in enumerate(zip(german_lines, english_lines), 1):
            gt, et = tokenize(g, punctuation), tokenize(e, punctuation)
            if not gt and not et:
                continue
            if not gt or not et:
                raise ParseError("one side of the sentence pair is empty", path, line_no)
            pairs.append((gt, et))
        return cls(pairs)


def read_parallel(german_path=None, english_path=None, tsv_path=None) -> ParallelCorpus:
    """Load two aligned text files, or a single ``german<TAB>english`` file."""
    if tsv_path is not None:
        german, english = [], []
        with open(tsv_path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                cols = line.split("\t")
                if len(cols) != 2:
                    raise ParseError(f"expected 2 columns, got {len(cols)}", tsv_path, line_no)
                german.append(cols[0])
                english.append(cols[1])
        return ParallelCorpus.from_lines(german, english, path=tsv_path)
    if german_path is None or english_path is None:
        raise ValueError("need either a TSV corpus or both German and English files")
    with open(german_path, encoding="utf-8") as g, open(english_path, encoding="utf-8") as e:
        return ParallelCorpus.from_lines(g.read().splitlines(), e.read().splitlines(), path=german_path)


class TranslationLexicon:
    def __init__(self, probabilities=None):
        self.probabilities: dict[str, dict[str, float]] = {}
        for g, row in (probabilities or {}).items():
            for e, p in row.items():
                if not 0.0 < p <= 1.0:
                    raise ValueError(f"probability {p} for ({g}, {e}) outside (0, 1]")
                self.probabilities.setdefault(g, {})[e] = float(p)

    def prob(self, german: str, english: str) -> float:
        return self.probabilities.get(german, {}).get(english, 0.0)

    def translations(self, german: str) -> dict[str, float]:
        return self.probabilities.get(german, {})

    def __contains__(self, german: str) -> bool:
        return german in self.probabilities

    def __len__(self) -> int:
        return sum(len(row) for row in self.probabilities.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TranslationLexicon):
            return NotImplemented
        return self.probabilities == other.probabilities

    def __repr__(self) -> str:
        return f"TranslationLexicon({len(self.probabilities)} German words, {len(self)} entries)"

    def entries(self):
        for g in sorted(self.probabilities):
            row = self.probabilities[g]
            for e in sorted(row, key=lambda e: (-row[e], e)):
                yield g, e, row[e]


class _Problem:
    """Corpus flattened into the arrays the EM kernels consume."""

    def __init__(self, corpus: ParallelCorpus):
        pair_index: dict[tuple[str, str], int] = {}
        german_index: dict[str, int] = {}
        pair_german: list[int] = []
        pair_ids: list[int] = []
        row_ptr = [0]
        for sent in corpus:
            for e in sent.english:
                for g in sent.german:
                    key = (g, e)
                    pid = pair_index.get(key)
                    if pid is None:
                        pid = pair_index[key] = len(pair_index)
                        pair_german.append(german_index.setdefault(g, len(german_index)))
                    pair_ids.append(pid)
                row_ptr.append(len(pair_ids))
        self.pairs = list(pair_index)
        self.pair_german = np.asarray(pair_german, dtype=np.int64)
        self.pair_ids = np.asarray(pair_ids, dtype=np.int64)
        self.row_ptr = np.asarray(row_ptr, dtype=np.int64)

    def to_lexicon(self, probs, floor: float) -> TranslationLexicon:
        table: dict[str, dict[str, float]] = {}
        for (g, e), p in zip(self.pairs, probs.tolist()):
            if p >= floor and p > 0.0:
                table.setdefault(g, {})[e] = min(p, 1.0)
        return TranslationLexicon(table)


def run_em(corpus: ParallelCorpus, iterations: int):
    """Run EM; return (problem, final probabilities, log-likelihood trace).

    ``trace[k]`` is the corpus log-likelihood under the parameters after
    ``k`` iterations, so the trace has ``iterations + 1`` entries.
    """
    if len(corpus) == 0:
        raise ValueError("cannot train a lexicon on an empty corpus")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    problem = _Problem(corpus)
    probs = _kernels.uniform_init(problem.pair_german)
    trace = []
    for _ in range(iterations):
        counts, loglik = _kernels.e_step(problem.pair_ids, problem.row_ptr, probs)
        trace.append(loglik)
        probs = _kernels.m_step(counts, problem.pair_german)
    _, loglik = _kernels.e_step(problem.pair_ids, problem.row_ptr, probs)
    trace.append(loglik)
    log.debug("EM log-likelihood trace: %s", trace)
    return problem, probs, trace


def train_lexicon(corpus: ParallelCorpus, iterations: int = DEFAULT_ITERATIONS,
                  prune_floor: float = DEFAULT_PRUNE_FLOOR) -> TranslationLexicon:
    problem, probs, _ = run_em(corpus, iterations)
    return problem.to_lexicon(probs, prune_floor)


def corpus_log_likelihood(corpus: ParallelCorpus, lexicon: TranslationLexicon) -> float:
    """Sum over English tokens of log(mean_g p(e|g)) under ``lexicon``."""
    total = 0.0
    for sent in corpus:
        for e in sent.english:
            mass = sum(lexicon.prob(g, e) for g in sent.german)
            total += np.log(mass / len(sent.german)) if mass > 0 else -np.inf
    return float(total)


def merge_lexicons(a: TranslationLexicon, b: TranslationLexicon) -> TranslationLexicon:
    """Union of entries; conflicting probabilities keep the larger one."""
    merged = {g: dict(row) for g, row in a.probabilities.items()}
    for g, row in b.probabilities.items():
        target = merged.setdefault(g, {})
        for e, p in row.items():
            if p > target.get(e, 0.0):
                target[e] = p
    return TranslationLexicon(merged)


def save_lexicon(lexicon: TranslationLexicon, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for g, e, p in lexicon.entries():
            fh.write(f"{g}\t{e}\t{p!r}\n")


def load_lexicon(path) -> TranslationLexicon:
    table: dict[str, dict[str, float]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ParseError(f"expected 3 columns, got {len(cols)}", path, line_no)
            g, e, raw = cols
            try:
                p = float(raw)
            except ValueError:
                raise ParseError(f"probability {raw!r} is not a number", path, line_no) from None
            if not 0.0 < p <= 1.0:
                raise ParseError(f"probability {p} outside (0, 1]", path, line_no)
            table.setdefault(canonical(g), {})[canonical(e)] = p
    return TranslationLexicon(table)
