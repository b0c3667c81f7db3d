"""Splitting guided by English-side evidence in a parallel corpus."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .corpus import KnownWordIndex, WordCountTable, canonical
from .errors import ParseError
from .lexicon import DEFAULT_ITERATIONS, ParallelCorpus, TranslationLexicon, merge_lexicons, train_lexicon
from .splitter import (DEFAULT_CONFIG, SplitConfig, SplitOption, enumerate_splits, parse_option,
                       score_frequency, split_frequency, unsplit)

DEFAULT_THRESHOLD = 0.01


@dataclass(frozen=True)
class EvidenceMatch:
    option: SplitOption
    covered_parts: int
    consumed_english: frozenset[int]

    @property
    def fully_covered(self) -> bool:
        return self.covered_parts == self.option.n_parts


def match_option(option: SplitOption, english_tokens, lexicon: TranslationLexicon,
                 threshold: float = DEFAULT_THRESHOLD) -> EvidenceMatch:
    """Greedy left-to-right evidence matching; each English token is used once."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    consumed: set[int] = set()
    covered = 0
    for part in option.parts:
        row = lexicon.translations(part.word)
        if not row:
            continue
        for pos, e in enumerate(english_tokens):
            if pos not in consumed and row.get(e, 0.0) >= threshold:
                consumed.add(pos)
                covered += 1
                break
    return EvidenceMatch(option, covered, frozenset(consumed))


def choose_split_in_context(word, english_tokens, index: KnownWordIndex, counts: WordCountTable,
                            lexicon: TranslationLexicon, config: SplitConfig = DEFAULT_CONFIG,
                            threshold: float = DEFAULT_THRESHOLD) -> SplitOption:
    options = enumerate_splits(word, index, config)
    if len(options) == 1:
        return options[0]
    english_tokens = [canonical(e) for e in english_tokens]
    matches = [match_option(o, english_tokens, lexicon, threshold) for o in options if o.is_split]
    matches = [m for m in matches if m.covered_parts > 0]
    if not matches:
        whole = [o for o in options if not o.is_split]
        return whole[0] if whole else unsplit(word, known=False)

    def rank(m: EvidenceMatch):
        # higher is better for every component but the final sort key
        return (m.covered_parts, m.fully_covered, m.option.n_parts, score_frequency(m.option, counts))

    top = max(rank(m) for m in matches)
    best = [m.option for m in matches if rank(m) == top]
    return min(best, key=SplitOption.sort_key)


class SplittingKnowledge:
    """Per word type, how often each option was chosen across a corpus."""

    def __init__(self):
        self.table: dict[str, Counter[SplitOption]] = {}

    def add(self, option: SplitOption, count: int = 1) -> None:
        if count < 1:
            raise ValueError("knowledge counts must be >= 1")
        key = option.canonical_surface
        stored = SplitOption(key, option.parts, option.known)
        self.table.setdefault(key, Counter())[stored] += count

    def update(self, other: SplittingKnowledge) -> None:
        for tally in other.table.values():
            for option, count in tally.items():
                self.add(option, count)

    def __contains__(self, word: str) -> bool:
        return canonical(word) in self.table

    def __len__(self) -> int:
        return len(self.table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplittingKnowledge):
            return NotImplemented
        return self.table == other.table

    def options(self, word: str) -> Counter[SplitOption]:
        return self.table.get(canonical(word), Counter())

    def counts_for(self, word: str) -> dict[str, int]:
        """Rendered option -> count, convenient for inspection."""
        return {o.render(): c for o, c in self.options(word).items()}


def learn_knowledge(corpus: ParallelCorpus, index, counts, lexicon, config: SplitConfig = DEFAULT_CONFIG,
                    threshold: float = DEFAULT_THRESHOLD) -> SplittingKnowledge:
    knowledge = SplittingKnowledge()
    cache: dict[tuple[str, tuple[str, ...]], SplitOption] = {}
    for sent in corpus:
        for token in sent.german:
            key = (token, sent.english)
            choice = cache.get(key)
            if choice is None:
                choice = cache[key] = choose_split_in_context(
                    token, sent.english, index, counts, lexicon, config, threshold)
            knowledge.add(choice)
    return knowledge


def split_corpus(corpus: ParallelCorpus, index, counts, config: SplitConfig = DEFAULT_CONFIG) -> ParallelCorpus:
    """Replace every German token by its frequency-based parts (fillers dropped)."""
    cache: dict[str, list[str]] = {}
    pairs = []
    for sent in corpus:
        german = []
        for token in sent.german:
            if token not in cache:
                cache[token] = split_frequency(token, index, counts, config).words
            german.extend(cache[token])
        pairs.append((german, sent.english))
    return ParallelCorpus(pairs)


def bootstrap_second_lexicon(corpus: ParallelCorpus, index, counts, config: SplitConfig = DEFAULT_CONFIG,
                             iterations: int = DEFAULT_ITERATIONS, base: TranslationLexicon | None = None,
                             ) -> TranslationLexicon:
    """Train on the frequency-split corpus and merge with the unsplit-corpus lexicon.

    ``base`` may supply an already trained (or externally loaded) lexicon
    for the unsplit corpus; otherwise one is trained here.
    """
    if base is None:
        base = train_lexicon(corpus, iterations)
    second = train_lexicon(split_corpus(corpus, index, counts, config), iterations)
    return merge_lexicons(base, second)


def apply_knowledge(word, knowledge: SplittingKnowledge, index, counts,
                    config: SplitConfig = DEFAULT_CONFIG) -> SplitOption:
    tally = knowledge.options(word)
    if not tally:
        return split_frequency(word, index, counts, config)
    top = max(tally.values())
    tied = [o for o, c in tally.items() if c == top]
    best = min(tied, key=lambda o: (-o.n_parts, -score_frequency(o, counts), o.sort_key()))
    return SplitOption(word, best.parts, best.known)


def save_knowledge(knowledge: SplittingKnowledge, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for word in sorted(knowledge.table):
            tally = knowledge.table[word]
            for option in sorted(tally, key=lambda o: (-tally[o], o.sort_key())):
                fh.write(f"{word}\t{option.render()}\t{tally[option]}\n")


def load_knowledge(path) -> SplittingKnowledge:
    knowledge = SplittingKnowledge()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ParseError(f"expected 3 columns, got {len(cols)}", path, line_no)
            word, rendered, raw = cols
            try:
                count = int(raw)
                option = parse_option(word, rendered)
                knowledge.add(option, count)
            except ValueError as exc:
                raise ParseError(str(exc), path, line_no) from None
    return knowledge
