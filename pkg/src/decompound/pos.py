"""Part-of-speech restriction of compound parts to content words."""

from __future__ import annotations

from collections import Counter

from .corpus import KnownWordIndex, canonical
from .errors import ParseError

# STTS content-word tags: adjectives, adverbs, nouns, negation particle, verbs
DEFAULT_WHITELIST = frozenset({
    "ADJA", "ADJD", "ADV", "NN", "NE", "PTKNEG",
    "VVFIN", "VVIMP", "VVINF", "VVIZU", "VVPP",
    "VAFIN", "VAIMP", "VAINF", "VAPP",
    "VMFIN", "VMINF", "VMPP",
})


class PosTable:
    def __init__(self, entries=None):
        self.entries: dict[str, Counter[str]] = {}
        for word, tags in (entries or {}).items():
            for tag, count in dict(tags).items():
                self.add(word, tag, count)

    def add(self, word: str, tag: str, count: int = 1) -> None:
        if count < 1:
            raise ValueError("POS counts must be >= 1")
        self.entries.setdefault(canonical(word), Counter())[tag] += count

    def __contains__(self, word: str) -> bool:
        return canonical(word) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def tags(self, word: str) -> Counter[str]:
        return self.entries.get(canonical(word), Counter())


def load_pos_table(path) -> PosTable:
    """Read ``word<TAB>tag<TAB>count`` or a per-token ``token<TAB>tag`` stream.

    The format is detected from the first non-empty line; mixing the two
    within one file is an error.
    """
    table = PosTable()
    n_cols = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if n_cols is None:
                if len(cols) not in (2, 3):
                    raise ParseError(f"expected 2 or 3 columns, got {len(cols)}", path, line_no)
                n_cols = len(cols)
            elif len(cols) != n_cols:
                raise ParseError(f"expected {n_cols} columns, got {len(cols)}", path, line_no)
            if not cols[0] or not cols[1]:
                raise ParseError("empty word or tag", path, line_no)
            count = 1
            if n_cols == 3:
                try:
                    count = int(cols[2])
                except ValueError:
                    raise ParseError(f"count {cols[2]!r} is not an integer", path, line_no) from None
                if count < 1:
                    raise ParseError(f"count must be >= 1, got {count}", path, line_no)
            table.add(cols[0], cols[1], count)
    return table


def load_whitelist(path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        tags = frozenset(line.strip() for line in fh if line.strip())
    if not tags:
        raise ParseError("whitelist is empty", path)
    return tags


def content_words(table: PosTable, whitelist=DEFAULT_WHITELIST) -> set[str]:
    """Words tagged with a whitelisted tag in a strict majority of occurrences."""
    if not whitelist:
        raise ValueError("whitelist must be non-empty")
    allowed = set()
    for word, tags in table.entries.items():
        inside = sum(c for t, c in tags.items() if t in whitelist)
        if inside > sum(tags.values()) - inside:
            allowed.add(word)
    return allowed


def restrict_index(index: KnownWordIndex, allowed) -> KnownWordIndex:
    allowed = {canonical(w) for w in allowed}
    return KnownWordIndex((w for w in index.words() if w in allowed), min_length=index.min_length)
