"""Enumeration of splitting options and the raw/eager/frequency strategies."""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import KnownWordIndex, WordCountTable, canonical
from .errors import ParseError

log = logging.getLogger(__name__)

DEFAULT_FILLERS = frozenset({"s", "es"})
SCORE_REL_TOL = 1e-12


@dataclass(frozen=True, order=True)
class SplitPart:
    word: str
    filler: str = ""
    # letters of ``word`` that were dropped at the joint (e.g. "n" in
    # schweige|minute); only produced when SplitConfig.deletions is set
    dropped: str = ""

    @property
    def surface_piece(self) -> str:
        stem = self.word[: len(self.word) - len(self.dropped)] if self.dropped else self.word
        return stem + self.filler

    def render(self) -> str:
        out = self.word
        if self.dropped:
            out += f"(-{self.dropped})"
        if self.filler:
            out += f"(+{self.filler})"
        return out


@dataclass(frozen=True)
class SplitOption:
    """One decomposition of ``surface`` into parts with joint fillers.

    Equality and hashing use the canonical part sequence only, so the same
    split of ``Aktionsplan`` and ``aktionsplan`` compare equal.
    """

    surface: str = field(compare=False)
    parts: tuple[SplitPart, ...]
    known: bool = field(default=True, compare=False)

    @property
    def canonical_surface(self) -> str:
        return canonical(self.surface)

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def is_split(self) -> bool:
        return len(self.parts) > 1

    @property
    def words(self) -> list[str]:
        return [p.word for p in self.parts]

    def reconstruct(self) -> str:
        return "".join(p.surface_piece for p in self.parts)

    def joints(self) -> tuple[int, ...]:
        """Offsets in the surface string where a new part begins."""
        offsets = []
        pos = 0
        for part in self.parts[:-1]:
            pos += len(part.surface_piece)
            offsets.append(pos)
        return tuple(offsets)

    def sort_key(self):
        return (-len(self.parts), tuple((p.word, p.filler, p.dropped) for p in self.parts))

    def render(self) -> str:
        if not self.is_split:
            return self.surface
        return " ".join(p.render() for p in self.parts)

    def __str__(self) -> str:
        return self.render()


def unsplit(word: str, known: bool = True) -> SplitOption:
    return SplitOption(word, (SplitPart(canonical(word)),), known=known)


@dataclass(frozen=True)
class SplitConfig:
    fillers: frozenset[str] = DEFAULT_FILLERS
    min_part_length: int = 3
    allow_whole_word: bool = True
    # letter sequences that may be dropped from the end of a part at a joint
    deletions: frozenset[str] = frozenset()
    max_word_length: int = 100

    def __post_init__(self):
        object.__setattr__(self, "fillers", frozenset(self.fillers))
        object.__setattr__(self, "deletions", frozenset(self.deletions))
        if "" in self.fillers:
            raise ValueError("the empty joint is implicit; do not list '' as a filler")
        if "" in self.deletions:
            raise ValueError("empty deletion is not allowed")
        if self.min_part_length < 1:
            raise ValueError("min_part_length must be >= 1")


DEFAULT_CONFIG = SplitConfig()


def _part_candidates(word, start, index, config):
    """Yield (end, known_word, dropped) for known words beginning at ``start``."""
    if index.min_length >= 3 and not config.deletions and not index.bucket(word[start:start + 3]):
        return
    for end in range(start + 1, len(word) + 1):
        piece = word[start:end]
        if len(piece) >= config.min_part_length and piece in index:
            yield end, piece, ""
        for drop in config.deletions:
            full = piece + drop
            if len(full) >= config.min_part_length and full in index and end < len(word):
                yield end, full, drop


def enumerate_splits(word: str, index: KnownWordIndex, config: SplitConfig = DEFAULT_CONFIG) -> list[SplitOption]:
    """All ways to cover ``word`` with known words and joint fillers.

    The unsplit option is always included (flagged ``known=False`` when the
    whole word is not in the index). Options are ordered by decreasing part
    count, then lexicographically by part sequence.
    """
    if not word:
        raise ValueError("word must be non-empty")
    target = canonical(word)
    if len(target) > config.max_word_length:
        log.warning("word of length %d exceeds max_word_length; not splitting", len(target))
        return [unsplit(word, known=target in index)]

    fillers = sorted(config.fillers)
    found: list[tuple[SplitPart, ...]] = []

    def search(start, prefix):
        for end, known, drop in _part_candidates(target, start, index, config):
            if end == len(target):
                if not drop:
                    found.append(prefix + (SplitPart(known),))
                continue
            search(end, prefix + (SplitPart(known, "", drop),))
            for filler in fillers:
                stop = end + len(filler)
                if stop < len(target) and target.startswith(filler, end):
                    search(stop, prefix + (SplitPart(known, filler, drop),))

    search(0, ())

    options = {SplitOption(word, parts) for parts in found}
    whole = unsplit(word, known=target in index)
    if whole in options:
        options.discard(whole)
    if config.allow_whole_word or not options:
        options.add(whole)
    return sorted(options, key=SplitOption.sort_key)


def score_frequency(option: SplitOption, counts: WordCountTable) -> float:
    """Geometric mean of the part counts; any unseen part gives 0."""
    logs = 0.0
    for part in option.parts:
        c = counts[part.word]
        if c <= 0:
            return 0.0
        logs += math.log(c)
    return math.exp(logs / len(option.parts))


def _best(options, score, tiebreak):
    """Max by ``score`` (relative tolerance for float ties), then min ``tiebreak``."""
    scored = [(score(o), o) for o in options]
    top = max(s for s, _ in scored)
    tied = [o for s, o in scored if math.isclose(s, top, rel_tol=SCORE_REL_TOL, abs_tol=0.0) or s == top]
    return min(tied, key=tiebreak)


def split_frequency(word, index, counts, config: SplitConfig = DEFAULT_CONFIG) -> SplitOption:
    options = enumerate_splits(word, index, config)
    return _best(options, lambda o: score_frequency(o, counts),
                 lambda o: (o.n_parts, o.sort_key()))


def split_eager(word, index, counts, config: SplitConfig = DEFAULT_CONFIG) -> SplitOption:
    options = enumerate_splits(word, index, config)
    most = max(o.n_parts for o in options)
    biggest = [o for o in options if o.n_parts == most]
    return _best(biggest, lambda o: score_frequency(o, counts), SplitOption.sort_key)


def split_raw(word: str) -> SplitOption:
    return unsplit(word)


_PART_RE = re.compile(r"^(?P<word>[^()\s]+)(?:\(-(?P<dropped>[^()\s]+)\))?(?:\(\+(?P<filler>[^()\s]+)\))?$")


def parse_option(surface: str, rendered: str) -> SplitOption:
    """Inverse of :meth:`SplitOption.render`; validates coverage."""
    tokens = rendered.split()
    if not tokens:
        raise ValueError("empty split rendering")
    if len(tokens) == 1 and canonical(tokens[0]) == canonical(surface):
        return unsplit(surface)
    parts = []
    for i, tok in enumerate(tokens):
        m = _PART_RE.match(tok)
        if not m:
            raise ValueError(f"cannot parse part {tok!r}")
        filler = m.group("filler") or ""
        if filler and i == len(tokens) - 1:
            raise ValueError("last part cannot carry a filler")
        parts.append(SplitPart(canonical(m.group("word")), filler, m.group("dropped") or ""))
    option = SplitOption(surface, tuple(parts))
    if option.reconstruct() != canonical(surface):
        raise ValueError(f"split {rendered!r} does not reconstruct {surface!r}")
    return option


def render_line(option: SplitOption) -> str:
    return f"{option.surface}\t{option.render()}"


def read_split_file(path) -> list[SplitOption]:
    """Read ``surface<TAB>rendered`` lines (splitter output / gold files)."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) == 1:
                cols = [cols[0], cols[0]]
            if len(cols) != 2:
                raise ParseError(f"expected 2 columns, got {len(cols)}", path, line_no)
            try:
                out.append(parse_option(cols[0], cols[1]))
            except ValueError as exc:
                raise ParseError(str(exc), path, line_no) from None
    return out


def write_split_file(options: Iterable[SplitOption], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for option in options:
            fh.write(render_line(option) + "\n")
