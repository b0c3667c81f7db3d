"""Five-category evaluation of predicted splits against a gold standard."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import ParseError
from .splitter import SplitOption, read_split_file

CORRECT_SPLIT = "correct_split"
CORRECT_NON = "correct_non"
WRONG_NOT = "wrong_not"
WRONG_FAULTY = "wrong_faulty"
WRONG_SPLIT = "wrong_split"
CATEGORIES = (CORRECT_SPLIT, CORRECT_NON, WRONG_NOT, WRONG_FAULTY, WRONG_SPLIT)


@dataclass
class GoldStandard:
    entries: dict[str, SplitOption]
    # token frequency of each entry in the annotated text; defaults to 1
    occurrences: Counter = field(default_factory=Counter)

    def weight(self, surface: str) -> int:
        return self.occurrences.get(surface, 1)

    def __len__(self) -> int:
        return len(self.entries)


def load_gold(path) -> GoldStandard:
    entries: dict[str, SplitOption] = {}
    occurrences: Counter = Counter()
    for option in read_split_file(path):
        prev = entries.get(option.surface)
        if prev is not None and prev != option:
            raise ParseError(f"conflicting gold annotations for {option.surface!r}", path)
        entries[option.surface] = option
        occurrences[option.surface] += 1
    return GoldStandard(entries, occurrences)


def _same(predicted: SplitOption, gold: SplitOption, strict: bool) -> bool:
    if strict:
        return predicted.parts == gold.parts
    return predicted.joints() == gold.joints()


def classify(predicted: SplitOption, gold: SplitOption, strict: bool = True) -> str:
    if predicted.canonical_surface != gold.canonical_surface:
        raise ValueError(f"surface mismatch: {predicted.surface!r} vs {gold.surface!r}")
    if gold.is_split:
        if not predicted.is_split:
            return WRONG_NOT
        return CORRECT_SPLIT if _same(predicted, gold, strict) else WRONG_FAULTY
    return WRONG_SPLIT if predicted.is_split else CORRECT_NON


def _ratio(num, den):
    return (num / den, True) if den else (0.0, False)


@dataclass
class EvalReport:
    correct_split: int = 0
    correct_non: int = 0
    wrong_not: int = 0
    wrong_faulty: int = 0
    wrong_split: int = 0

    @property
    def total(self) -> int:
        return self.correct_split + self.correct_non + self.wrong_not + self.wrong_faulty + self.wrong_split

    def _precision(self):
        return _ratio(self.correct_split, self.correct_split + self.wrong_faulty + self.wrong_split)

    def _recall(self):
        return _ratio(self.correct_split, self.correct_split + self.wrong_faulty + self.wrong_not)

    def _accuracy(self):
        return _ratio(self.correct_split + self.correct_non, self.total)

    @property
    def precision(self) -> float:
        return self._precision()[0]

    @property
    def recall(self) -> float:
        return self._recall()[0]

    @property
    def accuracy(self) -> float:
        return self._accuracy()[0]

    @property
    def undefined(self) -> frozenset[str]:
        """Names of ratios whose denominator was zero (reported as 0)."""
        checks = {"precision": self._precision(), "recall": self._recall(), "accuracy": self._accuracy()}
        return frozenset(name for name, (_, ok) in checks.items() if not ok)

    def as_dict(self) -> dict:
        out = {c: getattr(self, c) for c in CATEGORIES}
        for name in ("precision", "recall", "accuracy"):
            out[name] = None if name in self.undefined else getattr(self, name)
        return out

    def format_table(self, label: str = "") -> str:
        def pct(name):
            return "-" if name in self.undefined else f"{100 * getattr(self, name):.1f}%"

        header = ["method", "split", "not", "not", "faulty", "split", "prec.", "recall", "acc."]
        top = ["", "correct", "correct", "wrong", "wrong", "wrong", "", "", ""]
        row = [label or "-", *(str(getattr(self, c)) for c in CATEGORIES),
               pct("precision"), pct("recall"), pct("accuracy")]
        widths = [max(len(a), len(b), len(c)) for a, b, c in zip(top, header, row)]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in (top, header, row)]
        return "\n".join(lines)

    def format_tsv(self) -> str:
        d = self.as_dict()
        keys = list(d)
        values = ["-" if d[k] is None else (f"{d[k]:.6f}" if isinstance(d[k], float) else str(d[k])) for k in keys]
        return "\t".join(keys) + "\n" + "\t".join(values)

    def format_jsonl(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)


def evaluate(predictions, gold: GoldStandard, strict: bool = True) -> EvalReport:
    missing = sorted(w for w in gold.entries if w not in predictions)
    if missing:
        raise KeyError(f"no prediction for {len(missing)} gold word(s): {', '.join(missing[:20])}")
    tally: Counter = Counter()
    for surface, gold_option in gold.entries.items():
        tally[classify(predictions[surface], gold_option, strict)] += gold.weight(surface)
    return EvalReport(**{c: tally[c] for c in CATEGORIES})
