"""Binary precision, recall and F1 with label 1 as the positive class."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .errors import DomainError


class UndefinedMetricWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class ScoreTriple:
    precision: float
    recall: float
    f1: float

    def rounded(self, places: int = 4) -> tuple[float, float, float]:
        return tuple(round_half_up(v, places) for v in (self.precision, self.recall, self.f1))

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def round_half_up(value: float, places: int = 4) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(float(value))).quantize(q, rounding=ROUND_HALF_UP))


def confusion(y_true: Sequence[int], y_pred: Sequence[int]) -> ConfusionCounts:
    if len(y_true) != len(y_pred):
        raise DomainError(f"length mismatch: {len(y_true)} true vs {len(y_pred)} predicted labels")
    tp = fp = fn = tn = 0
    for t, p in zip(y_true, y_pred):
        if t not in (0, 1) or p not in (0, 1):
            raise DomainError(f"labels must be 0 or 1, got ({t!r}, {p!r})")
        if t == 1:
            if p == 1:
                tp += 1
            else:
                fn += 1
        elif p == 1:
            fp += 1
        else:
            tn += 1
    return ConfusionCounts(tp, fp, fn, tn)


def _ratio(num: float, den: float, name: str) -> float:
    if den == 0:
        warnings.warn(f"{name} is undefined (0/0); reported as 0", UndefinedMetricWarning, stacklevel=3)
        return 0.0
    return num / den


def score(counts: ConfusionCounts) -> ScoreTriple:
    p = _ratio(counts.tp, counts.tp + counts.fp, "precision")
    r = _ratio(counts.tp, counts.tp + counts.fn, "recall")
    f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return ScoreTriple(p, r, f1)


def binary_f1(y_true: Sequence[int], y_pred: Sequence[int]) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UndefinedMetricWarning)
        return score(confusion(y_true, y_pred)).f1


def average_f1(triples: Sequence[ScoreTriple]) -> float:
    if not triples:
        raise DomainError("average of an empty score list")
    return sum(t.f1 for t in triples) / len(triples)
