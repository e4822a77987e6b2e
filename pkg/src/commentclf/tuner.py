"""Exhaustive grid search scored by k-fold cross-validated binary F1."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from . import learners
from .errors import DomainError
from .learners import Family, LearnerSpec, TrainedModel
from .metrics import binary_f1
from .rng import SplitMix64
from .vectorizer import to_csr

log = logging.getLogger(__name__)

Resampler = Callable[[sp.csr_matrix, np.ndarray], tuple[sp.csr_matrix, np.ndarray]]


@dataclass(frozen=True)
class ParamGrid:
    family: Family
    axes: Mapping[str, Sequence[Any]]

    def __post_init__(self):
        fam = learners.resolve_family(self.family)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "axes", {k: list(v) for k, v in self.axes.items()})
        unknown = set(self.axes) - set(learners.HYPERPARAMETERS[fam])
        if unknown:
            raise DomainError(f"{fam}: grid axes {sorted(unknown)} are not hyperparameters")
        if any(len(v) == 0 for v in self.axes.values()):
            raise DomainError(f"{fam}: every grid axis needs at least one value")

    def cells(self) -> list[dict]:
        """Row-major cartesian product: the last axis varies fastest."""
        names = list(self.axes)
        return [dict(zip(names, combo)) for combo in itertools.product(*self.axes.values())]

    def __len__(self) -> int:
        return int(np.prod([len(v) for v in self.axes.values()])) if self.axes else 1

    @classmethod
    def default(cls, family) -> "ParamGrid":
        fam = learners.resolve_family(family)
        return cls(fam, learners.DEFAULT_GRIDS[fam])


@dataclass(frozen=True)
class CvResult:
    spec: LearnerSpec
    fold_scores: tuple[float, ...]

    @property
    def mean_score(self) -> float:
        return float(sum(self.fold_scores) / len(self.fold_scores))

    def to_dict(self) -> dict:
        return {
            "hyperparameters": dict(self.spec.hyperparameters),
            "fold_scores": list(self.fold_scores),
            "mean_score": self.mean_score,
        }


def kfold_indices(n: int, k: int, seed: int) -> list[np.ndarray]:
    """Shuffle [0, n) with SplitMix64 and cut it into k contiguous folds.

    The first ``n % k`` folds hold one extra index.
    """
    if k < 2:
        raise DomainError("need at least 2 folds")
    if n < k:
        raise DomainError(f"cannot make {k} folds from {n} rows")
    order = SplitMix64(seed).permutation(n)
    size, extra = divmod(n, k)
    folds, start = [], 0
    for i in range(k):
        stop = start + size + (1 if i < extra else 0)
        folds.append(order[start:stop])
        start = stop
    return folds


def cross_validate(spec: LearnerSpec, X: sp.csr_matrix, y: np.ndarray, folds: Sequence[np.ndarray],
                   resample: Resampler | None = None) -> CvResult:
    scores = []
    n = X.shape[0]
    for held in folds:
        mask = np.ones(n, dtype=bool)
        mask[held] = False
        Xt, yt = X[mask], y[mask]
        if resample is not None:
            Xt, yt = resample(Xt, yt)
        model = learners.fit(spec, Xt, yt)
        scores.append(binary_f1(y[held].tolist(), learners.predict(model, X[held])))
    return CvResult(spec, tuple(scores))


def select_best(results: Sequence[CvResult]) -> int:
    """Index of the highest mean score; the earliest cell wins ties."""
    best = 0
    for i, r in enumerate(results):
        if r.mean_score > results[best].mean_score:
            best = i
    return best


def grid_search(grid: ParamGrid, X, y, seed: int, n_folds: int = 10,
                resample: Resampler | None = None) -> tuple[TrainedModel, list[CvResult]]:
    """Score every grid cell by cross-validation, then refit the winner on all data.

    Folds are drawn once and shared by all cells.  ``resample``, when given,
    is applied to each training fold and to the final refit data (the
    leakage-free ordering); otherwise ``X``/``y`` are used as passed in.
    """
    X = to_csr(X)
    y = np.asarray(y, dtype=np.int64)
    folds = kfold_indices(X.shape[0], n_folds, seed)
    results = []
    for cell in grid.cells():
        spec = LearnerSpec(grid.family, cell, seed)
        try:
            results.append(cross_validate(spec, X, y, folds, resample))
        except Exception as exc:
            exc.args = (f"grid cell {grid.family} {cell}: {exc}",) + exc.args[1:]
            raise
        log.debug("%s %s mean F1 %.4f", grid.family, cell, results[-1].mean_score)
    winner = results[select_best(results)].spec
    Xf, yf = (resample(X, y) if resample is not None else (X, y))
    return learners.fit(winner, Xf, yf), results
