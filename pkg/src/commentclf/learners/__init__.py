"""Eight binary classifier families behind one fit / predict contract.

>>> spec = LearnerSpec(Family.LinearSVC, {"C": 1.0}, seed=7)
>>> model = fit(spec, X_train, y_train)          # doctest: +SKIP
>>> predict(model, X_test)                         # doctest: +SKIP

``X`` may be a list of :class:`~commentclf.vectorizer.SparseVector` or a
scipy CSR matrix.  Every family exposes a real-valued decision value whose
sign gives the label (exactly 0 means label 0).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np
import scipy.sparse as sp

from ..errors import DomainError, NumericError
from ..vectorizer import to_csr
from . import knn, linear, mlp, naive_bayes, trees


class Family(str, enum.Enum):
    DecisionTree = "DecisionTree"
    KNN = "KNN"
    BernoulliNB = "BernoulliNB"
    MultinomialNB = "MultinomialNB"
    RandomForest = "RandomForest"
    LogisticRegression = "LogisticRegression"
    LinearSVC = "LinearSVC"
    MLP = "MLP"

    def __str__(self) -> str:
        return self.value


# Canonical family order (enum order).
FAMILIES = tuple(Family)

DISPLAY_NAMES = {
    Family.DecisionTree: "Decision Tree",
    Family.KNN: "K-Nearest Neighbors",
    Family.BernoulliNB: "Bernoulli Naive Bayes",
    Family.MLP: "Multi-Layer Perceptron",
    Family.MultinomialNB: "Multinomial Naive Bayes",
    Family.RandomForest: "Random Forest",
    Family.LogisticRegression: "Logistic Regression",
    Family.LinearSVC: "Linear SVC",
}
# Table order of the comparison report.
REPORT_ORDER = (
    Family.DecisionTree,
    Family.KNN,
    Family.BernoulliNB,
    Family.MLP,
    Family.MultinomialNB,
    Family.RandomForest,
    Family.LogisticRegression,
    Family.LinearSVC,
)


def _positive(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and x > 0


def _pos_int(x):
    return isinstance(x, int) and not isinstance(x, bool) and x >= 1


def _depth(x):
    return x is None or _pos_int(x)


# family -> {name: (default, validator)}
HYPERPARAMETERS: dict[Family, dict[str, tuple[Any, Any]]] = {
    Family.MultinomialNB: {"alpha": (1.0, _positive)},
    Family.BernoulliNB: {"alpha": (1.0, _positive)},
    Family.LinearSVC: {"C": (1.0, _positive), "epochs": (100, _pos_int)},
    Family.LogisticRegression: {
        "C": (1.0, _positive),
        "max_iter": (1000, _pos_int),
        "tol": (1e-6, _positive),
    },
    Family.DecisionTree: {"max_depth": (None, _depth), "min_samples_split": (2, _pos_int)},
    Family.RandomForest: {
        "n_estimators": (100, _pos_int),
        "max_depth": (50, _depth),
        "min_samples_split": (2, _pos_int),
    },
    Family.KNN: {"k": (5, _pos_int)},
    Family.MLP: {
        "hidden_size": (64, _pos_int),
        "learning_rate": (0.1, _positive),
        "epochs": (200, _pos_int),
    },
}

_C_GRID = [0.01, 0.1, 1.0, 10.0]
DEFAULT_GRIDS: dict[Family, dict[str, list]] = {
    Family.MultinomialNB: {"alpha": [0.1, 0.5, 1.0]},
    Family.BernoulliNB: {"alpha": [0.1, 0.5, 1.0]},
    Family.LinearSVC: {"C": list(_C_GRID)},
    Family.LogisticRegression: {"C": list(_C_GRID)},
    Family.DecisionTree: {"max_depth": list(range(5, 101, 5))},
    Family.RandomForest: {"n_estimators": [50, 100, 200]},
    Family.KNN: {"k": [1, 3, 5, 7, 9, 11]},
    Family.MLP: {"hidden_size": [32, 64, 128]},
}


def resolve_family(name) -> Family:
    if isinstance(name, Family):
        return name
    for fam in Family:
        if fam.value.lower() == str(name).strip().lower():
            return fam
    raise DomainError(f"unknown family {name!r}; expected one of {', '.join(f.value for f in Family)}")


@dataclass(frozen=True)
class LearnerSpec:
    family: Family
    hyperparameters: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        fam = resolve_family(self.family)
        schema = HYPERPARAMETERS[fam]
        unknown = set(self.hyperparameters) - set(schema)
        if unknown:
            raise DomainError(f"{fam}: unknown hyperparameter(s) {sorted(unknown)}; valid: {sorted(schema)}")
        full = {}
        for name, (default, valid) in schema.items():
            value = self.hyperparameters.get(name, default)
            # JSON grids may spell integers as 10.0
            if isinstance(value, float) and value.is_integer() and not valid(value) and valid(int(value)):
                value = int(value)
            if not valid(value):
                raise DomainError(f"{fam}: invalid value {value!r} for {name}")
            full[name] = value
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "hyperparameters", full)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "hyperparameters": dict(self.hyperparameters), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: Mapping) -> "LearnerSpec":
        return cls(resolve_family(d["family"]), dict(d["hyperparameters"]), int(d["seed"]))


@dataclass(frozen=True)
class TrainedModel:
    """A fitted learner.  ``payload`` holds numpy arrays (trees: a list of dicts)."""

    spec: LearnerSpec
    dimension: int
    payload: Any

    @property
    def family(self) -> Family:
        return self.spec.family


def _check_xy(X, y):
    y = np.asarray(y, dtype=np.int64)
    if X.shape[0] == 0:
        raise DomainError("cannot fit on an empty training set")
    if X.shape[0] != y.size:
        raise DomainError(f"{X.shape[0]} rows but {y.size} labels")
    if not np.isin(y, (0, 1)).all():
        raise DomainError("labels must be 0 or 1")
    if y.min() == y.max():
        raise DomainError("training data must contain both labels")
    return y


def fit(spec: LearnerSpec, X, y) -> TrainedModel:
    X = to_csr(X)
    y = _check_xy(X, y)
    hp = spec.hyperparameters
    fam = spec.family
    if fam is Family.MultinomialNB:
        payload = naive_bayes.fit_multinomial(X, y, hp["alpha"])
    elif fam is Family.BernoulliNB:
        payload = naive_bayes.fit_bernoulli(X, y, hp["alpha"])
    elif fam is Family.LinearSVC:
        payload = linear.fit_pegasos(X, y, hp["C"], spec.seed, hp["epochs"])
    elif fam is Family.LogisticRegression:
        payload = linear.fit_logistic(X, y, hp["C"], hp["max_iter"], hp["tol"])
    elif fam is Family.DecisionTree:
        payload = trees.fit_decision_tree(X, y, hp["max_depth"], hp["min_samples_split"])
    elif fam is Family.RandomForest:
        payload = trees.fit_random_forest(
            X, y, hp["n_estimators"], spec.seed, hp["max_depth"], hp["min_samples_split"]
        )
    elif fam is Family.KNN:
        payload = {"X": sp.csr_matrix(X, copy=True), "y": y.copy()}
    elif fam is Family.MLP:
        payload = mlp.fit_mlp(X, y, hp["hidden_size"], spec.seed, hp["learning_rate"], hp["epochs"])
    else:  # pragma: no cover
        raise DomainError(f"unsupported family {fam}")
    model = TrainedModel(spec, X.shape[1], payload)
    _check_finite(model)
    return model


def _check_finite(model: TrainedModel):
    payload = model.payload
    arrays = (
        [a for tree in payload for a in tree.values()]
        if isinstance(payload, list)
        else [a for a in payload.values() if isinstance(a, np.ndarray)]
    )
    for a in arrays:
        if a.dtype.kind == "f" and not np.isfinite(a).all():
            raise NumericError(f"{model.family}: fitted parameters contain non-finite values")


def decision_values(model: TrainedModel, X) -> np.ndarray:
    X = to_csr(X, model.dimension) if not sp.issparse(X) else sp.csr_matrix(X)
    if X.shape[0] == 0:
        return np.empty(0)
    if X.shape[1] != model.dimension:
        raise DomainError(f"vector dimension {X.shape[1]} does not match model dimension {model.dimension}")
    fam, payload, hp = model.family, model.payload, model.spec.hyperparameters
    if fam is Family.MultinomialNB:
        return naive_bayes.log_odds(naive_bayes.multinomial_joint_log_likelihood(payload, X))
    if fam is Family.BernoulliNB:
        return naive_bayes.log_odds(naive_bayes.bernoulli_joint_log_likelihood(payload, X))
    if fam in (Family.LinearSVC, Family.LogisticRegression):
        return linear.linear_decision(payload, X)
    if fam is Family.DecisionTree:
        return trees.decision_tree_decision(payload, X)
    if fam is Family.RandomForest:
        return trees.random_forest_decision(payload, X)
    if fam is Family.KNN:
        return knn.knn_decision(payload["X"], payload["y"], hp["k"], X)
    if fam is Family.MLP:
        return mlp.mlp_decision(payload, X)
    raise DomainError(f"unsupported family {fam}")  # pragma: no cover


def decision_function(model: TrainedModel, x) -> float:
    """Decision value for a single vector."""
    return float(decision_values(model, [x])[0])


def predict(model: TrainedModel, X) -> list[int]:
    return [int(v > 0) for v in decision_values(model, X)]


__all__ = [
    "DEFAULT_GRIDS",
    "DISPLAY_NAMES",
    "FAMILIES",
    "Family",
    "HYPERPARAMETERS",
    "LearnerSpec",
    "REPORT_ORDER",
    "TrainedModel",
    "decision_function",
    "decision_values",
    "fit",
    "predict",
    "resolve_family",
]
