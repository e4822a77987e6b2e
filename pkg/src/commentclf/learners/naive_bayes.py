"""Multinomial and Bernoulli naive Bayes in log space."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def _class_log_prior(y: np.ndarray) -> np.ndarray:
    counts = np.bincount(y, minlength=2).astype(float)
    return np.log(counts / counts.sum())


def fit_multinomial(X: sp.csr_matrix, y: np.ndarray, alpha: float) -> dict:
    """Per-class term log-probabilities ``log((count + a) / (total + a * |V|))``.

    TF-IDF weights are used as fractional counts.
    """
    p = X.shape[1]
    counts = np.vstack([np.asarray(X[y == c].sum(axis=0)).ravel() for c in (0, 1)])
    smoothed = counts + alpha
    log_prob = np.log(smoothed) - np.log(smoothed.sum(axis=1, keepdims=True))
    assert log_prob.shape == (2, p)
    return {"class_log_prior": _class_log_prior(y), "feature_log_prob": log_prob}


def multinomial_joint_log_likelihood(params: dict, X: sp.csr_matrix) -> np.ndarray:
    return np.asarray(X @ params["feature_log_prob"].T) + params["class_log_prior"]


def fit_bernoulli(X: sp.csr_matrix, y: np.ndarray, alpha: float) -> dict:
    """Per-class presence probabilities ``(docs with term + a) / (docs + 2a)``."""
    B = (X > 0).astype(np.float64)
    docs = np.bincount(y, minlength=2).astype(float)
    present = np.vstack([np.asarray(B[y == c].sum(axis=0)).ravel() for c in (0, 1)])
    theta = (present + alpha) / (docs[:, None] + 2 * alpha)
    return {
        "class_log_prior": _class_log_prior(y),
        "feature_log_prob": np.log(theta),
        "feature_log_neg_prob": np.log1p(-theta),
    }


def bernoulli_joint_log_likelihood(params: dict, X: sp.csr_matrix) -> np.ndarray:
    B = sp.csr_matrix((X > 0).astype(np.float64))
    lp, lnp = params["feature_log_prob"], params["feature_log_neg_prob"]
    # sum over absent terms of log(1 - theta) plus presence corrections
    jll = np.asarray(B @ (lp - lnp).T) + lnp.sum(axis=1)
    return jll + params["class_log_prior"]


def log_odds(jll: np.ndarray) -> np.ndarray:
    """log P(1|x) - log P(0|x); the evidence term cancels."""
    return jll[:, 1] - jll[:, 0]
