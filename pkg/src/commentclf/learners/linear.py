"""L2-regularised linear classifiers: logistic regression and a Pegasos SVM.

Both minimise ``(lam/2)||w||^2 + (1/n) sum loss(y_i (w.x_i + b))`` with
labels mapped to {-1, +1}, ``lam = 1 / (C n)`` and an unregularised bias.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..errors import NumericError
from ..rng import SplitMix64


def _signed(y: np.ndarray) -> np.ndarray:
    return 2.0 * np.asarray(y, dtype=np.float64) - 1.0


def _sigmoid(z):
    return np.exp(-np.logaddexp(0.0, -z))


def logistic_loss_grad(w: np.ndarray, b: float, X, y: np.ndarray, lam: float):
    """Regularised mean log-loss and its gradient with respect to (w, b)."""
    s = _signed(y)
    z = X @ w + b
    loss = 0.5 * lam * (w @ w) + np.logaddexp(0.0, -s * z).mean()
    # d/dz log(1 + exp(-s z)) = -s * sigmoid(-s z)
    g = -s * _sigmoid(-s * z) / X.shape[0]
    grad_w = lam * w + X.T @ g
    return float(loss), np.asarray(grad_w).ravel(), float(g.sum())


def fit_logistic(X: sp.csr_matrix, y: np.ndarray, C: float, max_iter: int = 1000,
                 tol: float = 1e-6) -> dict:
    """Full-batch gradient descent with Armijo backtracking.

    Stops once an accepted step lowers the loss by less than ``tol``.
    """
    n, p = X.shape
    lam = 1.0 / (C * n)
    w, b = np.zeros(p), 0.0
    loss, gw, gb = logistic_loss_grad(w, b, X, y, lam)
    step = 1.0
    history = [loss]
    for it in range(1, max_iter + 1):
        gnorm2 = gw @ gw + gb * gb
        if gnorm2 == 0.0:
            break
        step *= 2.0
        while True:
            w_new, b_new = w - step * gw, b - step * gb
            new_loss, ngw, ngb = logistic_loss_grad(w_new, b_new, X, y, lam)
            if new_loss <= loss - 1e-4 * step * gnorm2 or step < 1e-12:
                break
            step *= 0.5
        if not np.isfinite(new_loss):
            raise NumericError(f"LogisticRegression: non-finite loss at iteration {it}")
        delta = loss - new_loss
        w, b, loss, gw, gb = w_new, b_new, new_loss, ngw, ngb
        history.append(loss)
        if delta < tol:
            break
    return {"coef": w, "intercept": np.array([b]), "loss_history": np.asarray(history)}


def svm_objective(w: np.ndarray, b: float, X, y: np.ndarray, lam: float) -> float:
    s = _signed(y)
    margins = s * (X @ w + b)
    return float(0.5 * lam * (w @ w) + np.maximum(0.0, 1.0 - margins).mean())


def fit_pegasos(X: sp.csr_matrix, y: np.ndarray, C: float, seed: int, epochs: int = 100) -> dict:
    """Pegasos with step ``1/(lam t)``, averaging iterates over the final half.

    With that step size the iterate has the closed form
    ``w_{t+1} = G_t / (lam t)`` where ``G_t`` is the running sum of
    ``y_i x_i`` over margin violations, so only ``G`` is stored.  The
    average of ``w`` over the final half is accumulated lazily per
    coordinate using harmonic-number differences.
    """
    X = sp.csr_matrix(X)
    n, p = X.shape
    lam = 1.0 / (C * n)
    s = _signed(y)
    rows = [(X.indices[a:b].copy(), X.data[a:b].copy()) for a, b in zip(X.indptr[:-1], X.indptr[1:])]

    T = epochs * n
    first_avg_epoch = epochs // 2
    t0 = first_avg_epoch * n + 1
    harmonic = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, T + 1))])

    G = np.zeros(p)
    acc = np.zeros(p)
    last = np.full(p, t0, dtype=np.int64)
    b = 0.0
    b_acc = 0.0
    objective = []
    rng = SplitMix64(seed)
    t = 0
    for epoch in range(epochs):
        order = list(range(n))
        rng.shuffle(order)
        averaging = epoch >= first_avg_epoch
        for i in order:
            t += 1
            idx, val = rows[i]
            scale = lam * (t - 1) if t > 1 else 1.0
            margin = s[i] * ((G[idx] @ val) / scale + b)
            if margin < 1.0:
                if averaging:
                    acc[idx] += G[idx] * (harmonic[t - 1] - harmonic[last[idx] - 1])
                    last[idx] = t
                G[idx] += s[i] * val
                b += s[i] / (lam * t)
            if averaging:
                b_acc += b
        if averaging:
            k = t - t0 + 1
            w_avg = (acc + G * (harmonic[t] - harmonic[last - 1])) / (lam * k)
            obj = svm_objective(w_avg, b_acc / k, X, y, lam)
            if not np.isfinite(obj):
                raise NumericError(f"LinearSVC: non-finite objective at epoch {epoch + 1}")
            objective.append(obj)

    k = T - t0 + 1
    w_avg = (acc + G * (harmonic[T] - harmonic[last - 1])) / (lam * k)
    return {"coef": w_avg, "intercept": np.array([b_acc / k]), "objective_history": np.asarray(objective)}


def linear_decision(params: dict, X) -> np.ndarray:
    return np.asarray(X @ params["coef"]).ravel() + params["intercept"][0]
