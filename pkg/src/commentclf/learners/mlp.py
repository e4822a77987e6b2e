"""One-hidden-layer perceptron: ReLU hidden units, sigmoid output, mean BCE loss."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..errors import NumericError
from ..rng import SplitMix64


def init_params(n_features: int, hidden: int, seed: int) -> dict:
    """Glorot-uniform weights drawn from SplitMix64, zero biases.

    The first layer is filled row-major, then the output weights.
    """
    rng = SplitMix64(seed)
    lim1 = np.sqrt(6.0 / (n_features + hidden))
    lim2 = np.sqrt(6.0 / (hidden + 1))
    W1 = (2.0 * rng.uniform_array(n_features * hidden) - 1.0).reshape(n_features, hidden) * lim1
    w2 = (2.0 * rng.uniform_array(hidden) - 1.0) * lim2
    return {"W1": W1, "b1": np.zeros(hidden), "w2": w2, "b2": np.zeros(1)}


def forward(params: dict, X):
    pre = np.asarray(X @ params["W1"]) + params["b1"]
    h = np.maximum(pre, 0.0)
    z = h @ params["w2"] + params["b2"][0]
    return pre, h, z


def loss_and_grad(params: dict, X, y: np.ndarray):
    """Mean binary cross-entropy and backpropagated gradients (same keys as params)."""
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    pre, h, z = forward(params, X)
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    dz = (np.exp(-np.logaddexp(0.0, -z)) - y) / n
    dh = np.outer(dz, params["w2"]) * (pre > 0)
    grads = {
        "W1": np.asarray(X.T @ dh),
        "b1": dh.sum(axis=0),
        "w2": h.T @ dz,
        "b2": np.array([dz.sum()]),
    }
    return loss, grads


def fit_mlp(X: sp.csr_matrix, y: np.ndarray, hidden: int, seed: int,
            learning_rate: float = 0.1, epochs: int = 200) -> dict:
    params = init_params(X.shape[1], hidden, seed)
    history = []
    for epoch in range(1, epochs + 1):
        loss, grads = loss_and_grad(params, X, y)
        if not np.isfinite(loss):
            raise NumericError(f"MLP: non-finite loss at epoch {epoch}")
        history.append(loss)
        for key in params:
            params[key] = params[key] - learning_rate * grads[key]
    params["loss_history"] = np.asarray(history)
    return params


def mlp_decision(params: dict, X) -> np.ndarray:
    return forward(params, X)[2]
