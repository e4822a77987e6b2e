"""k-nearest neighbours under cosine distance."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def _unit_rows(X: sp.csr_matrix) -> sp.csr_matrix:
    X = sp.csr_matrix(X, dtype=np.float64)
    norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
    norms[norms == 0] = 1.0
    return sp.csr_matrix(sp.diags(1.0 / norms) @ X)


def knn_decision(train: sp.csr_matrix, train_labels: np.ndarray, k: int, X: sp.csr_matrix,
                 batch: int = 512) -> np.ndarray:
    """Vote balance in [-1, 1] among the k nearest training rows.

    Neighbours are ranked by cosine similarity, equal distances going to the
    lower training index.  An exactly split vote is broken by the nearest
    neighbour's label and reported as half a vote (+-1/(2k)) in its favour.
    """
    k = min(k, train.shape[0])
    T = _unit_rows(train)
    Q = _unit_rows(X)
    out = np.empty(Q.shape[0])
    signs = 2.0 * train_labels - 1.0
    for start in range(0, Q.shape[0], batch):
        sims = (Q[start:start + batch] @ T.T).toarray()
        nearest = np.argsort(-sims, axis=1, kind="stable")[:, :k]
        votes = signs[nearest].sum(axis=1)
        tie = votes == 0
        votes[tie] = 0.5 * signs[nearest[tie, 0]]
        out[start:start + batch] = votes / k
    return out
