"""Gini decision trees and bootstrap random forests on sparse features.

Split search at a node works on the node's non-zero entries only: every
feature present in the node gets one extra pseudo-entry standing for its
block of implicit zeros, entries are sorted by (feature, value), and a
cumulative sum over the sorted groups gives the left/right label counts
for every candidate threshold at once.
"""
from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp

from ..rng import SplitMix64, derive_seed

# Impurity decreases closer than this are treated as ties.
TIE_TOL = 1e-12


def _gather(X: sp.csr_matrix, rows: np.ndarray):
    """Positions into ``X.data`` for the given rows, and the local row of each."""
    starts = X.indptr[rows]
    lens = X.indptr[rows + 1] - starts
    local = np.repeat(np.arange(rows.size), lens)
    offsets = np.arange(local.size) - np.repeat(np.cumsum(lens) - lens, lens)
    return np.repeat(starts, lens) + offsets, local


def _node_entries(X: sp.csr_matrix, rows: np.ndarray, y: np.ndarray):
    pos, local = _gather(X, rows)
    return X.indices[pos].astype(np.int64), X.data[pos], y[rows][local], local


def _valid_features(cols, vals, n):
    """Features that are not constant over the node's n samples."""
    feats, start, nnz = np.unique(cols, return_index=True, return_counts=True)
    if feats.size == 0:
        return feats
    order = np.argsort(cols, kind="stable")
    sv = vals[order]
    # max - min per feature over stored (non-zero) values
    vmax = np.maximum.reduceat(sv, start)
    vmin = np.minimum.reduceat(sv, start)
    ok = (nnz < n) | (vmax > vmin)
    return feats[ok]


def best_split(cols, vals, labels, n: int, n_pos: int, allowed=None):
    """Best (feature, threshold, decrease) for a node, or None if no split exists.

    ``cols``/``vals``/``labels`` describe the node's stored entries.  A
    candidate sends ``x[f] <= threshold`` left.  Ties on impurity decrease
    go to the lowest feature index, then the lowest threshold.
    """
    if allowed is not None:
        keep = np.zeros(int(cols.max(initial=0)) + 1 if cols.size else 0, dtype=bool)
        keep[allowed[allowed < keep.size]] = True
        keep = keep[cols]
        cols, vals, labels = cols[keep], vals[keep], labels[keep]
    if cols.size == 0:
        return None
    feats, nnz = np.unique(cols, return_counts=True)
    pos_nz = np.bincount(np.searchsorted(feats, cols), weights=labels, minlength=feats.size)
    zero_n = n - nnz
    has_zero = zero_n > 0

    all_c = np.concatenate([cols, feats[has_zero]])
    all_v = np.concatenate([vals, np.zeros(int(has_zero.sum()))])
    all_w = np.concatenate([np.ones(cols.size), zero_n[has_zero].astype(float)])
    all_p = np.concatenate([labels.astype(float), (n_pos - pos_nz)[has_zero]])

    order = np.lexsort((all_v, all_c))
    c, v, w, p = all_c[order], all_v[order], all_w[order], all_p[order]
    new_group = np.ones(c.size, dtype=bool)
    new_group[1:] = (c[1:] != c[:-1]) | (v[1:] != v[:-1])
    starts = np.flatnonzero(new_group)
    gc, gv = c[starts], v[starts]
    gw = np.add.reduceat(w, starts)
    gp = np.add.reduceat(p, starts)

    cw, cp = np.cumsum(gw), np.cumsum(gp)
    feat_start = np.ones(gc.size, dtype=bool)
    feat_start[1:] = gc[1:] != gc[:-1]
    first = np.flatnonzero(feat_start)
    owner = np.cumsum(feat_start) - 1
    base_w = (cw - gw)[first][owner]
    base_p = (cp - gp)[first][owner]
    left_w = cw - base_w
    left_p = cp - base_p

    cand = np.zeros(gc.size, dtype=bool)
    cand[:-1] = gc[:-1] == gc[1:]
    if not cand.any():
        return None
    idx = np.flatnonzero(cand)
    nl, pl = left_w[idx], left_p[idx]
    nr, pr = n - nl, n_pos - pl
    purity = (pl**2 + (nl - pl) ** 2) / nl + (pr**2 + (nr - pr) ** 2) / nr
    parent_gini = 1.0 - (n_pos**2 + (n - n_pos) ** 2) / n**2
    decrease = parent_gini - (1.0 - purity / n)
    j = np.flatnonzero(decrease >= decrease.max() - TIE_TOL)[0]
    k = idx[j]
    return int(gc[k]), float((gv[k] + gv[k + 1]) / 2.0), float(decrease[j])


def grow_tree(X: sp.csr_matrix, y: np.ndarray, rows: np.ndarray, max_depth=None,
              min_samples_split: int = 2, max_features: int | None = None,
              rng: SplitMix64 | None = None) -> dict:
    """Grow one tree on ``X[rows]``; returns parallel node arrays."""
    feature, threshold, left, right, value, count = [], [], [], [], [], []

    def new_node(idx):
        ys = y[idx]
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(float(ys.mean()))
        count.append(int(idx.size))
        return len(feature) - 1

    root = new_node(rows)
    stack = [(root, rows, 0)]
    while stack:
        node, idx, depth = stack.pop()
        n = idx.size
        n_pos = int(y[idx].sum())
        if n < min_samples_split or n_pos in (0, n):
            continue
        if max_depth is not None and depth >= max_depth:
            continue
        cols, vals, labels, local = _node_entries(X, idx, y)
        allowed = None
        if max_features is not None:
            valid = _valid_features(cols, vals, n)
            if valid.size == 0:
                continue
            if valid.size > max_features:
                allowed = np.sort(valid[rng.choice(valid.size, max_features)])
        split = best_split(cols, vals, labels, n, n_pos, allowed)
        if split is None:
            continue
        f, thr, _ = split
        xf = np.zeros(n)
        hit = cols == f
        xf[local[hit]] = vals[hit]
        go_left = xf <= thr
        li, ri = new_node(idx[go_left]), new_node(idx[~go_left])
        feature[node], threshold[node], left[node], right[node] = f, thr, li, ri
        # right first on the stack so the left subtree gets lower node ids
        stack.append((ri, idx[~go_left], depth + 1))
        stack.append((li, idx[go_left], depth + 1))

    return {
        "feature": np.asarray(feature, dtype=np.int64),
        "threshold": np.asarray(threshold, dtype=np.float64),
        "left": np.asarray(left, dtype=np.int64),
        "right": np.asarray(right, dtype=np.int64),
        "value": np.asarray(value, dtype=np.float64),
        "count": np.asarray(count, dtype=np.int64),
    }


def _lookup(X: sp.csr_matrix, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """``X[rows[i], cols[i]]`` for sorted-index CSR ``X``."""
    pos, local = _gather(X, rows)
    p = X.shape[1]
    keys = local * p + X.indices[pos]
    want = np.arange(rows.size) * p + cols
    at = np.searchsorted(keys, want)
    at_ok = np.minimum(at, max(keys.size - 1, 0))
    found = (at < keys.size) & (keys[at_ok] == want) if keys.size else np.zeros(rows.size, bool)
    out = np.zeros(rows.size)
    out[found] = X.data[pos[at_ok[found]]]
    return out


def apply_tree(tree: dict, X: sp.csr_matrix) -> np.ndarray:
    """Leaf index reached by each row of ``X``."""
    X = sp.csr_matrix(X)
    if not X.has_sorted_indices:
        X = X.sorted_indices()
    node = np.zeros(X.shape[0], dtype=np.int64)
    feature, threshold = tree["feature"], tree["threshold"]
    active = np.flatnonzero(feature[node] >= 0)
    while active.size:
        at = node[active]
        x = _lookup(X, active, feature[at])
        node[active] = np.where(x <= threshold[at], tree["left"][at], tree["right"][at])
        active = active[feature[node[active]] >= 0]
    return node


def tree_votes(tree: dict, X) -> np.ndarray:
    """1 where the reached leaf has a strict majority of positives, else 0."""
    return (tree["value"][apply_tree(tree, X)] > 0.5).astype(np.int64)


def fit_decision_tree(X: sp.csr_matrix, y: np.ndarray, max_depth=None, min_samples_split: int = 2) -> dict:
    X = sp.csr_matrix(X, copy=True)
    X.eliminate_zeros()
    X.sort_indices()
    return grow_tree(X, y, np.arange(X.shape[0]), max_depth, min_samples_split)


def decision_tree_decision(tree: dict, X) -> np.ndarray:
    # leaf positive fraction mapped to [-1, 1]; exact ties land on 0 -> label 0
    return 2.0 * tree["value"][apply_tree(tree, X)] - 1.0


def fit_random_forest(X: sp.csr_matrix, y: np.ndarray, n_estimators: int, seed: int,
                      max_depth=50, min_samples_split: int = 2) -> list[dict]:
    X = sp.csr_matrix(X, copy=True)
    X.eliminate_zeros()
    X.sort_indices()
    n, p = X.shape
    m = max(1, math.ceil(math.sqrt(p)))
    trees = []
    for b in range(n_estimators):
        rng = SplitMix64(derive_seed(seed, "tree", str(b)))
        rows = rng.integers(n, n)
        trees.append(grow_tree(X, y, rows, max_depth, min_samples_split, max_features=m, rng=rng))
    return trees


def random_forest_decision(trees: list[dict], X) -> np.ndarray:
    votes = np.zeros(X.shape[0])
    for tree in trees:
        votes += 2 * tree_votes(tree, X) - 1
    return votes / len(trees)
