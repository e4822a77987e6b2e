"""TF-IDF features over a vocabulary learned from training sentences.

Weighting: raw term count times the smoothed inverse document frequency
``ln((1 + N) / (1 + df)) + 1``, followed by L2 normalisation of each
document vector.  Tokens are whitespace-separated; the text is expected to
be normalised already.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import DomainError


class SparseVector:
    """One document as strictly increasing (index, value) pairs."""

    __slots__ = ("indices", "values", "dimension")

    def __init__(self, indices, values, dimension: int):
        idx = np.asarray(indices, dtype=np.int64)
        val = np.asarray(values, dtype=np.float64)
        if idx.shape != val.shape or idx.ndim != 1:
            raise DomainError("indices and values must be 1-d arrays of equal length")
        if idx.size and (np.any(np.diff(idx) <= 0) or idx[0] < 0 or idx[-1] >= dimension):
            raise DomainError("indices must be strictly increasing and below the dimension")
        idx.setflags(write=False)
        val.setflags(write=False)
        self.indices = idx
        self.values = val
        self.dimension = int(dimension)

    @classmethod
    def from_dense(cls, dense) -> "SparseVector":
        dense = np.asarray(dense, dtype=np.float64)
        nz = np.flatnonzero(dense)
        return cls(nz, dense[nz], dense.shape[0])

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dimension)
        out[self.indices] = self.values
        return out

    def dot(self, other: "SparseVector") -> float:
        common, ia, ib = np.intersect1d(self.indices, other.indices, assume_unique=True, return_indices=True)
        return float(self.values[ia] @ other.values[ib])

    def norm(self) -> float:
        return float(np.sqrt(self.values @ self.values))

    def __len__(self) -> int:
        return self.indices.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.dimension, self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{i}:{v:.4g}" for i, v in zip(self.indices, self.values))
        return f"SparseVector({{{pairs}}}, dim={self.dimension})"


def to_csr(X: Sequence[SparseVector] | sp.spmatrix, dimension: int | None = None) -> sp.csr_matrix:
    """Stack vectors into a CSR matrix; all must share one dimension."""
    if sp.issparse(X):
        return sp.csr_matrix(X, dtype=np.float64)
    X = list(X)
    if not X:
        return sp.csr_matrix((0, dimension or 0))
    dims = {v.dimension for v in X}
    if len(dims) != 1:
        raise DomainError(f"vectors have mixed dimensions {sorted(dims)}")
    dim = dims.pop()
    if dimension is not None and dim != dimension:
        raise DomainError(f"vector dimension {dim} does not match expected {dimension}")
    indptr = np.zeros(len(X) + 1, dtype=np.int64)
    np.cumsum([len(v) for v in X], out=indptr[1:])
    indices = np.concatenate([v.indices for v in X]) if indptr[-1] else np.empty(0, np.int64)
    data = np.concatenate([v.values for v in X]) if indptr[-1] else np.empty(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(X), dim))


def from_csr(M: sp.csr_matrix) -> list[SparseVector]:
    M = sp.csr_matrix(M)
    M.sort_indices()
    return [
        SparseVector(M.indices[a:b], M.data[a:b], M.shape[1])
        for a, b in zip(M.indptr[:-1], M.indptr[1:])
    ]


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise DomainError("vocabulary terms must be unique")
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.terms)})

    @property
    def size(self) -> int:
        return len(self.terms)

    def index(self, term: str) -> int | None:
        return self._index.get(term)

    def __contains__(self, term: str) -> bool:
        return term in self._index

    def as_dict(self) -> dict[str, int]:
        return dict(self._index)


@dataclass(frozen=True)
class TfidfModel:
    vocabulary: Vocabulary
    idf: tuple[float, ...]
    doc_count: int

    def __post_init__(self):
        if len(self.idf) != self.vocabulary.size:
            raise DomainError("idf length must equal vocabulary size")

    @property
    def dimension(self) -> int:
        return self.vocabulary.size

    def transform(self, sentence: str) -> SparseVector:
        return transform(self, sentence)

    def transform_many(self, sentences: Iterable[str]) -> list[SparseVector]:
        return [transform(self, s) for s in sentences]

    def to_dict(self) -> dict:
        return {"vocabulary": list(self.vocabulary.terms), "idf": list(self.idf), "doc_count": self.doc_count}

    @classmethod
    def from_dict(cls, d) -> "TfidfModel":
        return cls(Vocabulary(tuple(d["vocabulary"])), tuple(float(x) for x in d["idf"]), int(d["doc_count"]))


def fit(train_sentences: Sequence[str]) -> TfidfModel:
    if not train_sentences:
        raise DomainError("cannot fit TF-IDF on an empty corpus")
    terms: dict[str, int] = {}
    df: Counter = Counter()
    for sentence in train_sentences:
        tokens = sentence.split()
        for tok in tokens:
            if tok not in terms:
                terms[tok] = len(terms)
        df.update(set(tokens))
    n = len(train_sentences)
    idf = tuple(math.log((1 + n) / (1 + df[t])) + 1.0 for t in terms)
    return TfidfModel(Vocabulary(tuple(terms)), idf, n)


def transform(model: TfidfModel, sentence: str) -> SparseVector:
    counts: Counter = Counter()
    for tok in sentence.split():
        j = model.vocabulary.index(tok)
        if j is not None:
            counts[j] += 1
    if not counts:
        return SparseVector([], [], model.dimension)
    idx = np.array(sorted(counts), dtype=np.int64)
    val = np.array([counts[j] * model.idf[j] for j in idx])
    val /= np.sqrt(val @ val)
    return SparseVector(idx, val, model.dimension)


def fit_transform(train_sentences: Sequence[str]) -> tuple[TfidfModel, list[SparseVector]]:
    model = fit(train_sentences)
    return model, model.transform_many(train_sentences)
