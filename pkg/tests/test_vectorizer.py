import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from commentclf import vectorizer
from commentclf.errors import DomainError
from commentclf.vectorizer import SparseVector, TfidfModel, from_csr, to_csr


def test_single_document_corpus():
    m = vectorizer.fit(["EMT"])
    assert m.dimension == 1 and m.idf == (1.0,)


def test_token_in_every_document_has_idf_one():
    m = vectorizer.fit(["a b", "b c", "b"])
    assert m.idf[m.vocabulary.index("b")] == 1.0
    assert all(v >= 1.0 for v in m.idf)


def test_empty_corpus_raises():
    with pytest.raises(DomainError):
        vectorizer.fit([])


def test_oov_and_singleton():
    m = vectorizer.fit(["run test", "run code"])
    zero = m.transform("nothing known here")
    assert zero.dimension == 3 and len(zero) == 0
    one = m.transform("code")
    assert one.indices.tolist() == [2] and one.values.tolist() == [1.0]


def test_transform_does_not_change_model():
    m = vectorizer.fit(["run test", "run code"])
    before = m.to_dict()
    m.transform_many(["brand new words", "run"])
    assert m.to_dict() == before
    assert TfidfModel.from_dict(before) == m


def test_sparse_vector_rejects_unsorted_indices():
    with pytest.raises(ValueError):
        SparseVector([2, 1], [1.0, 1.0], 3)
    with pytest.raises(ValueError):
        SparseVector([3], [1.0], 3)


def test_csr_round_trip_and_dimension_check():
    vs = [SparseVector([0, 2], [0.6, 0.8], 4), SparseVector([], [], 4)]
    assert from_csr(to_csr(vs)) == vs
    with pytest.raises(DomainError):
        to_csr([SparseVector([0], [1.0], 4), SparseVector([0], [1.0], 5)])


words = st.sampled_from(["alpha", "beta", "gamma", "delta", "eps"])
docs = st.lists(words, min_size=0, max_size=6).map(" ".join)


@given(st.lists(docs, min_size=1, max_size=6), docs)
def test_unit_or_zero_norm_and_shared_dimension(corpus, query):
    m = vectorizer.fit(corpus)
    for v in m.transform_many(corpus + [query]):
        assert v.dimension == m.dimension
        assert math.isclose(v.norm(), 1.0, abs_tol=1e-9) or v.norm() == 0.0
        assert np.all(np.diff(v.indices) > 0)
        assert np.all(v.values != 0)
