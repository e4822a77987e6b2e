import numpy as np
import pytest
import scipy.sparse as sp

from commentclf import learners
from commentclf.errors import DomainError
from commentclf.learners import Family, LearnerSpec
from commentclf.tuner import CvResult, ParamGrid, grid_search, kfold_indices, select_best


def test_singleton_folds():
    folds = kfold_indices(10, 10, 3)
    assert [len(f) for f in folds] == [1] * 10
    assert sorted(np.concatenate(folds).tolist()) == list(range(10))


def test_remainder_goes_to_first_folds():
    folds = kfold_indices(23, 10, 3)
    assert [len(f) for f in folds] == [3, 3, 3] + [2] * 7
    assert len(set(np.concatenate(folds).tolist())) == 23


def test_folds_deterministic():
    a, b = kfold_indices(57, 10, 8), kfold_indices(57, 10, 8)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_too_few_rows():
    with pytest.raises(DomainError):
        kfold_indices(5, 10, 0)


def test_grid_product_order():
    g = ParamGrid(Family.MLP, {"hidden_size": [8, 16], "learning_rate": [0.1, 0.5]})
    assert g.cells() == [{"hidden_size": 8, "learning_rate": 0.1}, {"hidden_size": 8, "learning_rate": 0.5},
                         {"hidden_size": 16, "learning_rate": 0.1}, {"hidden_size": 16, "learning_rate": 0.5}]
    with pytest.raises(DomainError):
        ParamGrid(Family.MLP, {"depth": [1]})
    with pytest.raises(DomainError):
        ParamGrid(Family.MLP, {"hidden_size": []})


def test_tie_goes_to_first_cell():
    spec = LearnerSpec(Family.KNN, {}, 0)
    results = [CvResult(spec, (0.5, 0.7)), CvResult(spec, (0.6, 0.6)), CvResult(spec, (0.7, 0.5))]
    assert select_best(results) == 0


def test_single_cell_grid_is_plain_fit():
    rng = np.random.default_rng(0)
    X = sp.random(30, 6, density=0.5, random_state=rng, format="csr")
    y = np.arange(30) % 2
    grid = ParamGrid(Family.LogisticRegression, {"C": [1.0]})
    model, results = grid_search(grid, X, y, seed=4)
    assert len(results) == 1 and len(results[0].fold_scores) == 10
    plain = learners.fit(LearnerSpec(Family.LogisticRegression, {"C": 1.0}, 4), X, y)
    np.testing.assert_array_equal(model.payload["coef"], plain.payload["coef"])


def test_errors_name_the_cell():
    X = sp.csr_matrix(np.eye(20))
    y = np.array([1] + [0] * 19)  # most training folds still hold the positive
    grid = ParamGrid(Family.KNN, {"k": [1]})
    with pytest.raises(DomainError, match="grid cell"):
        grid_search(grid, X, y, seed=0)


def test_resample_hook_applies_to_folds_and_refit():
    seen = []

    def resample(X, y):
        seen.append(X.shape[0])
        return X, y

    X = sp.csr_matrix(np.eye(20))
    y = np.arange(20) % 2
    grid_search(ParamGrid(Family.MultinomialNB, {"alpha": [1.0]}), X, y, seed=0, resample=resample)
    assert seen == [18] * 10 + [20]
