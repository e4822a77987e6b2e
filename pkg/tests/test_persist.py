import json

import numpy as np
import pytest
import scipy.sparse as sp

from commentclf import learners, vectorizer
from commentclf.errors import FormatError
from commentclf.learners import Family, LearnerSpec
from commentclf.persist import load_model, load_model_full, save_model
from commentclf.textnorm import default_config

SENTENCES = ["run the test", "parse the input file", "run code now", "author john",
             "deprecated use other", "returns the value", "the test code", "input value"]
LABELS = [1, 0, 1, 0, 0, 1, 1, 0]
FAST = {Family.RandomForest: {"n_estimators": 4}, Family.MLP: {"hidden_size": 4, "epochs": 20},
        Family.LinearSVC: {"epochs": 10}}


@pytest.fixture(scope="module")
def toy():
    tfidf, X = vectorizer.fit_transform(SENTENCES)
    rng = np.random.default_rng(0)
    Q = sp.csr_matrix(rng.random((100, tfidf.dimension)) * (rng.random((100, tfidf.dimension)) < 0.4))
    return tfidf, X, Q


@pytest.mark.parametrize("family", list(Family), ids=lambda f: f.value)
def test_round_trip_predictions(tmp_path, toy, family):
    tfidf, X, Q = toy
    model = learners.fit(LearnerSpec(family, FAST.get(family, {}), 5), X, LABELS)
    save_model(model, tfidf, tmp_path / "m.txt")
    loaded, tfidf2 = load_model(tmp_path / "m.txt")
    assert tfidf2 == tfidf and loaded.spec == model.spec
    np.testing.assert_array_equal(learners.decision_values(loaded, Q), learners.decision_values(model, Q))


def test_file_is_human_readable(tmp_path, toy):
    tfidf, X, _ = toy
    model = learners.fit(LearnerSpec(Family.LinearSVC, {"C": 0.1}, 5), X, LABELS)
    save_model(model, tfidf, tmp_path / "m.txt")
    text = (tmp_path / "m.txt").read_text()
    d = json.loads(text)
    assert d["family"] == "LinearSVC" and d["hyperparameters"]["C"] == 0.1
    assert '"family": "LinearSVC"' in text
    _, _, norm = load_model_full(tmp_path / "m.txt")
    assert norm == default_config()


def test_truncated_file(tmp_path, toy):
    tfidf, X, _ = toy
    save_model(learners.fit(LearnerSpec(Family.MultinomialNB, {}, 0), X, LABELS), tfidf, tmp_path / "m.txt")
    text = (tmp_path / "m.txt").read_text()
    (tmp_path / "cut.txt").write_text(text[: len(text) // 2])
    with pytest.raises(FormatError):
        load_model(tmp_path / "cut.txt")


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(version=99),
    lambda d: d.update(format="other"),
    lambda d: d.pop("payload"),
    lambda d: d.update(dimension=d["dimension"] + 1),
])
def test_bad_headers(tmp_path, toy, mutate):
    tfidf, X, _ = toy
    save_model(learners.fit(LearnerSpec(Family.MultinomialNB, {}, 0), X, LABELS), tfidf, tmp_path / "m.txt")
    d = json.loads((tmp_path / "m.txt").read_text())
    mutate(d)
    (tmp_path / "m.txt").write_text(json.dumps(d))
    with pytest.raises(FormatError):
        load_model(tmp_path / "m.txt")


def test_save_leaves_no_temp_files(tmp_path, toy):
    tfidf, X, _ = toy
    save_model(learners.fit(LearnerSpec(Family.KNN, {}, 0), X, LABELS), tfidf, tmp_path / "m.txt")
    assert [p.name for p in tmp_path.iterdir()] == ["m.txt"]
