"""
Training one binary classifier by hand
======================================

The runner does all of this per (category, family) cell. Here the steps
are spelled out for Java "ownership" on the bundled sample.
"""

import numpy as np

from commentclf import corpus, learners, metrics, sampler, textnorm, tuner, vectorizer
from commentclf.learners import Family

records = corpus.load_dataset(corpus.sample_dataset_path())
ds = corpus.filter_category(records, "Java", "ownership")
print(len(ds.train), "train rows,", len(ds.test), "test rows")
print("positives in train:", sum(ds.train_labels))

# fit TF-IDF on the training sentences only
train_text = [textnorm.normalize(s) for s in ds.train_sentences]
test_text = [textnorm.normalize(s) for s in ds.test_sentences]
tfidf = vectorizer.fit(train_text)
X_train = tfidf.transform_many(train_text)
X_test = tfidf.transform_many(test_text)
print("vocabulary size", tfidf.dimension)

# balance the labels by duplicating minority rows
X_bal, y_bal = sampler.random_oversample(X_train, ds.train_labels, seed=42)
print("after oversampling:", np.bincount(y_bal))

###############################################################################
# Grid search with 10-fold CV
# ---------------------------

grid = tuner.ParamGrid(Family.LinearSVC, {"C": [0.01, 0.1, 1.0, 10.0]})
model, results = tuner.grid_search(grid, X_bal, y_bal, seed=7)
for r in results:
    print(r.spec.hyperparameters["C"], f"{r.mean_score:.4f}")
print("chosen:", model.spec.hyperparameters)

pred = learners.predict(model, X_test)
s = metrics.score(metrics.confusion(ds.test_labels, pred))
print("test P/R/F1:", s.rounded(4))
