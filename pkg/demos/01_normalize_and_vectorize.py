"""
From a comment sentence to a feature vector
===========================================

Each sentence goes through nine normalization stages, then TF-IDF.
"""

from commentclf import textnorm, vectorizer

# A sentence with a contraction, a number and punctuation
raw = "  I'm running 30 tests!  "
print(repr(raw), "->", repr(textnorm.normalize(raw)))

# Single digits are dropped before digit replacement, so only
# multi-digit numbers survive as NUM
for s in ["a 3 b", "a 33 b", "", "the a an"]:
    print(repr(s), "->", textnorm.normalize(s))

# Contractions match whole tokens only
cfg = textnorm.default_config()
print(textnorm.expand_contractions("can't won't firmware", cfg))

###############################################################################
# TF-IDF on a toy corpus
# ----------------------
# idf = ln((1 + N) / (1 + df)) + 1, rows are L2-normalized.

model = vectorizer.fit(["run test", "run code"])
for term, idf in zip(model.vocabulary.terms, model.idf):
    print(f"{term:5s} idf={idf:.4f}")

v = model.transform("run run test")
print(v.to_dense().round(4), "norm", round(v.norm(), 12))

# unseen tokens are dropped
print(model.transform("never seen before"))
