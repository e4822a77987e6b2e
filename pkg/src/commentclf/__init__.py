"""Binary classifiers for code-comment sentence categories.

Pipeline pieces, bottom-up: :mod:`corpus` (loading), :mod:`textnorm`
(normalisation), :mod:`vectorizer` (TF-IDF), :mod:`sampler` (random
oversampling), :mod:`learners` (eight classifier families), :mod:`tuner`
(grid search with k-fold CV), :mod:`metrics` (binary P/R/F1) and
:mod:`runner` (the whole experiment plus persistence and reports).
"""
__version__ = "0.1.0"
