"""Random oversampling of the minority label in a binary training set."""
from __future__ import annotations

from typing import Sequence, TypeVar

from .errors import DomainError
from .rng import SplitMix64

T = TypeVar("T")


def oversample_indices(labels: Sequence[int], seed: int) -> list[int]:
    """Row indices of the balanced set: ``0..n-1`` followed by the drawn duplicates.

    Each draw picks uniformly among the minority rows (with replacement)
    using SplitMix64 seeded with ``seed``.
    """
    if any(y not in (0, 1) for y in labels):
        raise DomainError("labels must be 0 or 1")
    pos = [i for i, y in enumerate(labels) if y == 1]
    neg = [i for i, y in enumerate(labels) if y == 0]
    if not pos or not neg:
        raise DomainError("oversampling needs at least one example of each label")
    minority = neg if len(neg) < len(pos) else pos
    rng = SplitMix64(seed)
    draws = [minority[rng.below(len(minority))] for _ in range(abs(len(pos) - len(neg)))]
    return list(range(len(labels))) + draws


def random_oversample(vectors: Sequence[T], labels: Sequence[int], seed: int) -> tuple[list[T], list[int]]:
    """Duplicate minority rows until both labels are equally frequent.

    The originals come first, in order, followed by the duplicates in draw
    order.  Rows are repeated by reference, so every output row *is* an
    input row.
    """
    if len(vectors) != len(labels):
        raise DomainError(f"{len(vectors)} vectors but {len(labels)} labels")
    idx = oversample_indices(labels, seed)
    return [vectors[i] for i in idx], [labels[i] for i in idx]
