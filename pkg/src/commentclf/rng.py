"""Portable seeded randomness.

Every random decision in the toolkit (oversampling draws, fold shuffles,
bootstrap samples, feature subsets, weight initialisation) comes from
SplitMix64 so that a draw sequence is fully defined by its seed::

    state  <- state + 0x9E3779B97F4A7C15            (mod 2**64)
    z      <- state
    z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
    z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
    output <- z ^ (z >> 31)

Bounded integers use rejection sampling on the raw 64-bit output, floats
take the top 53 bits.  Derived seeds hash text with 64-bit FNV-1a and pass
``seed ^ hash`` through the output mixer once.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def mix64(z: int) -> int:
    """SplitMix64 output function applied to a single 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def fnv1a64(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & MASK64
    return h


def derive_seed(seed: int, *parts: str) -> int:
    """Seed for a named sub-task, e.g. ``derive_seed(s, "Java", "usage")``.

    Parts are joined with U+001F so ("a b", "c") and ("a", "b c") differ.
    """
    return mix64((seed & MASK64) ^ fnv1a64("\x1f".join(parts)))


class SplitMix64:
    def __init__(self, seed: int):
        if seed < 0 or seed > MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, walking from the last index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> np.ndarray:
        order = list(range(n))
        self.shuffle(order)
        return np.asarray(order, dtype=np.int64)

    def choice(self, n: int, size: int) -> np.ndarray:
        """``size`` distinct indices from [0, n): first entries of a partial shuffle."""
        size = min(size, n)
        order = list(range(n))
        for i in range(size):
            j = i + self.below(n - i)
            order[i], order[j] = order[j], order[i]
        return np.asarray(order[:size], dtype=np.int64)

    def integers(self, n: int, size: int) -> np.ndarray:
        return np.fromiter((self.below(n) for _ in range(size)), dtype=np.int64, count=size)

    def uniform_array(self, size: int) -> np.ndarray:
        """``size`` floats in [0, 1); identical to ``size`` calls of :meth:`random`."""
        if size == 0:
            return np.empty(0)
        steps = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + size * GAMMA) & MASK64
        return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
