"""Vertex orders: position <-> vertex bijections."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RngStream


@dataclass(frozen=True, eq=False)
class Permutation:
    """``order[i]`` is the vertex at (0-based) position ``i``; ``inverse`` undoes it."""

    order: np.ndarray
    inverse: np.ndarray

    def __post_init__(self):
        if self.order.shape != self.inverse.shape:
            raise ValueError("order and inverse differ in length")
        n = len(self.order)
        if n and not np.array_equal(self.inverse[self.order], np.arange(n)):
            raise ValueError("order and inverse are not mutually inverse bijections")
        self.order.setflags(write=False)
        self.inverse.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.order)

    @classmethod
    def from_order(cls, order) -> Permutation:
        order = np.array(order, dtype=np.int64)
        n = len(order)
        if n and not np.array_equal(np.sort(order), np.arange(n)):
            raise ValueError("order is not a permutation of 0..n-1")
        inverse = np.empty(n, dtype=np.int64)
        inverse[order] = np.arange(n)
        return cls(order, inverse)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(np.arange(n, dtype=np.int64), np.arange(n, dtype=np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.order, other.order)

    def __repr__(self) -> str:
        return f"Permutation({self.order.tolist() if self.n <= 16 else f'n={self.n}'})"


def random_permutation(n: int, rng: RngStream) -> Permutation:
    """Uniform random order via the inside-out Fisher-Yates shuffle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    picks = rng.bounded(np.arange(1, n + 1)).tolist()
    order = [0] * n
    for i, j in enumerate(picks):
        order[i] = order[j]
        order[j] = i
    order = np.array(order, dtype=np.int64)
    inverse = np.empty(n, dtype=np.int64)
    inverse[order] = np.arange(n, dtype=np.int64)
    return Permutation(order, inverse)
