"""Immutable simple undirected graphs in compressed sparse row form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Malformed graph input (bad endpoint, self-loop, bad file)."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``indices[indptr[v]:indptr[v+1]]`` is the ascending neighbor list of ``v``;
    every edge appears twice in ``indices``.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @cached_property
    def arc_sources(self) -> np.ndarray:
        """Source vertex of each entry of ``indices``."""
        return _frozen(np.repeat(np.arange(self.n, dtype=np.int64), self.degrees))

    @cached_property
    def adjacency_lists(self) -> list[list[int]]:
        """Plain-list adjacency, for the scalar (per-vertex loop) algorithms."""
        flat = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [flat[ptr[v] : ptr[v + 1]] for v in range(self.n)]

    def edges(self) -> np.ndarray:
        """Canonical ``(m, 2)`` edge array, ``u < v``, sorted lexicographically."""
        src = self.arc_sources
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> Graph:
    """Canonical graph from an edge list; duplicate pairs collapse to one edge.

    Raises ``GraphError`` for endpoints outside ``[0, n)`` and for self-loops.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    e = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise GraphError("edges must be pairs")
    bad = (e < 0) | (e >= n)
    if bad.any():
        i = int(np.flatnonzero(bad.any(axis=1))[0])
        raise GraphError(f"endpoint out of range [0, {n}): {tuple(e[i].tolist())}")
    loops = e[:, 0] == e[:, 1]
    if loops.any():
        i = int(np.flatnonzero(loops)[0])
        raise GraphError(f"self-loop: {tuple(e[i].tolist())}")
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    keys = np.unique(lo * n + hi)
    lo, hi = np.divmod(keys, max(n, 1))
    return _from_canonical(n, lo, hi)


def _from_canonical(n: int, lo: np.ndarray, hi: np.ndarray) -> Graph:
    """CSR from already deduplicated pairs with ``lo < hi``."""
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.argsort(src * max(n, 1) + dst, kind="stable")
    indices = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(n, _frozen(indptr), _frozen(indices))


def check_graph(g: Graph) -> None:
    """Walk every neighbor list and raise ``GraphError`` on a broken invariant."""
    if len(g.indptr) != g.n + 1 or g.indptr[0] != 0 or g.indptr[-1] != len(g.indices):
        raise GraphError("offsets do not frame the neighbor array")
    if np.any(np.diff(g.indptr) < 0):
        raise GraphError("offsets not monotone")
    if len(g.indices) % 2:
        raise GraphError("neighbor array length is odd")
    for v in range(g.n):
        nb = g.neighbors(v)
        if len(nb) and (nb.min() < 0 or nb.max() >= g.n):
            raise GraphError(f"vertex {v}: neighbor out of range")
        if np.any(np.diff(nb) <= 0):
            raise GraphError(f"vertex {v}: neighbor list not strictly ascending")
        if np.any(nb == v):
            raise GraphError(f"vertex {v}: self-loop")
        for u in nb:
            if not g.has_edge(int(u), v):
                raise GraphError(f"asymmetric edge {v}->{u}")


def read_edge_list(path) -> Graph:
    """Read the ``n m`` header plus ``u v`` lines format."""
    with open(path, encoding="utf-8") as fh:
        rows = [line.split() for line in fh if line.strip() and not line.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError(f"{path}: expected header 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"{path}: malformed line ({exc})") from None
    if len(pairs) != m:
        raise GraphError(f"{path}: header says {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges().tolist()]
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
