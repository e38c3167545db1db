"""Matching, coloring and correlation clustering on top of the greedy MIS."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .generators import _coloring_arrays, _line_graph_arrays
from .graph import Graph, GraphError, build_graph
from .mis import parallel_greedy, sequential_greedy
from .permutation import Permutation, random_permutation
from .rng import RngStream


@dataclass(frozen=True)
class Matching:
    edges: np.ndarray  # (k, 2), u < v

    def is_valid(self, g: Graph) -> bool:
        """Edges of ``g``, pairwise disjoint, and no host edge left with both ends free."""
        e = self.edges
        if any(not g.has_edge(int(u), int(v)) for u, v in e):
            return False
        ends = e.ravel()
        if len(np.unique(ends)) != len(ends):
            return False
        matched = np.zeros(g.n, dtype=bool)
        matched[ends] = True
        host = g.edges()
        return bool((matched[host[:, 0]] | matched[host[:, 1]]).all())


@dataclass(frozen=True)
class Coloring:
    color: np.ndarray

    def is_proper(self, g: Graph, num_colors: int) -> bool:
        c = self.color
        if len(c) != g.n or (c < 0).any() or (c >= num_colors).any():
            return False
        e = g.edges()
        return bool((c[e[:, 0]] != c[e[:, 1]]).all())


def greedy_maximal_matching(g: Graph, rng: RngStream) -> tuple[Matching, int]:
    """Parallel greedy MIS on the line graph under a random edge order."""
    lg = _line_graph_arrays(g)
    run = parallel_greedy(lg, random_permutation(lg.n, rng))
    return Matching(g.edges()[run.in_mis]), run.num_rounds


def greedy_coloring(g: Graph, delta: int, rng: RngStream) -> tuple[Coloring, int]:
    """Parallel greedy MIS on the ``delta + 1`` copy reduction; copy ``c`` in the MIS gives color ``c``."""
    h = _coloring_arrays(g, delta)
    run = parallel_greedy(h, random_permutation(h.n, rng))
    members = run.members
    color = np.full(g.n, -1, dtype=np.int64)
    color[members % max(g.n, 1)] = members // max(g.n, 1)
    return Coloring(color), run.num_rounds


class SignedCompleteGraph:
    """Complete graph whose pairs are labeled '+' (True) or '-' (False).

    Labels are packed one bit per unordered pair, in the pair order
    ``(0,1), (0,2), ..., (0,n-1), (1,2), ...``.
    """

    def __init__(self, n: int, labels):
        self.n = n
        labels = np.asarray(labels, dtype=bool).ravel()
        if len(labels) != n * (n - 1) // 2:
            raise ValueError(f"expected {n * (n - 1) // 2} labels, got {len(labels)}")
        self._bits = np.packbits(labels)
        self._count = len(labels)

    @classmethod
    def from_plus_pairs(cls, n: int, plus) -> SignedCompleteGraph:
        labels = np.zeros(n * (n - 1) // 2, dtype=bool)
        for u, v in plus:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"bad pair ({u}, {v})")
            labels[pair_index(n, u, v)] = True
        return cls(n, labels)

    @property
    def labels(self) -> np.ndarray:
        return np.unpackbits(self._bits, count=self._count).astype(bool)

    def label(self, u: int, v: int) -> bool:
        return bool(self.labels[pair_index(self.n, u, v)])

    def plus_graph(self) -> Graph:
        iu, iv = np.triu_indices(self.n, k=1)
        lab = self.labels
        return build_graph(self.n, np.stack([iu[lab], iv[lab]], axis=1))


def pair_index(n: int, u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@dataclass(frozen=True)
class Clustering:
    cluster_of: np.ndarray
    pivots: np.ndarray

    def to_dict(self, cost: int | None = None) -> dict:
        d = {
            "pivots": self.pivots.tolist(),
            "cluster_of": {str(v): int(c) for v, c in enumerate(self.cluster_of.tolist())},
        }
        if cost is not None:
            d["cost"] = cost
        return d

    def to_json(self, cost: int | None = None, **kw) -> str:
        return json.dumps(self.to_dict(cost), **kw)


def cc_pivot(s: SignedCompleteGraph, perm: Permutation, plus: Graph | None = None) -> Clustering:
    """Pivot clustering: greedy MIS of the '+' graph, each non-pivot joins its inhibitor."""
    if perm.n != s.n:
        raise ValueError(f"permutation covers {perm.n} nodes, graph has {s.n}")
    run = sequential_greedy(plus if plus is not None else s.plus_graph(), perm)
    cluster_of = np.where(run.in_mis, np.arange(s.n), run.inhibitor)
    return Clustering(cluster_of, run.members)


def cc_cost(s: SignedCompleteGraph, c: Clustering) -> int:
    """Number of '-' pairs inside clusters plus '+' pairs across clusters."""
    cl = np.asarray(c.cluster_of)
    if len(cl) != s.n or (cl < 0).any():
        raise ValueError("clustering does not cover every node")
    iu, iv = np.triu_indices(s.n, k=1)
    same = cl[iu] == cl[iv]
    return int(np.count_nonzero(same != s.labels))


def set_partitions(n: int):
    """Restricted-growth strings of length ``n``: ``a[0] = 0``, ``a[i] <= 1 + max(a[:i])``."""
    if n == 0:
        yield []
        return
    a = [0] * n
    mx = [0] * n

    def rec(i):
        if i == n:
            yield a
            return
        for b in range(mx[i - 1] + 2):
            a[i] = b
            mx[i] = max(mx[i - 1], b)
            yield from rec(i + 1)

    yield from rec(1)


def brute_force_cc_opt(s: SignedCompleteGraph) -> int:
    """Optimal correlation-clustering cost by enumerating every set partition (n <= 10)."""
    if s.n > 10:
        raise ValueError(f"exhaustive search is limited to n <= 10, got {s.n}")
    n = s.n
    iu, iv = np.triu_indices(n, k=1)
    plus = [(int(u), int(v)) for u, v, l in zip(iu, iv, s.labels) if l]
    minus = [(int(u), int(v)) for u, v, l in zip(iu, iv, s.labels) if not l]
    best = len(plus)
    for a in set_partitions(n):
        cost = sum(a[u] != a[v] for u, v in plus)
        if cost >= best:
            continue
        cost += sum(a[u] == a[v] for u, v in minus)
        if cost < best:
            best = cost
    return best


def read_signed(path) -> SignedCompleteGraph:
    """Header ``n`` then ``u v s`` lines with ``s`` in ``{+, -}``; missing pairs are '-'."""
    with open(path, encoding="utf-8") as fh:
        rows = [line.split() for line in fh if line.strip() and not line.startswith("#")]
    if not rows or len(rows[0]) != 1:
        raise GraphError(f"{path}: expected header 'n'")
    try:
        n = int(rows[0][0])
        labels = np.zeros(n * (n - 1) // 2, dtype=bool)
        for r in rows[1:]:
            u, v, sign = int(r[0]), int(r[1]), r[2]
            if sign not in "+-" or len(sign) != 1:
                raise GraphError(f"{path}: bad sign {sign!r}")
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"{path}: bad pair ({u}, {v})")
            labels[pair_index(n, u, v)] = sign == "+"
    except (ValueError, IndexError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"{path}: malformed line ({exc})") from None
    return SignedCompleteGraph(n, labels)


def format_signed(s: SignedCompleteGraph) -> str:
    iu, iv = np.triu_indices(s.n, k=1)
    lines = [str(s.n)]
    lines += [f"{u} {v} {'+' if l else '-'}" for u, v, l in zip(iu.tolist(), iv.tolist(), s.labels)]
    return "\n".join(lines) + "\n"
