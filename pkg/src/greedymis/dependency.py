"""Dependency structure of a greedy MIS run and the path lengths bounding its rounds.

All lengths count vertices, so a dependency path through ``2l + 1``
positions has length ``2l + 1`` and bounds the parallel run by ``l + 1``
rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .mis import ABSENT, MisRun, min_position_inhibitors, sequential_greedy
from .permutation import Permutation


class InconsistentRun(ValueError):
    """A MisRun that is not the greedy result for the given graph and order."""


@dataclass(frozen=True, eq=False)
class DependencyDag:
    """Position-increasing arcs: inhibitor -> victim, and victim -> later member neighbor."""

    src: np.ndarray
    dst: np.ndarray
    in_mis: np.ndarray
    inhibitor: np.ndarray
    perm: Permutation

    @property
    def n(self) -> int:
        return len(self.in_mis)

    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.src.tolist(), self.dst.tolist()))

    def to_dot(self) -> str:
        lines = ["digraph dependency {"]
        pos = self.perm.inverse
        for v in range(self.n):
            shape = "doublecircle" if self.in_mis[v] else "circle"
            lines.append(f'  {v} [shape={shape}, label="{v} @{int(pos[v]) + 1}"];')
        for u, v in self.arcs():
            style = "solid" if self.in_mis[u] else "dashed"
            lines.append(f"  {u} -> {v} [style={style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def check_run(g: Graph, perm: Permutation, run: MisRun) -> None:
    """Raise ``InconsistentRun`` unless ``run`` is the lexicographically first MIS of ``(g, perm)``.

    An independent set in which every non-member has an earlier member
    neighbor is exactly the sequential greedy result.
    """
    if run.n != g.n or perm.n != g.n:
        raise InconsistentRun("run, graph and permutation sizes differ")
    pos = perm.inverse
    src, dst = g.arc_sources, g.indices
    if (run.in_mis[src] & run.in_mis[dst]).any():
        raise InconsistentRun("members are not independent")
    expected = min_position_inhibitors(g, run.in_mis, pos)
    outside = ~run.in_mis
    if (expected[outside] == ABSENT).any():
        raise InconsistentRun("a non-member has no member neighbor")
    if (pos[expected[outside]] > pos[outside]).any():
        raise InconsistentRun("a non-member precedes all of its member neighbors")
    if not np.array_equal(run.inhibitor, expected):
        raise InconsistentRun("recorded inhibitors are not the earliest member neighbors")


def build_dependency_dag(g: Graph, perm: Permutation, run: MisRun | None = None) -> DependencyDag:
    if run is None:
        run = sequential_greedy(g, perm)
    check_run(g, perm, run)
    pos = perm.inverse
    in_mis, inhib = run.in_mis, run.inhibitor
    victims = np.flatnonzero(~in_mis)
    src, dst = g.arc_sources, g.indices
    fwd = ~in_mis[src] & in_mis[dst] & (pos[src] < pos[dst])
    a_src = np.concatenate([inhib[victims], src[fwd]])
    a_dst = np.concatenate([victims, dst[fwd]])
    order = np.lexsort((a_dst, a_src))
    return DependencyDag(a_src[order], a_dst[order], in_mis.copy(), inhib.copy(), perm)


def check_dag(dag: DependencyDag, g: Graph) -> None:
    """Assert the arc invariants: position increasing and parity alternating."""
    pos = dag.perm.inverse
    if not (pos[dag.src] < pos[dag.dst]).all():
        raise AssertionError("arc does not increase position")
    from_member = dag.in_mis[dag.src]
    if (dag.in_mis[dag.src] == dag.in_mis[dag.dst]).any():
        raise AssertionError("arc joins two vertices of the same parity")
    if not (dag.inhibitor[dag.dst[from_member]] == dag.src[from_member]).all():
        raise AssertionError("member -> non-member arc is not an inhibitor arc")
    for u, v in zip(dag.src[~from_member].tolist(), dag.dst[~from_member].tolist()):
        if not g.has_edge(u, v):
            raise AssertionError(f"non-member -> member arc {u}->{v} is not an edge")


def dependency_length(dag: DependencyDag) -> int:
    """Vertex count of the longest member-to-member path (0 for the empty graph).

    Dynamic programming in increasing position order; every arc points
    forward, so predecessors are always final when a vertex is reached.
    """
    n = dag.n
    if n == 0:
        return 0
    preds: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(dag.src.tolist(), dag.dst.tolist()):
        preds[v].append(u)
    best = [0] * n
    in_mis = dag.in_mis.tolist()
    top = 0
    for v in dag.perm.order.tolist():
        if in_mis[v]:
            b = 1
            for u in preds[v]:
                if best[u] + 1 > b:
                    b = best[u] + 1
            best[v] = b
            if b > top:
                top = b
        else:
            # exactly one incoming arc: from the inhibitor
            best[v] = best[preds[v][0]] + 1
    return top


def longest_increasing_path(g: Graph, perm: Permutation) -> int:
    """Vertex count of the longest path whose positions strictly increase."""
    if g.n == 0:
        return 0
    pos = perm.inverse.tolist()
    adj = g.adjacency_lists
    best = [1] * g.n
    for v in perm.order.tolist():
        pv = pos[v]
        b = 1
        for u in adj[v]:
            if pos[u] < pv and best[u] >= b:
                b = best[u] + 1
        best[v] = b
    return max(best)


def max_suffix_degree(g: Graph, perm: Permutation, beta: float, run: MisRun | None = None) -> int:
    """Largest alive-degree among vertices alive after the first ``floor(beta*n)`` steps.

    ``run`` may be a precomputed sequential run (its death steps are reused).
    """
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    if g.n == 0:
        return 0
    if run is None or run.kind != "sequential":
        run = sequential_greedy(g, perm)
    prefix = math.floor(beta * g.n)
    alive = run.round_removed > prefix
    src, dst = g.arc_sources, g.indices
    live = alive[src] & alive[dst]
    deg = np.bincount(src[live], minlength=g.n)
    return int(deg.max()) if alive.any() else 0


def check_round_bound(run: MisRun, dep_len: int) -> bool:
    """Whether ``run.num_rounds <= (dep_len + 1) / 2``."""
    if dep_len % 2 == 0 and dep_len != 0:
        raise ValueError(f"dependency length must be odd, got {dep_len}")
    if dep_len == 0:
        return run.num_rounds == 0
    return run.num_rounds <= (dep_len + 1) // 2
