"""Greedy MIS variants with full execution traces.

Vertex positions are 0-based internally.  Parallel round numbers start at 1;
sequential "rounds" in ``round_removed`` are 1-based step numbers instead.
Absent entries are stored as -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .permutation import Permutation, random_permutation
from .rng import RngStream

ABSENT = -1


class InvariantViolation(RuntimeError):
    """An execution produced a state its own invariants rule out."""


@dataclass(frozen=True, eq=False)
class MisRun:
    in_mis: np.ndarray
    inhibitor: np.ndarray
    round_joined: np.ndarray
    round_removed: np.ndarray
    num_rounds: int
    kind: str = "parallel"

    @property
    def n(self) -> int:
        return len(self.in_mis)

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.in_mis)

    def same_trace(self, other: MisRun) -> bool:
        return (
            self.num_rounds == other.num_rounds
            and self.kind == other.kind
            and all(
                np.array_equal(getattr(self, f), getattr(other, f))
                for f in ("in_mis", "inhibitor", "round_joined", "round_removed")
            )
        )

    def to_dict(self) -> dict:
        def sparse(a):
            return {str(v): int(x) for v, x in enumerate(a.tolist()) if x != ABSENT}

        return {
            "n": self.n,
            "mis": self.members.tolist(),
            "inhibitor": sparse(self.inhibitor),
            "round_joined": sparse(self.round_joined),
            "round_removed": sparse(self.round_removed),
            "num_rounds": self.num_rounds,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict, kind: str = "parallel") -> MisRun:
        n = d["n"]

        def dense(m):
            a = np.full(n, ABSENT, dtype=np.int64)
            for k, v in m.items():
                a[int(k)] = v
            return a

        in_mis = np.zeros(n, dtype=bool)
        in_mis[d["mis"]] = True
        return cls(
            in_mis,
            dense(d["inhibitor"]),
            dense(d["round_joined"]),
            dense(d["round_removed"]),
            d["num_rounds"],
            kind,
        )


def _check_sizes(g: Graph, perm: Permutation) -> None:
    if perm.n != g.n:
        raise ValueError(f"permutation covers {perm.n} vertices, graph has {g.n}")


def _empty_run(kind: str) -> MisRun:
    z = np.zeros(0, dtype=np.int64)
    return MisRun(np.zeros(0, dtype=bool), z, z.copy(), z.copy(), 0, kind)


def sequential_greedy(g: Graph, perm: Permutation) -> MisRun:
    """Lexicographically first MIS by scanning positions in order.

    ``round_removed[v]`` is the step (1-based position) at which ``v`` dies;
    the inhibitor of a non-member is the member that killed it, which is its
    earliest-position member neighbor.
    """
    _check_sizes(g, perm)
    n = g.n
    if n == 0:
        return _empty_run("sequential")
    adj = g.adjacency_lists
    alive = [True] * n
    in_mis = [False] * n
    inhib = [ABSENT] * n
    death = [ABSENT] * n
    for step, v in enumerate(perm.order.tolist(), start=1):
        if not alive[v]:
            continue
        in_mis[v] = True
        alive[v] = False
        death[v] = step
        for u in adj[v]:
            if alive[u]:
                alive[u] = False
                death[u] = step
                inhib[u] = v
    return MisRun(
        np.array(in_mis, dtype=bool),
        np.array(inhib, dtype=np.int64),
        np.full(n, ABSENT, dtype=np.int64),
        np.array(death, dtype=np.int64),
        1,
        "sequential",
    )


def _group_argmin(groups: np.ndarray, keys: np.ndarray, n: int):
    """For each group id in ``[0, n)``: index of the entry with the smallest key (or -1)."""
    out = np.full(n, -1, dtype=np.int64)
    if len(groups):
        order = np.lexsort((keys, groups))
        g_sorted = groups[order]
        first = np.ones(len(order), dtype=bool)
        first[1:] = g_sorted[1:] != g_sorted[:-1]
        out[g_sorted[first]] = order[first]
    return out


def min_position_inhibitors(g: Graph, in_mis: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """Earliest-position member neighbor of every non-member (-1 for members)."""
    src, dst = g.arc_sources, g.indices
    sel = ~in_mis[src] & in_mis[dst]
    s, d = src[sel], dst[sel]
    idx = _group_argmin(s, pos[d], g.n)
    out = np.full(g.n, ABSENT, dtype=np.int64)
    has = idx >= 0
    out[has] = d[idx[has]]
    return out


def _local_minima(alive: np.ndarray, src: np.ndarray, dst: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """Alive vertices preceding all of their alive neighbors (arcs are alive-alive)."""
    blocked = np.zeros(len(alive), dtype=bool)
    blocked[src[pos[dst] < pos[src]]] = True
    return alive & ~blocked


def parallel_greedy(g: Graph, perm: Permutation) -> MisRun:
    """Round-synchronous greedy MIS under a fixed order.

    Each round every surviving local minimum joins, and joiners are removed
    together with their neighbors.  ``round_removed`` is the round of the
    first neighbor to join (first kill).
    """
    _check_sizes(g, perm)
    n = g.n
    if n == 0:
        return _empty_run("parallel")
    pos = perm.inverse
    alive = np.ones(n, dtype=bool)
    in_mis = np.zeros(n, dtype=bool)
    joined = np.full(n, ABSENT, dtype=np.int64)
    removed = np.full(n, ABSENT, dtype=np.int64)
    src, dst = g.arc_sources, g.indices
    rnd = 0
    while alive.any():
        rnd += 1
        winners = _local_minima(alive, src, dst, pos)
        if not winners.any():
            raise InvariantViolation("no local minimum among surviving vertices")
        in_mis |= winners
        joined[winners] = rnd
        dead = winners.copy()
        dead[dst[winners[src]]] = True
        removed[dead] = rnd
        alive &= ~dead
        keep = alive[src] & alive[dst]
        src, dst = src[keep], dst[keep]
    inhib = min_position_inhibitors(g, in_mis, pos)
    return MisRun(in_mis, inhib, joined, removed, rnd, "parallel")


def slowed_parallel_greedy(g: Graph, perm: Permutation) -> MisRun:
    """Parallel greedy where a non-member is deleted only when its inhibitor joins.

    Inhibitors are fixed up front from the sequential run.  Membership is not
    copied from it: joiners are the surviving local minima of each round, and
    a local minimum outside the sequential MIS raises ``InvariantViolation``.
    """
    _check_sizes(g, perm)
    n = g.n
    if n == 0:
        return _empty_run("slowed")
    seq = sequential_greedy(g, perm)
    inhib = seq.inhibitor
    non_member = inhib != ABSENT
    pos = perm.inverse
    present = np.ones(n, dtype=bool)
    in_mis = np.zeros(n, dtype=bool)
    joined = np.full(n, ABSENT, dtype=np.int64)
    removed = np.full(n, ABSENT, dtype=np.int64)
    src, dst = g.arc_sources, g.indices
    rnd = 0
    while present.any():
        rnd += 1
        winners = _local_minima(present, src, dst, pos)
        if not winners.any() or (winners & non_member).any():
            raise InvariantViolation(f"round {rnd}: local minima disagree with the sequential MIS")
        in_mis |= winners
        joined[winners] = rnd
        dead = winners.copy()
        dead[non_member] |= winners[inhib[non_member]] & present[non_member]
        removed[dead] = rnd
        present &= ~dead
        keep = present[src] & present[dst]
        src, dst = src[keep], dst[keep]
    return MisRun(in_mis, inhib.copy(), joined, removed, rnd, "slowed")


def luby(g: Graph, rng: RngStream) -> MisRun:
    """Greedy rounds with a freshly shuffled order of the survivors every round.

    A removed non-member's recorded inhibitor is the joining neighbor ranked
    first in the round that removed it.
    """
    n = g.n
    if n == 0:
        return _empty_run("luby")
    alive = np.ones(n, dtype=bool)
    in_mis = np.zeros(n, dtype=bool)
    joined = np.full(n, ABSENT, dtype=np.int64)
    removed = np.full(n, ABSENT, dtype=np.int64)
    inhib = np.full(n, ABSENT, dtype=np.int64)
    src, dst = g.arc_sources, g.indices
    prio = np.zeros(n, dtype=np.int64)
    rnd = 0
    while alive.any():
        rnd += 1
        survivors = np.flatnonzero(alive)
        prio[survivors[random_permutation(len(survivors), rng).order]] = np.arange(len(survivors))
        winners = _local_minima(alive, src, dst, prio)
        in_mis |= winners
        joined[winners] = rnd
        hit = winners[src] & ~winners[dst]
        first = _group_argmin(dst[hit], prio[src[hit]], n)
        killed = first >= 0
        inhib[killed] = src[hit][first[killed]]
        dead = winners | killed
        removed[dead] = rnd
        alive &= ~dead
        keep = alive[src] & alive[dst]
        src, dst = src[keep], dst[keep]
    return MisRun(in_mis, inhib, joined, removed, rnd, "luby")


def verify_mis(g: Graph, members) -> bool:
    """True iff ``members`` (bool mask or vertex ids) is independent and maximal in ``g``."""
    mask = np.zeros(g.n, dtype=bool)
    m = np.asarray(members)
    if m.dtype == bool:
        if len(m) != g.n:
            return False
        mask[:] = m
    else:
        mask[m.astype(np.int64)] = True
    src, dst = g.arc_sources, g.indices
    if (mask[src] & mask[dst]).any():
        return False
    covered = mask.copy()
    covered[dst[mask[src]]] = True
    return bool(covered.all())
