"""Random and structured graph constructions, plus the MIS reductions."""

from __future__ import annotations

import math

import numpy as np

from .graph import Graph, GraphError, _from_canonical, build_graph
from .rng import RngStream


def _pair_from_index(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Invert ``k = hi*(hi-1)/2 + lo`` for ``0 <= lo < hi``."""
    hi = np.floor((1.0 + np.sqrt(1.0 + 8.0 * k.astype(np.float64))) / 2.0).astype(np.int64)
    for _ in range(2):
        hi = np.where(hi * (hi - 1) // 2 > k, hi - 1, hi)
        hi = np.where((hi + 1) * hi // 2 <= k, hi + 1, hi)
    return k - hi * (hi - 1) // 2, hi


def gen_gnp(n: int, p: float, rng: RngStream) -> Graph:
    """Erdos-Renyi G(n, p).

    Pairs are enumerated in the order ``(0,1), (0,2), (1,2), (0,3), ...`` and
    the gaps between included pairs are drawn geometrically, so the cost is
    proportional to the number of edges rather than ``n**2``.
    """
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be non-negative")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return build_graph(n, [])
    if p == 1.0:
        keys = np.arange(total, dtype=np.int64)
    else:
        log_q = math.log1p(-p)
        chunks = []
        last = -1
        batch = int(total * p + 6 * math.sqrt(total * p) + 64)
        while last < total:
            u = 1.0 - rng.random(batch)  # (0, 1]
            gaps = np.floor(np.log(u) / log_q).astype(np.int64) + 1
            pos = last + np.cumsum(gaps)
            chunks.append(pos[pos < total])
            last = int(pos[-1])
        keys = np.concatenate(chunks)
    lo, hi = _pair_from_index(keys)
    order = np.lexsort((hi, lo))
    return _from_canonical(n, lo[order], hi[order])


def lower_bound_layout(n: int) -> tuple[int, int]:
    """``(l, c)``: layers beyond the first and number of layered components."""
    if n < 32:
        raise ValueError(f"lower-bound construction needs n >= 32, got {n}")
    l = int(math.floor(math.log2(n) / 5))
    c = math.isqrt(n)
    size = 2 ** (l + 1) - 1
    c = min(c, n // size)
    return l, c


def lower_bound_layers(n: int) -> list[list[np.ndarray]]:
    """Vertex ids of every layer of every component of ``gen_lower_bound_graph(n)``."""
    l, c = lower_bound_layout(n)
    size = 2 ** (l + 1) - 1
    out = []
    for k in range(c):
        base = k * size
        out.append([np.arange(base + 2**i - 1, base + 2 ** (i + 1) - 1) for i in range(l + 1)])
    return out


def gen_lower_bound_graph(n: int) -> Graph:
    """Layered-clique graph forcing many rounds of the parallel greedy MIS.

    ``floor(sqrt(n))`` components (fewer if they do not fit), each with layers
    of sizes ``1, 2, 4, ..., 2**l`` where ``l = floor(log2(n) / 5)``; each
    layer is a clique and consecutive layers are joined completely.  Unused
    vertices are isolated and take the highest ids.
    """
    l, c = lower_bound_layout(n)
    size = 2 ** (l + 1) - 1
    local = []
    layers = [np.arange(2**i - 1, 2 ** (i + 1) - 1) for i in range(l + 1)]
    for i, layer in enumerate(layers):
        a, b = np.triu_indices(len(layer), k=1)
        local.append(np.stack([layer[a], layer[b]], axis=1))
        if i:
            prev = layers[i - 1]
            local.append(np.stack([np.repeat(prev, len(layer)), np.tile(layer, len(prev))], axis=1))
    local = np.concatenate(local)
    offsets = (np.arange(c, dtype=np.int64) * size)[:, None, None]
    edges = (local[None, :, :] + offsets).reshape(-1, 2)
    return build_graph(n, edges)


def edge_ids(g: Graph) -> np.ndarray:
    """Index into ``g.edges()`` of the edge behind each entry of ``g.indices``."""
    src, dst = g.arc_sources, g.indices
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    e = g.edges()
    keys = e[:, 0] * max(g.n, 1) + e[:, 1]
    return np.searchsorted(keys, lo * max(g.n, 1) + hi)


def _line_graph_arrays(g: Graph) -> Graph:
    ids = edge_ids(g)
    lo_parts, hi_parts = [], []
    # incident edges of v are ids[indptr[v]:indptr[v+1]]; group vertices by degree
    deg = g.degrees
    for d in np.unique(deg):
        if d < 2:
            continue
        verts = np.flatnonzero(deg == d)
        block = ids[g.indptr[verts][:, None] + np.arange(d)]  # (len(verts), d)
        a, b = np.triu_indices(int(d), k=1)
        x, y = block[:, a].ravel(), block[:, b].ravel()
        lo_parts.append(np.minimum(x, y))
        hi_parts.append(np.maximum(x, y))
    if not lo_parts:
        return build_graph(g.m, [])
    lo, hi = np.concatenate(lo_parts), np.concatenate(hi_parts)
    # two distinct edges of a simple graph share at most one endpoint: no duplicates
    order = np.lexsort((hi, lo))
    return _from_canonical(g.m, lo[order], hi[order])


def line_graph(g: Graph) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Line graph of ``g`` and the map from host edge ``(u, v)``, ``u < v``, to its vertex."""
    edge_index = {(u, v): i for i, (u, v) in enumerate(g.edges().tolist())}
    return _line_graph_arrays(g), edge_index


def _coloring_arrays(g: Graph, delta: int) -> Graph:
    if delta < g.max_degree:
        raise GraphError(f"delta={delta} is below the maximum degree {g.max_degree}")
    if delta < 0:
        raise GraphError("delta must be non-negative")
    n, k = g.n, delta + 1
    e = g.edges()
    parts = [e + c * n for c in range(k)]
    a, b = np.triu_indices(k, k=1)
    v = np.arange(n, dtype=np.int64)
    parts.append(np.stack([(a[:, None] * n + v).ravel(), (b[:, None] * n + v).ravel()], axis=1))
    return build_graph(n * k, np.concatenate(parts) if parts else np.zeros((0, 2), np.int64))


def coloring_reduction_graph(g: Graph, delta: int) -> tuple[Graph, dict[tuple[int, int], int]]:
    """``delta + 1`` copies of ``g`` with a clique over the copies of each vertex.

    Pair ``(v, c)`` maps to vertex ``c * g.n + v``.
    """
    h = _coloring_arrays(g, delta)
    pair_index = {(v, c): c * g.n + v for c in range(delta + 1) for v in range(g.n)}
    return h, pair_index
