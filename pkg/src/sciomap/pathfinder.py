"""Pathfinder network scaling over distance graphs.

An edge survives scaling iff no path of at most ``q`` edges joins its
endpoints at a strictly lower Minkowski-``r`` cost, where a path costs
``(sum d_i^r)^(1/r)`` for finite ``r`` and ``max(d_i)`` for ``r = inf``.
Ties keep the edge. The default parameters ``(r=inf, q=n-1)`` are the
standard choice for sparse science maps and make the result the union of
all minimum spanning trees, invariant under any strictly increasing
transform of the distances.

Implementation notes: finite-``r`` costs are carried in the powered domain
(``sum d^r``), where path combination is plain addition — a monotone
transform of the true cost, so edge survival is unchanged and no
per-combination root/power round-trips accumulate error. The all-pairs
minima come from a Floyd-Warshall sweep for ``q = n-1`` (O(n^3)) and from
repeated relaxation against the one-edge matrix for bounded ``q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import DistanceGraph, WeightedGraph

__all__ = ["PathfinderParams", "pathfinder", "pathfinder_mst", "to_distance"]

# Relative slack when deciding whether an alternate path undercuts an edge;
# exact ties (equal costs) must keep the edge.
_REL_TOL = 1e-12


@dataclass(frozen=True)
class PathfinderParams:
    """Minkowski exponent ``r`` (>= 1, may be ``math.inf``) and maximum path
    length ``q`` in edges (1 <= q <= n-1; pass ``None`` for n-1)."""

    r: float = math.inf
    q: int | None = None

    def __post_init__(self):
        if not (self.r >= 1):
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.q is not None and (not isinstance(self.q, int) or self.q < 1):
            raise ValueError(f"q must be a positive integer or None, got {self.q!r}")


def to_distance(g: WeightedGraph) -> DistanceGraph:
    """Invert similarity weights into dissimilarities: d = 1/w.

    Strictly decreasing, so weight order reverses and the edge set is
    preserved. Zero or negative weights are rejected.
    """
    out = WeightedGraph()
    for node in g.nodes():
        out.add_node(node, **g.node_attrs(node))
    for u, v, w in g.edges():
        if not w > 0:
            raise ValueError(f"cannot invert non-positive weight {w} on edge ({u!r}, {v!r})")
        out.add_edge(u, v, 1.0 / w)
    return out


def pathfinder(g: DistanceGraph, params: PathfinderParams | None = None) -> DistanceGraph:
    """Scale a distance graph, keeping each edge whose direct distance is not
    beaten by any path of at most ``q`` edges. Retained weights are unchanged.
    """
    if params is None:
        params = PathfinderParams()
    nodes = g.nodes()
    n = len(nodes)
    out = WeightedGraph()
    for node in nodes:
        out.add_node(node, **g.node_attrs(node))
    if n < 2 or g.edge_count == 0:
        return out
    q = params.q if params.q is not None else n - 1
    q = min(q, n - 1)

    index = {node: i for i, node in enumerate(nodes)}
    w = np.full((n, n), np.inf)
    for u, v, dist in g.edges():
        i, j = index[u], index[v]
        value = dist if math.isinf(params.r) else dist**params.r
        w[i, j] = value
        w[j, i] = value

    best = _min_path_costs(w, q, maximum=math.isinf(params.r))

    for u, v, dist in g.edges():
        i, j = index[u], index[v]
        direct = w[i, j]
        if direct <= best[i, j] * (1.0 + _REL_TOL):
            out.add_edge(u, v, dist)
    return out


def _min_path_costs(w: np.ndarray, q: int, maximum: bool) -> np.ndarray:
    """Minimum path cost between all pairs over paths of <= q edges.

    ``w`` holds one-edge costs in the combining domain (powered weights for
    finite r, raw for the max metric); ``maximum`` selects max-combination.
    Positive costs mean walks never beat their embedded simple paths, so the
    relaxation below equals a minimum over simple paths.
    """
    n = w.shape[0]
    combine = np.maximum if maximum else np.add
    if q >= n - 1:
        # Floyd-Warshall in the (min, combine) semiring.
        best = w.copy()
        np.fill_diagonal(best, 0.0)
        for k in range(n):
            via_k = combine(best[:, k][:, None], best[k, :][None, :])
            np.minimum(best, via_k, out=best)
        np.fill_diagonal(best, np.inf)
        return best
    # Bounded path length: relax against the one-edge matrix q-1 times.
    best = w.copy()
    reach = w.copy()
    for _ in range(q - 1):
        # reach[i, j] after step s: min cost over paths of exactly <= s+1 edges
        # (monotone combine makes reusing minima safe).
        stepped = combine(reach[:, :, None], w[None, :, :]).min(axis=1)
        reach = stepped
        np.minimum(best, reach, out=best)
    np.fill_diagonal(best, np.inf)
    return best


def pathfinder_mst(g: DistanceGraph) -> DistanceGraph:
    """The (r=inf, q=n-1) special case: union of all minimum spanning trees.

    An edge (u, v, w) belongs to some MST iff u and v are not connected by
    edges strictly lighter than w, which is exactly the minimax-path
    survival test. Kruskal-style scan with equal-weight batches, O(m log m).
    """
    nodes = g.nodes()
    out = WeightedGraph()
    for node in nodes:
        out.add_node(node, **g.node_attrs(node))
    parent = {node: node for node in nodes}

    def find(x: str) -> str:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    edges = sorted(g.edges(), key=lambda e: (e[2], e[0], e[1]))
    i = 0
    while i < len(edges):
        j = i
        while j < len(edges) and edges[j][2] == edges[i][2]:
            j += 1
        batch = edges[i:j]
        # Test the whole equal-weight batch against the strictly-lighter forest.
        survivors = [(u, v, w) for u, v, w in batch if find(u) != find(v)]
        for u, v, w in survivors:
            out.add_edge(u, v, w)
        for u, v, _w in batch:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        i = j
    return out
