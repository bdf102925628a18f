"""Degree and betweenness centrality for undirected weighted graphs.

Betweenness follows Brandes' accumulation scheme: one shortest-path pass
per source (BFS when hop counts define shortest, Dijkstra when edge
weights are distances), then dependency back-propagation. Scores are the
raw pair counts (unnormalized); each unordered pair is counted once.

Per-source passes are independent, so they can run on a thread pool. The
per-source vectors are reduced in source order regardless of completion
order, which keeps results bit-identical across worker counts.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .graphs import WeightedGraph

__all__ = ["CentralityReport", "betweenness_centrality", "degree_centrality"]


@dataclass
class CentralityReport:
    """Per-node centrality scores keyed by node id."""

    degree: dict[str, int] = field(default_factory=dict)
    normalized_degree: dict[str, float] = field(default_factory=dict)
    strength: dict[str, float] = field(default_factory=dict)
    betweenness: dict[str, float] = field(default_factory=dict)


def degree_centrality(g: WeightedGraph) -> CentralityReport:
    """Degree (edge count), degree / (n - 1), and strength (weight sum)."""
    report = CentralityReport()
    n = g.node_count
    for node in g.nodes():
        d = g.degree(node)
        report.degree[node] = d
        report.normalized_degree[node] = d / (n - 1) if n > 1 else 0.0
        report.strength[node] = g.strength(node)
    return report


def betweenness_centrality(
    g: WeightedGraph, weighted: bool = False, jobs: int = 1
) -> CentralityReport:
    """Unnormalized shortest-path betweenness (the ``betweenness`` field).

    weighted=False counts hops; weighted=True reads edge weights as
    distances. ``jobs`` bounds the worker threads; any value yields the
    same scores.
    """
    nodes = g.nodes()
    adjacency = {node: sorted(g.adjacency(node).items()) for node in nodes}
    score = {node: 0.0 for node in nodes}
    single = _dijkstra_pass if weighted else _bfs_pass

    if jobs <= 1 or len(nodes) < 2:
        partials = (single(adjacency, s) for s in nodes)
    else:
        pool = ThreadPoolExecutor(max_workers=jobs)
        try:
            # list() pins the reduction to source order, not completion order.
            partials = list(pool.map(lambda s: single(adjacency, s), nodes))
        finally:
            pool.shutdown(wait=True)
    for delta in partials:
        for node, value in delta.items():
            score[node] += value
    # Each unordered pair was seen from both endpoints.
    return CentralityReport(betweenness={node: value / 2.0 for node, value in score.items()})


def _bfs_pass(adjacency: dict[str, list[tuple[str, float]]], source: str) -> dict[str, float]:
    sigma = {source: 1.0}
    dist = {source: 0}
    preds: dict[str, list[str]] = {source: []}
    order: list[str] = []
    queue = [source]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        order.append(v)
        for w, _weight in adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                sigma[w] = 0.0
                preds[w] = []
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return _accumulate(sigma, preds, order, source)


def _dijkstra_pass(adjacency: dict[str, list[tuple[str, float]]], source: str) -> dict[str, float]:
    sigma = {source: 1.0}
    dist: dict[str, float] = {}
    seen = {source: 0.0}
    preds: dict[str, list[str]] = {source: []}
    order: list[str] = []
    heap: list[tuple[float, str, str]] = [(0.0, source, source)]
    while heap:
        d, _pred, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        order.append(v)
        for w, weight in adjacency[v]:
            if weight < 0:
                raise ValueError(f"negative edge weight on ({v!r}, {w!r})")
            vw = d + weight
            if w not in dist and (w not in seen or vw < seen[w]):
                seen[w] = vw
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (vw, v, w))
            elif w not in dist and vw == seen[w]:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return _accumulate(sigma, preds, order, source)


def _accumulate(
    sigma: dict[str, float],
    preds: dict[str, list[str]],
    order: list[str],
    source: str,
) -> dict[str, float]:
    delta = {v: 0.0 for v in order}
    for w in reversed(order):
        for v in preds[w]:
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
    out = {}
    for v in order:
        if v != source and delta[v] != 0.0:
            out[v] = delta[v]
    return out
