"""Greedy modularity clustering (Louvain scheme) for weighted graphs.

Two alternating phases: local moves that greedily improve modularity, then
aggregation of communities into super-nodes, repeated until no move helps.
The visit order inside the local phase is shuffled by a seeded RNG, making
runs reproducible for a fixed seed; ties between equally good moves go to
the community with the smallest current id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import WeightedGraph

__all__ = ["CommunityPartition", "louvain_communities", "modularity"]


@dataclass(frozen=True)
class CommunityPartition:
    """Node -> community id (0-based, dense, ordered by first sorted member)
    plus the modularity of that assignment."""

    assignment: dict[str, int]
    modularity: float

    def communities(self) -> list[list[str]]:
        groups: dict[int, list[str]] = {}
        for node in sorted(self.assignment):
            groups.setdefault(self.assignment[node], []).append(node)
        return [groups[cid] for cid in sorted(groups)]


def modularity(g: WeightedGraph, assignment: dict[str, int], resolution: float = 1.0) -> float:
    """Newman modularity Q = sum_c [intra_c / m - resolution * (deg_c / 2m)^2]
    with weighted degrees; every node must be assigned."""
    missing = [node for node in g.nodes() if node not in assignment]
    if missing:
        raise ValueError(f"assignment misses {len(missing)} node(s), e.g. {missing[0]!r}")
    m = g.total_weight
    if m == 0:
        return 0.0
    intra: dict[int, float] = {}
    degree: dict[int, float] = {}
    for node in g.nodes():
        cid = assignment[node]
        degree[cid] = degree.get(cid, 0.0) + g.strength(node)
    for u, v, w in g.edges():
        if assignment[u] == assignment[v]:
            cid = assignment[u]
            intra[cid] = intra.get(cid, 0.0) + w
    q = 0.0
    for cid, deg in degree.items():
        q += intra.get(cid, 0.0) / m - resolution * (deg / (2.0 * m)) ** 2
    return q


def louvain_communities(
    g: WeightedGraph, resolution: float = 1.0, seed: int = 0
) -> CommunityPartition:
    """Cluster ``g`` and return a dense relabeled partition with its
    modularity. Isolated nodes become singleton communities."""
    nodes = g.nodes()
    if not nodes:
        return CommunityPartition({}, 0.0)
    rng = random.Random(seed)

    # Working copy in index space; meta[i] lists the original nodes inside
    # super-node i of the current level.
    labels = list(nodes)
    adj: list[dict[int, float]] = [dict() for _ in nodes]
    index = {node: i for i, node in enumerate(nodes)}
    for u, v, w in g.edges():
        adj[index[u]][index[v]] = w
        adj[index[v]][index[u]] = w
    meta: list[list[int]] = [[i] for i in range(len(nodes))]
    assignment = list(range(len(nodes)))
    two_m = 2.0 * g.total_weight
    if two_m == 0:
        final = {node: i for i, node in enumerate(nodes)}
        return CommunityPartition(final, 0.0)

    while True:
        comm, improved = _local_moves(adj, two_m, resolution, rng)
        if not improved:
            break
        # Aggregate: communities of this level become next level's nodes.
        remap: dict[int, int] = {}
        for i in range(len(adj)):
            remap.setdefault(comm[i], len(remap))
        new_meta: list[list[int]] = [[] for _ in range(len(remap))]
        for i, members in enumerate(meta):
            new_meta[remap[comm[i]]].extend(members)
        # Intra-community weight survives as a self-entry so super-node
        # strengths stay equal to the sum of their members' strengths.
        new_adj: list[dict[int, float]] = [dict() for _ in range(len(remap))]
        for i in range(len(adj)):
            ci = remap[comm[i]]
            for j, w in adj[i].items():
                if j < i:
                    continue
                cj = remap[comm[j]]
                if ci == cj:
                    new_adj[ci][ci] = new_adj[ci].get(ci, 0.0) + w
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
                    new_adj[cj][ci] = new_adj[cj].get(ci, 0.0) + w
        meta = new_meta
        adj = new_adj
        if len(adj) == len(assignment):
            break
        assignment = list(range(len(adj)))

    # Flatten super-node membership back to original nodes, with community
    # ids dense in order of each community's first node (sorted order).
    raw: dict[str, int] = {}
    for cid, members in enumerate(meta):
        for i in members:
            raw[labels[i]] = cid
    dense: dict[int, int] = {}
    final: dict[str, int] = {}
    for node in nodes:
        cid = raw[node]
        dense.setdefault(cid, len(dense))
        final[node] = dense[cid]
    return CommunityPartition(final, modularity(g, final, resolution))


def _local_moves(
    adj: list[dict[int, float]],
    two_m: float,
    resolution: float,
    rng: random.Random,
) -> tuple[list[int], bool]:
    """One complete local phase. Returns the community of each node and
    whether any move changed the partition."""
    n = len(adj)
    comm = list(range(n))
    # A self-entry holds a super-node's internal weight; it counts twice
    # toward strength and never as a link into a community.
    strength = [
        sum(w for j, w in neigh.items() if j != i) + 2.0 * neigh.get(i, 0.0)
        for i, neigh in enumerate(adj)
    ]
    comm_strength = strength.copy()
    improved = False
    order = list(range(n))
    rng.shuffle(order)
    while True:
        moved = 0
        for i in order:
            ci = comm[i]
            # Weight from i into each neighboring community.
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                if j == i:
                    continue
                links[comm[j]] = links.get(comm[j], 0.0) + w
            comm_strength[ci] -= strength[i]
            base = links.get(ci, 0.0) - resolution * strength[i] * comm_strength[ci] / two_m
            best_c, best_gain = ci, 0.0
            for cj in sorted(links):
                if cj == ci:
                    continue
                gain = (
                    links[cj] - resolution * strength[i] * comm_strength[cj] / two_m
                ) - base
                if gain > best_gain + 1e-12:
                    best_c, best_gain = cj, gain
            comm[i] = best_c
            comm_strength[best_c] += strength[i]
            if best_c != ci:
                moved += 1
        if moved == 0:
            break
        improved = True
    return comm, improved
