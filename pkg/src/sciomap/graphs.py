"""Undirected weighted graph type shared by the network stages.

The same structure serves similarity graphs (co-citation weights, higher =
closer) and distance graphs (lower = closer); which reading applies is a
property of the operation, not the type. Node and edge iteration is sorted,
so every algorithm downstream is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["WeightedGraph", "DistanceGraph", "ComponentPartition", "components", "largest_component"]


class WeightedGraph:
    """Undirected graph, positive edge weights, per-node attribute dicts."""

    def __init__(self):
        self._attrs: dict[str, dict] = {}
        self._adj: dict[str, dict[str, float]] = {}

    # -- construction --

    def add_node(self, node: str, **attrs) -> None:
        if node not in self._adj:
            self._adj[node] = {}
            self._attrs[node] = {}
        self._attrs[node].update(attrs)

    def add_edge(self, u: str, v: str, weight: float) -> None:
        if u == v:
            raise ValueError(f"self-loop on {u!r}")
        if not weight > 0:
            raise ValueError(f"edge ({u!r}, {v!r}) weight must be positive, got {weight}")
        self.add_node(u)
        self.add_node(v)
        # Stored as float so serialized weights match in-memory ones exactly.
        self._adj[u][v] = float(weight)
        self._adj[v][u] = float(weight)

    def remove_edge(self, u: str, v: str) -> None:
        del self._adj[u][v]
        del self._adj[v][u]

    def remove_node(self, node: str) -> None:
        for other in list(self._adj[node]):
            self.remove_edge(node, other)
        del self._adj[node]
        del self._attrs[node]

    # -- queries --

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def nodes(self) -> list[str]:
        return sorted(self._adj)

    def has_node(self, node: str) -> bool:
        return node in self._adj

    def node_attrs(self, node: str) -> dict:
        return self._attrs[node]

    def edges(self) -> list[tuple[str, str, float]]:
        """Edges as (u, v, weight) with u < v, sorted."""
        out = []
        for u, nbrs in self._adj.items():
            for v, w in nbrs.items():
                if u < v:
                    out.append((u, v, w))
        out.sort()
        return out

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj.get(u, {})

    def weight(self, u: str, v: str) -> float:
        return self._adj[u][v]

    def neighbors(self, node: str) -> list[str]:
        return sorted(self._adj[node])

    def adjacency(self, node: str) -> dict[str, float]:
        """Neighbor -> weight map (do not mutate)."""
        return self._adj[node]

    def degree(self, node: str) -> int:
        return len(self._adj[node])

    def strength(self, node: str) -> float:
        return sum(self._adj[node].values())

    @property
    def total_weight(self) -> float:
        return sum(w for _u, _v, w in self.edges())

    # -- derivation --

    def copy(self) -> "WeightedGraph":
        g = WeightedGraph()
        for node in self._adj:
            g.add_node(node, **self._attrs[node])
        for u, v, w in self.edges():
            g.add_edge(u, v, w)
        return g

    def subgraph(self, keep) -> "WeightedGraph":
        """Induced subgraph on ``keep`` (attributes carried over)."""
        keep = set(keep)
        g = WeightedGraph()
        for node in sorted(keep):
            g.add_node(node, **self._attrs[node])
        for u, v, w in self.edges():
            if u in keep and v in keep:
                g.add_edge(u, v, w)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._adj == other._adj and self._attrs == other._attrs

    def __repr__(self) -> str:
        return f"WeightedGraph(nodes={self.node_count}, edges={self.edge_count})"


# Same shape, dissimilarity weights (lower = closer).
DistanceGraph = WeightedGraph


@dataclass
class ComponentPartition:
    """Connected-component assignment; component 0 is the winner under the
    (size descending, smallest member ascending) order."""

    assignment: dict[str, int]
    sizes: list[int]


def components(g: WeightedGraph) -> ComponentPartition:
    """Connected components, indexed by size descending (ties: the component
    containing the lexicographically smallest node wins)."""
    seen: set[str] = set()
    comps: list[list[str]] = []
    for start in g.nodes():
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        members = []
        while stack:
            node = stack.pop()
            members.append(node)
            for nbr in g.adjacency(node):
                if nbr not in seen:
                    seen.add(nbr)
                    stack.append(nbr)
        comps.append(sorted(members))
    comps.sort(key=lambda members: (-len(members), members[0]))
    assignment = {node: idx for idx, members in enumerate(comps) for node in members}
    return ComponentPartition(assignment=assignment, sizes=[len(members) for members in comps])


def largest_component(g: WeightedGraph) -> WeightedGraph:
    """Induced subgraph of the largest component (empty graph passes through)."""
    if g.node_count == 0:
        return g.copy()
    part = components(g)
    keep = [node for node, idx in part.assignment.items() if idx == 0]
    return g.subgraph(keep)
