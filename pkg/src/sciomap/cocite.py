"""Co-citation graph construction and the pruning/normalization pipeline.

Two documents are co-cited when the same entry cites them both. At the
journal level an edge joins two journals cited together by an entry; at the
specialty level an edge joins two labels, but only when the pair arises from
two *different* journals — label pairs produced inside one multi-specialty
journal are latent co-citations and never counted.
"""

from __future__ import annotations

from itertools import combinations

from .graphs import WeightedGraph, largest_component

__all__ = [
    "build_cocitation_graph",
    "prune_threshold",
    "drop_isolates",
    "normalize_weights",
    "reduce_graph",
]


def build_cocitation_graph(records, level: str = "journal", counting: str = "entries") -> WeightedGraph:
    """Build the co-citation graph for deduplicated citation records.

    level:
        ``"journal"`` — nodes are journal ISSNs; an entry citing articles
        in journals A and B contributes to edge A-B.
        ``"specialty"`` — nodes are specialty labels; each article carries
        all its journal's labels and only cross-journal label pairs count.
    counting:
        ``"entries"`` — +1 per citing entry exhibiting the pair (binary).
        ``"pairs"`` — +1 per cross article pair exhibiting it.

    Only co-cited nodes appear (every node has at least one incident edge).
    Node attributes: ``label``, ``specialties``, and ``article_count`` (the
    distinct articles under the node involved in at least one co-citation).
    """
    if level not in ("journal", "specialty"):
        raise ValueError(f"level must be 'journal' or 'specialty', got {level!r}")
    if counting not in ("entries", "pairs"):
        raise ValueError(f"counting must be 'entries' or 'pairs', got {counting!r}")

    by_entry: dict[tuple[str, str], list] = {}
    for rec in records:
        by_entry.setdefault(rec.entry_id, []).append(rec)

    weights: dict[tuple[str, str], float] = {}
    involved: dict[str, set[str]] = {}
    node_specialties: dict[str, set[str]] = {}

    for entry_id in sorted(by_entry):
        entry_records = by_entry[entry_id]
        if level == "journal":
            _accumulate_journal(entry_records, counting, weights, involved)
        else:
            _accumulate_specialty(entry_records, counting, weights, involved)
        for rec in entry_records:
            if level == "journal":
                node_specialties.setdefault(rec.journal, set()).update(rec.specialties)
            else:
                for label in rec.specialties:
                    node_specialties.setdefault(label, set()).add(label)

    g = WeightedGraph()
    for (u, v), w in sorted(weights.items()):
        g.add_edge(u, v, w)
    for node in g.nodes():
        g.add_node(
            node,
            label=node,
            specialties=tuple(sorted(node_specialties.get(node, ()))),
            article_count=len(involved.get(node, ())),
        )
    return g


def _accumulate_journal(entry_records, counting, weights, involved) -> None:
    per_journal: dict[str, set[str]] = {}
    for rec in entry_records:
        per_journal.setdefault(rec.journal, set()).add(rec.article_id)
    if len(per_journal) < 2:
        return
    for a, b in combinations(sorted(per_journal), 2):
        key = (a, b)
        if counting == "entries":
            weights[key] = weights.get(key, 0) + 1
        else:
            weights[key] = weights.get(key, 0) + len(per_journal[a]) * len(per_journal[b])
    # Every article here has a partner in some other journal, so all are involved.
    for journal, articles in per_journal.items():
        involved.setdefault(journal, set()).update(articles)


def _accumulate_specialty(entry_records, counting, weights, involved) -> None:
    articles: dict[str, tuple[str, frozenset[str]]] = {}
    for rec in entry_records:
        articles[rec.article_id] = (rec.journal, rec.specialties)
    entry_pairs: set[tuple[str, str]] = set()
    for (a1, (j1, labels1)), (a2, (j2, labels2)) in combinations(sorted(articles.items()), 2):
        if j1 == j2:
            continue  # latent co-citation: same journal cannot pair its own labels
        pair_labels = set()
        for x in labels1:
            for y in labels2:
                if x != y:
                    pair_labels.add((x, y) if x < y else (y, x))
        if not pair_labels:
            continue
        for key in pair_labels:
            if counting == "pairs":
                weights[key] = weights.get(key, 0) + 1
            else:
                entry_pairs.add(key)
        for label in labels1:
            if labels2 - {label}:
                involved.setdefault(label, set()).add(a1)
        for label in labels2:
            if labels1 - {label}:
                involved.setdefault(label, set()).add(a2)
    if counting == "entries":
        for key in entry_pairs:
            weights[key] = weights.get(key, 0) + 1


def prune_threshold(g: WeightedGraph, min_weight: float) -> WeightedGraph:
    """Remove edges with weight strictly below ``min_weight``; nodes untouched."""
    if min_weight < 0:
        raise ValueError(f"min_weight must be >= 0, got {min_weight}")
    out = WeightedGraph()
    for node in g.nodes():
        out.add_node(node, **g.node_attrs(node))
    for u, v, w in g.edges():
        if w >= min_weight:
            out.add_edge(u, v, w)
    return out


def drop_isolates(g: WeightedGraph) -> WeightedGraph:
    """Remove nodes with no incident edges."""
    keep = [node for node in g.nodes() if g.degree(node) > 0]
    return g.subgraph(keep)


def normalize_weights(g: WeightedGraph) -> WeightedGraph:
    """Divide every weight by the maximum weight (max becomes exactly 1.0).

    Preserves the edge set and the weight ordering; a graph with no edges
    passes through unchanged.
    """
    edges = g.edges()
    if not edges:
        return g.copy()
    max_weight = max(w for _u, _v, w in edges)
    out = WeightedGraph()
    for node in g.nodes():
        out.add_node(node, **g.node_attrs(node))
    for u, v, w in edges:
        out.add_edge(u, v, w / max_weight)
    return out


def reduce_graph(g: WeightedGraph, min_weight: float) -> WeightedGraph:
    """The fixed reduction sequence applied before scaling a map:
    prune below ``min_weight``, drop the isolates that produces, normalize
    weights into (0, 1], and keep the largest connected component."""
    return largest_component(normalize_weights(drop_isolates(prune_threshold(g, min_weight))))
