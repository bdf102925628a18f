"""
Specialty co-citation: build, prune, scale, and read the map
=============================================================

Two articles are co-cited when the same wiki page cites both. Rolling the
pair up to the journals' specialty labels gives a similarity network over
specialties; Pathfinder scaling then keeps only the links no cheaper
detour can explain, which is the map a reader actually looks at.
"""

from pathlib import Path
from tempfile import TemporaryDirectory

from sciomap import (
    FixtureLookupClient,
    PathfinderParams,
    betweenness_centrality,
    build_cocitation_graph,
    build_journal_index,
    dedupe_citations,
    degree_centrality,
    enrich_issn,
    link_mentions,
    load_label_vocabulary,
    louvain_communities,
    parse_altmetric_export,
    parse_scopus_source_list,
    pathfinder,
    reduce_graph,
    to_distance,
)

DATA = Path(__file__).resolve().parent.parent / "data"

# 1. Reassemble the deduplicated corpus (see demo 01 for the slow walk).
mentions, _ = parse_altmetric_export(DATA / "mentions_small.csv")
with TemporaryDirectory() as tmp:
    mentions, _ = enrich_issn(
        mentions, FixtureLookupClient(DATA / "lookup"), Path(tmp) / "cache.json"
    )
journals, _ = parse_scopus_source_list(DATA / "sources_small.csv")
index, _ = build_journal_index(journals)
vocabulary = load_label_vocabulary(DATA / "asjc_labels.cfg")
records, _ = link_mentions(mentions, index, vocabulary)
records, _ = dedupe_citations(records)

# 2. Count co-citations between specialty labels. "entries" counting scores
#    each wiki page at most once per label pair; pairs within a single
#    journal are skipped so multi-label journals cannot co-cite themselves.
g = build_cocitation_graph(records, level="specialty", counting="entries")
print("raw specialty co-citation graph:")
for u, v, w in g.edges():
    print(f"  {u} -- {v}: {w:g}")

# 3. Reduce: threshold, drop isolates, rescale weights into (0, 1] with the
#    strongest link at exactly 1, and keep the largest connected component.
reduced = reduce_graph(g, min_weight=1.0)
print("\nafter threshold/normalize/largest-component:")
for u, v, w in reduced.edges():
    print(f"  {u} -- {v}: {w:g}")

# 4. Pathfinder scaling. Weights are similarities, so invert them into
#    distances first; r=inf keeps an edge only if no path between its ends
#    has a smaller maximum step.
pfnet = pathfinder(to_distance(reduced), PathfinderParams(r=float("inf"), q=None))
print("\nPathfinder network (r=inf, q=n-1):")
for u, v, w in pfnet.edges():
    print(f"  {u} -- {v}: distance {w:g}")

# 5. Who holds the map together: degree and betweenness on the PFNET.
degrees = degree_centrality(pfnet)
between = betweenness_centrality(pfnet)
print("\ncentrality on the map:")
for node in pfnet.nodes():
    print(
        f"  {node}: degree {degrees.degree[node]}, "
        f"betweenness {between.betweenness[node]:g}"
    )

# 6. Communities on the same topology, using the similarity weights.
partition = louvain_communities(reduced, seed=42)
print(f"\ncommunities (modularity {partition.modularity:g}):")
groups: dict = {}
for node, community in partition.assignment.items():
    groups.setdefault(community, []).append(node)
for community in sorted(groups):
    print(f"  {community}: {', '.join(sorted(groups[community]))}")
