"""Graph and table serialization: Pajek, GEXF 1.2, Graphviz dot, CSV, JSON.

Every writer is deterministic byte-for-byte given equal inputs: nodes and
edges are emitted in sorted order, numbers go through one canonical
formatter, and no timestamps or environment values leak into the files.
Pajek and GEXF writers round-trip: write -> parse -> write reproduces the
first file exactly (Pajek labels are the node ids for this reason).
"""

from __future__ import annotations

import csv
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .graphs import WeightedGraph

__all__ = [
    "GraphDocument",
    "GEXF_ATTRIBUTES",
    "fmt_number",
    "read_gexf",
    "read_graph_json",
    "read_pajek",
    "write_dot",
    "write_gexf",
    "write_graph_json",
    "write_pajek",
    "write_table_csv",
]

# The node attributes every GEXF document carries, with their GEXF types.
GEXF_ATTRIBUTES = (
    ("community", "integer"),
    ("degree", "integer"),
    ("betweenness", "double"),
    ("article_count", "integer"),
)


@dataclass
class GraphDocument:
    """A graph plus the node attribute maps destined for file output.

    ``attributes`` maps attribute name -> {node id -> value}; nodes absent
    from a map are emitted as 0. ``precision`` caps decimal places for
    weights and attribute values.
    """

    graph: WeightedGraph
    attributes: dict[str, dict[str, float]] = field(default_factory=dict)
    precision: int = 6

    def value(self, name: str, node: str) -> float:
        return self.attributes.get(name, {}).get(node, 0)


def fmt_number(x: float, precision: int = 6) -> str:
    """Fixed-precision decimal with trailing zeros trimmed: 1.0 -> "1",
    1/17 -> "0.058824". Canonical: formatting a parsed output is a no-op."""
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"cannot format non-finite value {x}")
    text = f"{x:.{precision}f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("0", "-0") and x != 0:
        raise ValueError(f"{x} underflows {precision}-decimal output")
    return text if text != "-0" else "0"


def write_pajek(doc: GraphDocument, path: str | Path) -> None:
    """Pajek .net: `*Vertices n` with 1-based ids and quoted labels, then
    `*Edges` as `i j w`. Vertices sorted by node id."""
    g = doc.graph
    nodes = g.nodes()
    index = {node: i + 1 for i, node in enumerate(nodes)}
    lines = [f"*Vertices {len(nodes)}"]
    for node in nodes:
        label = node.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'{index[node]} "{label}"')
    lines.append("*Edges")
    for u, v, w in g.edges():
        lines.append(f"{index[u]} {index[v]} {fmt_number(w, doc.precision)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_pajek(path: str | Path) -> GraphDocument:
    g = WeightedGraph()
    by_index: dict[int, str] = {}
    section = None
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("*vertices"):
            section = "vertices"
            continue
        if lowered.startswith("*edges") or lowered.startswith("*arcs"):
            section = "edges"
            continue
        if section == "vertices":
            idx_text, _, rest = line.partition(" ")
            label = rest.strip()
            if label.startswith('"') and label.endswith('"') and len(label) >= 2:
                label = label[1:-1].replace('\\"', '"').replace("\\\\", "\\")
            by_index[int(idx_text)] = label
            g.add_node(label)
        elif section == "edges":
            parts = line.split()
            if len(parts) < 3:
                raise ValueError(f"malformed edge line in {path}: {line!r}")
            u, v = by_index[int(parts[0])], by_index[int(parts[1])]
            g.add_edge(u, v, float(parts[2]))
    return GraphDocument(graph=g)


def write_gexf(doc: GraphDocument, path: str | Path) -> None:
    """Undirected GEXF 1.2 draft with the four standard node attvalues."""
    g = doc.graph
    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    out.append('<gexf xmlns="http://www.gexf.net/1.2draft" version="1.2">')
    out.append('  <graph defaultedgetype="undirected">')
    out.append('    <attributes class="node">')
    for attr_id, (name, gexf_type) in enumerate(GEXF_ATTRIBUTES):
        out.append(f'      <attribute id="{attr_id}" title="{name}" type="{gexf_type}"/>')
    out.append("    </attributes>")
    out.append("    <nodes>")
    for node in g.nodes():
        ident = quoteattr(node)
        out.append(f"      <node id={ident} label={ident}>")
        out.append("        <attvalues>")
        for attr_id, (name, gexf_type) in enumerate(GEXF_ATTRIBUTES):
            value = doc.value(name, node)
            if gexf_type == "integer":
                text = str(int(value))
            else:
                text = fmt_number(float(value), doc.precision)
            out.append(f'          <attvalue for="{attr_id}" value="{text}"/>')
        out.append("        </attvalues>")
        out.append("      </node>")
    out.append("    </nodes>")
    out.append("    <edges>")
    for edge_id, (u, v, w) in enumerate(g.edges()):
        out.append(
            f'      <edge id="{edge_id}" source={quoteattr(u)} target={quoteattr(v)}'
            f' weight="{fmt_number(w, doc.precision)}"/>'
        )
    out.append("    </edges>")
    out.append("  </graph>")
    out.append("</gexf>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def read_gexf(path: str | Path) -> GraphDocument:
    ns = {"g": "http://www.gexf.net/1.2draft"}
    root = ET.parse(path).getroot()
    graph_el = root.find("g:graph", ns)
    if graph_el is None:
        raise ValueError(f"{path} has no graph element")
    titles: dict[str, str] = {}
    types: dict[str, str] = {}
    for attr in graph_el.iterfind("g:attributes/g:attribute", ns):
        titles[attr.get("id", "")] = attr.get("title", "")
        types[attr.get("id", "")] = attr.get("type", "double")
    g = WeightedGraph()
    attributes: dict[str, dict[str, float]] = {name: {} for name, _ in GEXF_ATTRIBUTES}
    for node in graph_el.iterfind("g:nodes/g:node", ns):
        ident = node.get("id", "")
        g.add_node(ident)
        for av in node.iterfind("g:attvalues/g:attvalue", ns):
            name = titles.get(av.get("for", ""), "")
            raw = av.get("value", "0")
            if name:
                kind = types.get(av.get("for", ""), "double")
                attributes.setdefault(name, {})[ident] = (
                    int(raw) if kind == "integer" else float(raw)
                )
    for edge in graph_el.iterfind("g:edges/g:edge", ns):
        g.add_edge(edge.get("source"), edge.get("target"), float(edge.get("weight", "1")))
    return GraphDocument(graph=g, attributes=attributes)


def write_dot(doc: GraphDocument, path: str | Path) -> None:
    """Graphviz undirected graph; one line per node and per edge."""
    g = doc.graph
    if g.node_count == 0:
        Path(path).write_text("graph G { }\n", encoding="utf-8")
        return
    lines = ["graph G {"]
    for node in g.nodes():
        lines.append(f'  "{_dot_escape(node)}";')
    for u, v, w in g.edges():
        text = fmt_number(w, doc.precision)
        lines.append(
            f'  "{_dot_escape(u)}" -- "{_dot_escape(v)}" [weight={text}, label="{text}"];'
        )
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _dot_escape(name: str) -> str:
    return name.replace("\\", "\\\\").replace('"', '\\"')


def write_graph_json(doc: GraphDocument, path: str | Path) -> None:
    """Stage-interchange format: full graph, node attrs, and attribute maps.
    JSON floats round-trip exactly, so rehydrated weights are bit-equal."""
    g = doc.graph
    payload = {
        "nodes": [{"id": node, "attrs": g.node_attrs(node)} for node in g.nodes()],
        "edges": [[u, v, w] for u, v, w in g.edges()],
        "attributes": {
            name: dict(sorted(values.items()))
            for name, values in sorted(doc.attributes.items())
        },
    }
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def read_graph_json(path: str | Path) -> GraphDocument:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    g = WeightedGraph()
    for entry in payload["nodes"]:
        attrs = entry.get("attrs", {})
        # JSON turns tuples into lists; put specialty tuples back.
        if isinstance(attrs.get("specialties"), list):
            attrs = dict(attrs, specialties=tuple(attrs["specialties"]))
        g.add_node(entry["id"], **attrs)
    for u, v, w in payload["edges"]:
        g.add_edge(u, v, float(w))
    return GraphDocument(graph=g, attributes=payload.get("attributes", {}))


def write_table_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    """RFC-4180-quoted CSV; numbers already formatted by the caller."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
