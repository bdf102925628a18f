"""Config-driven pipeline: each stage reads files the previous stage wrote.

The one-shot runner executes the exact same stage functions the per-stage
subcommands call, in the same order, against the same intermediate files
under ``out/stage-NN-name/``. Composing subcommands by hand is therefore
identical to a single run by construction.

Determinism contract: every stage output is a pure function of the config
values and the input file bytes. No stage writes timestamps, absolute
paths, or host details; ``manifest.json`` maps each output's relative path
to its SHA-256 digest.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import catalog, cocite, corpus, ingest, stats, svgchart
from .centrality import betweenness_centrality, degree_centrality
from .community import louvain_communities
from .export import (
    GraphDocument,
    fmt_number,
    read_graph_json,
    write_dot,
    write_gexf,
    write_graph_json,
    write_pajek,
    write_table_csv,
)
from .graphs import WeightedGraph
from .pathfinder import PathfinderParams, pathfinder, to_distance

__all__ = ["PipelineConfig", "STAGES", "load_config", "run_pipeline", "run_stage"]

CACHE_ENV = "SCIOMAP_CACHE"


@dataclass
class PipelineConfig:
    """Everything a run depends on; loadable from TOML, overridable by flags."""

    mentions_path: Path
    sources_path: Path
    labels_path: Path
    out_dir: Path = Path("out")
    lookup_dir: Path | None = None
    endpoint: str = "https://en.wikipedia.org/w/api.php"
    offline: bool = True
    discipline_labels: tuple[str, ...] = ()
    window: tuple[int, int] = (2007, 2017)
    min_weight: float = 6.0
    counting: str = "entries"
    level: str = "both"
    r: float = math.inf
    q: int | None = None
    resolution: float = 1.0
    seed: int = 0
    top_k: int = 25
    jobs: int = 1
    date_basis: str = "mention"

    def validate(self) -> None:
        for label, path in (
            ("mentions", self.mentions_path),
            ("sources", self.sources_path),
            ("labels", self.labels_path),
        ):
            if not Path(path).is_file():
                raise FileNotFoundError(f"{label} input does not exist: {path}")
        if self.min_weight < 0:
            raise ValueError(f"min_weight must be >= 0, got {self.min_weight}")
        if self.window[0] > self.window[1]:
            raise ValueError(f"window lo > hi: {self.window}")
        if self.counting not in ("entries", "pairs"):
            raise ValueError(f"unknown counting mode {self.counting!r}")
        if self.level not in ("journal", "specialty", "both"):
            raise ValueError(f"unknown level {self.level!r}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        PathfinderParams(r=self.r, q=self.q)

    @property
    def levels(self) -> tuple[str, ...]:
        return ("journal", "specialty") if self.level == "both" else (self.level,)

    def stage_dir(self, name: str) -> Path:
        return Path(self.out_dir) / name

    def cache_path(self) -> Path:
        env = os.environ.get(CACHE_ENV)
        if env:
            return Path(env)
        return self.stage_dir("stage-02-enrich") / "issn_cache.json"


def parse_r(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    value = float(text)
    return value


def parse_q(text: str) -> int | None:
    if text.strip().lower() == "max":
        return None
    return int(text)


def parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"window must look like Y1:Y2, got {text!r}")
    return int(lo), int(hi)


def load_config(path: str | Path, overrides: dict | None = None) -> PipelineConfig:
    """Read a TOML config; relative paths resolve against the file's folder."""
    config_path = Path(path)
    with open(config_path, "rb") as fh:
        raw = tomllib.load(fh)
    base = config_path.parent

    def to_path(key):
        return base / Path(raw[key]) if key in raw else None

    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "mentions_path" not in raw or "sources_path" not in raw or "labels_path" not in raw:
        raise ValueError("config must set mentions_path, sources_path and labels_path")

    cfg = PipelineConfig(
        mentions_path=to_path("mentions_path"),
        sources_path=to_path("sources_path"),
        labels_path=to_path("labels_path"),
    )
    if "out_dir" in raw:
        cfg.out_dir = base / Path(raw["out_dir"])
    if "lookup_dir" in raw:
        cfg.lookup_dir = to_path("lookup_dir")
    for key in (
        "endpoint",
        "offline",
        "counting",
        "level",
        "resolution",
        "seed",
        "top_k",
        "jobs",
        "date_basis",
        "min_weight",
    ):
        if key in raw:
            setattr(cfg, key, raw[key])
    if "discipline_labels" in raw:
        cfg.discipline_labels = tuple(raw["discipline_labels"])
    if "window" in raw:
        value = raw["window"]
        cfg.window = parse_window(value) if isinstance(value, str) else (value[0], value[1])
    if "r" in raw:
        cfg.r = parse_r(str(raw["r"]))
    if "q" in raw:
        cfg.q = parse_q(str(raw["q"]))
    if overrides:
        cfg = replace(cfg, **overrides)
    cfg.min_weight = float(cfg.min_weight)
    cfg.seed = int(cfg.seed)
    cfg.validate()
    return cfg


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _read_json(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


def _load_catalog(cfg: PipelineConfig):
    journals, _report = ingest.parse_scopus_source_list(cfg.sources_path)
    index, conflicts = catalog.build_journal_index(journals)
    vocabulary = catalog.load_label_vocabulary(cfg.labels_path)
    return journals, index, conflicts, vocabulary


# --- stages ---------------------------------------------------------------


def stage_ingest(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-01-ingest")
    out.mkdir(parents=True, exist_ok=True)
    mentions, report = ingest.parse_altmetric_export(cfg.mentions_path)
    ingest.write_mentions_csv(mentions, out / "mentions.csv")
    _write_json(
        out / "report.json",
        {
            "rows": report.rows,
            "parsed": report.parsed,
            "skipped": report.skipped,
            "messages": report.messages,
        },
    )


def stage_enrich(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-02-enrich")
    out.mkdir(parents=True, exist_ok=True)
    mentions, _ = ingest.parse_altmetric_export(cfg.stage_dir("stage-01-ingest") / "mentions.csv")
    if cfg.offline:
        client = ingest.FixtureLookupClient(cfg.lookup_dir) if cfg.lookup_dir else None
    else:
        client = ingest.MediaWikiLookupClient(cfg.endpoint)
    if client is None:
        enriched, report = mentions, ingest.EnrichReport(passthrough=len(mentions))
    else:
        cache = cfg.cache_path()
        cache.parent.mkdir(parents=True, exist_ok=True)
        enriched, report = ingest.enrich_issn(mentions, client, cache)
    ingest.write_mentions_csv(enriched, out / "mentions.csv")
    _write_json(
        out / "report.json",
        {
            "passthrough": report.passthrough,
            "looked_up": report.looked_up,
            "hits": report.hits,
            "misses": report.misses,
            "from_cache": report.from_cache,
        },
    )


def stage_link(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-03-link")
    out.mkdir(parents=True, exist_ok=True)
    mentions, _ = ingest.parse_altmetric_export(cfg.stage_dir("stage-02-enrich") / "mentions.csv")
    _journals, index, conflicts, vocabulary = _load_catalog(cfg)
    records, report = corpus.link_mentions(mentions, index, vocabulary, cfg.date_basis)
    corpus.write_corpus_tsv(records, out / "corpus.tsv")
    _write_json(
        out / "report.json",
        {
            "linked": report.linked,
            "no_issn": report.no_issn,
            "unknown_issn": report.unknown_issn,
            "no_date": report.no_date,
            "unclassifiable": report.unclassifiable,
            "catalog_conflicts": len(conflicts),
        },
    )


def stage_dedupe(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-04-dedupe")
    out.mkdir(parents=True, exist_ok=True)
    records = corpus.read_corpus_tsv(cfg.stage_dir("stage-03-link") / "corpus.tsv")
    deduped, report = corpus.dedupe_citations(records)
    corpus.write_corpus_tsv(deduped, out / "corpus.tsv")
    _write_json(
        out / "report.json",
        {"input": report.input, "kept": report.kept, "removed": report.removed},
    )


def stage_filter(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-05-filter")
    out.mkdir(parents=True, exist_ok=True)
    records = corpus.read_corpus_tsv(cfg.stage_dir("stage-04-dedupe") / "corpus.tsv")
    link_report = _read_json(cfg.stage_dir("stage-03-link") / "report.json")
    kept, report = corpus.filter_corpus(
        records,
        discipline_labels=set(cfg.discipline_labels) or None,
        year_window=cfg.window,
        undated_excluded_at_link=link_report.get("no_date", 0),
    )
    corpus.write_corpus_tsv(kept, out / "corpus.tsv")
    _write_json(
        out / "report.json",
        {
            "input": report.input,
            "kept": report.kept,
            "dropped_window": report.dropped_window,
            "dropped_discipline": report.dropped_discipline,
            "undated_excluded_at_link": report.undated_excluded_at_link,
        },
    )


def stage_summary(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-06-summary")
    out.mkdir(parents=True, exist_ok=True)
    records = corpus.read_corpus_tsv(cfg.stage_dir("stage-05-filter") / "corpus.tsv")
    summary = corpus.summarize_corpus(records)
    _write_json(
        out / "summary.json",
        {
            "entries": summary.entries,
            "citations": summary.citations,
            "articles": summary.articles,
            "journals": summary.journals,
            "language_shares": summary.language_shares,
        },
    )


def stage_cocite(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-07-cocite")
    out.mkdir(parents=True, exist_ok=True)
    records = corpus.read_corpus_tsv(cfg.stage_dir("stage-05-filter") / "corpus.tsv")
    for level in cfg.levels:
        g = cocite.build_cocitation_graph(records, level=level, counting=cfg.counting)
        write_graph_json(GraphDocument(graph=g), out / f"{level}.json")


def stage_prune(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-08-prune")
    out.mkdir(parents=True, exist_ok=True)
    counts = {}
    for level in cfg.levels:
        doc = read_graph_json(cfg.stage_dir("stage-07-cocite") / f"{level}.json")
        g = doc.graph
        pruned = cocite.prune_threshold(g, cfg.min_weight)
        connected = cocite.drop_isolates(pruned)
        normalized = cocite.normalize_weights(connected)
        reduced = cocite.largest_component(normalized)
        write_graph_json(GraphDocument(graph=reduced), out / f"{level}.json")
        counts[level] = {
            "input_nodes": g.node_count,
            "input_edges": g.edge_count,
            "pruned_edges": g.edge_count - pruned.edge_count,
            "isolates_dropped": pruned.node_count - connected.node_count,
            "kept_nodes": reduced.node_count,
            "kept_edges": reduced.edge_count,
        }
    _write_json(out / "report.json", counts)


def stage_pathfinder(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-09-pathfinder")
    out.mkdir(parents=True, exist_ok=True)
    for level in cfg.levels:
        doc = read_graph_json(cfg.stage_dir("stage-08-prune") / f"{level}.json")
        distances = to_distance(doc.graph)
        pfnet = pathfinder(distances, PathfinderParams(r=cfg.r, q=cfg.q))
        write_graph_json(GraphDocument(graph=pfnet), out / f"{level}.json")


def _similarity_subgraph(similar: WeightedGraph, template: WeightedGraph) -> WeightedGraph:
    """Restrict the similarity graph to the template's node and edge sets."""
    out = WeightedGraph()
    for node in template.nodes():
        out.add_node(node, **similar.node_attrs(node))
    for u, v, _w in template.edges():
        out.add_edge(u, v, similar.weight(u, v))
    return out


def stage_centrality(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-10-centrality")
    out.mkdir(parents=True, exist_ok=True)
    for level in cfg.levels:
        reduced = read_graph_json(cfg.stage_dir("stage-08-prune") / f"{level}.json").graph
        pfnet = read_graph_json(cfg.stage_dir("stage-09-pathfinder") / f"{level}.json").graph
        payload = {}
        for name, graph in (("reduced", reduced), ("pfnet", pfnet)):
            degrees = degree_centrality(graph)
            between = betweenness_centrality(graph, weighted=False, jobs=cfg.jobs)
            payload[name] = {
                "degree": degrees.degree,
                "normalized_degree": degrees.normalized_degree,
                "strength": degrees.strength,
                "betweenness": between.betweenness,
            }
        _write_json(out / f"{level}.json", payload)


def stage_cluster(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-11-cluster")
    out.mkdir(parents=True, exist_ok=True)
    for level in cfg.levels:
        reduced = read_graph_json(cfg.stage_dir("stage-08-prune") / f"{level}.json").graph
        pfnet = read_graph_json(cfg.stage_dir("stage-09-pathfinder") / f"{level}.json").graph
        # Cluster the map the reader sees: PFNET topology, similarity weights.
        similarity = _similarity_subgraph(reduced, pfnet)
        partition = louvain_communities(similarity, resolution=cfg.resolution, seed=cfg.seed)
        _write_json(
            out / f"{level}.json",
            {"assignment": partition.assignment, "modularity": partition.modularity},
        )


def stage_tables(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-12-tables")
    out.mkdir(parents=True, exist_ok=True)
    records = corpus.read_corpus_tsv(cfg.stage_dir("stage-05-filter") / "corpus.tsv")
    journals, index, _conflicts, vocabulary = _load_catalog(cfg)

    def num(x) -> str:
        return fmt_number(float(x), 6)

    if records:
        tables = stats.distribution_tables(records)
        rows = [
            [scope, num(s.mean), num(s.median), num(s.mode), num(s.std_dev), num(s.range), s.n]
            for scope, s in (("per_entry", tables["per_entry"]), ("per_article", tables["per_article"]))
        ]
    else:
        rows = []
    write_table_csv(
        out / "table1_distribution.csv",
        ["scope", "mean", "median", "mode", "std_dev", "range", "n"],
        rows,
    )

    specialty_rows = stats.specialty_table(records, index)
    write_table_csv(
        out / "table2_specialties.csv",
        [
            "specialty",
            "journals_cited",
            "share_journals",
            "share_journals_normalized",
            "articles_cited",
            "citations",
            "share_citations",
            "share_citations_normalized",
            "mean_citations_per_article",
            "std_citations_per_article",
        ],
        [
            [
                row.specialty,
                row.journals_cited,
                num(row.share_journals),
                num(row.share_journals_normalized),
                row.articles_cited,
                row.citations,
                num(row.share_citations),
                num(row.share_citations_normalized),
                num(row.mean_citations_per_article),
                num(row.std_citations_per_article),
            ]
            for row in specialty_rows
        ],
    )

    ranking = stats.journal_ranking(records, index, cfg.top_k) if records else []
    write_table_csv(
        out / "table3_journals.csv",
        ["rank", "title", "citations", "articles_cited", "mean_citations", "open_access", "top_journal"],
        [
            [
                row.rank,
                row.title,
                row.citations,
                row.articles_cited,
                num(row.mean_citations),
                str(row.open_access).lower(),
                str(row.top_journal).lower(),
            ]
            for row in ranking
        ],
    )

    aggregates = stats.scopus_aggregates(journals, vocabulary)
    coverage = stats.coverage_table(records, aggregates)
    write_table_csv(
        out / "table4_coverage.csv",
        [
            "specialty",
            "wiki_article_share",
            "wiki_citation_share",
            "scopus_article_share",
            "scopus_citation_share",
        ],
        [
            [
                row.specialty,
                num(row.wiki_article_share),
                num(row.wiki_citation_share),
                num(row.scopus_article_share),
                num(row.scopus_citation_share),
            ]
            for row in coverage
        ],
    )

    series = stats.annual_series(records)
    write_table_csv(
        out / "annual_series.csv",
        ["year", "citations", "mean_citations_per_article"],
        [[p.year, p.citations, num(p.mean_citations_per_article)] for p in series],
    )


def stage_plot(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-13-plot")
    out.mkdir(parents=True, exist_ok=True)
    records = corpus.read_corpus_tsv(cfg.stage_dir("stage-05-filter") / "corpus.tsv")
    series = stats.annual_series(records)
    target = out / "annual_citations.svg"
    if series:
        svgchart.render_annual_svg(series, target)
    else:
        # Degenerate corpora still yield a complete output tree.
        target.write_text(
            '<svg xmlns="http://www.w3.org/2000/svg" width="960" height="540"/>\n',
            encoding="utf-8",
        )


def stage_export(cfg: PipelineConfig) -> None:
    out = cfg.stage_dir("stage-14-export")
    out.mkdir(parents=True, exist_ok=True)
    for level in cfg.levels:
        reduced = read_graph_json(cfg.stage_dir("stage-08-prune") / f"{level}.json").graph
        pfnet = read_graph_json(cfg.stage_dir("stage-09-pathfinder") / f"{level}.json").graph
        central = _read_json(cfg.stage_dir("stage-10-centrality") / f"{level}.json")
        cluster = _read_json(cfg.stage_dir("stage-11-cluster") / f"{level}.json")
        article_counts = {
            node: pfnet.node_attrs(node).get("article_count", 0) for node in pfnet.nodes()
        }
        doc = GraphDocument(
            graph=pfnet,
            attributes={
                "community": cluster["assignment"],
                "degree": central["pfnet"]["degree"],
                "betweenness": central["pfnet"]["betweenness"],
                "article_count": article_counts,
            },
        )
        write_pajek(doc, out / f"{level}_pfnet.net")
        write_gexf(doc, out / f"{level}_pfnet.gexf")
        write_dot(doc, out / f"{level}_pfnet.dot")
        write_pajek(GraphDocument(graph=reduced), out / f"{level}_reduced.net")
        write_table_csv(
            out / f"{level}_nodes.csv",
            ["node", "community", "degree", "betweenness", "article_count"],
            [
                [
                    node,
                    int(doc.value("community", node)),
                    int(doc.value("degree", node)),
                    fmt_number(float(doc.value("betweenness", node)), 6),
                    int(doc.value("article_count", node)),
                ]
                for node in pfnet.nodes()
            ],
        )


STAGES: list[tuple[str, str]] = [
    ("ingest", "stage-01-ingest"),
    ("enrich", "stage-02-enrich"),
    ("link", "stage-03-link"),
    ("dedupe", "stage-04-dedupe"),
    ("filter", "stage-05-filter"),
    ("summary", "stage-06-summary"),
    ("cocite", "stage-07-cocite"),
    ("prune", "stage-08-prune"),
    ("pathfinder", "stage-09-pathfinder"),
    ("centrality", "stage-10-centrality"),
    ("cluster", "stage-11-cluster"),
    ("tables", "stage-12-tables"),
    ("plot", "stage-13-plot"),
    ("export", "stage-14-export"),
]

_STAGE_FUNCTIONS = {
    "ingest": stage_ingest,
    "enrich": stage_enrich,
    "link": stage_link,
    "dedupe": stage_dedupe,
    "filter": stage_filter,
    "summary": stage_summary,
    "cocite": stage_cocite,
    "prune": stage_prune,
    "pathfinder": stage_pathfinder,
    "centrality": stage_centrality,
    "cluster": stage_cluster,
    "tables": stage_tables,
    "plot": stage_plot,
    "export": stage_export,
}


def run_stage(cfg: PipelineConfig, name: str) -> None:
    _STAGE_FUNCTIONS[name](cfg)


def _manifest(cfg: PipelineConfig, status: str, failed_stage: str | None = None) -> Path:
    """Digest every file under the output tree (manifest itself excluded)."""
    root = Path(cfg.out_dir)
    files = {}
    for path in sorted(root.rglob("*")):
        if not path.is_file() or path.name == "manifest.json":
            continue
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        files[path.relative_to(root).as_posix()] = digest
    payload: dict = {"status": status, "files": files}
    if failed_stage:
        payload["failed_stage"] = failed_stage
    target = root / "manifest.json"
    _write_json(target, payload)
    return target


def run_pipeline(cfg: PipelineConfig) -> Path:
    """Run all stages; always leave a manifest, even after a failure."""
    cfg.validate()
    Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)
    for name, _dirname in STAGES:
        try:
            run_stage(cfg, name)
        except Exception:
            _manifest(cfg, "failed", failed_stage=name)
            raise
    return _manifest(cfg, "ok")
