"""Co-citation mapping toolkit: ingest citation mentions, link them to a
journal catalog, build journal- and specialty-level co-citation networks,
scale them with Pathfinder, and emit indicators, tables, and map files."""

from .catalog import (
    Conflict,
    IssnChecksumError,
    IssnCharacterError,
    IssnError,
    IssnLengthError,
    JournalIndex,
    LabelVocabulary,
    UnclassifiableJournalError,
    build_journal_index,
    load_label_vocabulary,
    normalize_issn,
    parse_label_vocabulary,
    resolve_specialties,
)
from .centrality import CentralityReport, betweenness_centrality, degree_centrality
from .cocite import (
    build_cocitation_graph,
    drop_isolates,
    normalize_weights,
    prune_threshold,
    reduce_graph,
)
from .community import CommunityPartition, louvain_communities, modularity
from .corpus import (
    CitationRecord,
    CorpusSummary,
    DedupReport,
    FilterReport,
    LinkReport,
    dedupe_citations,
    filter_corpus,
    link_mentions,
    read_corpus_tsv,
    summarize_corpus,
    write_corpus_tsv,
)
from .export import (
    GraphDocument,
    read_gexf,
    read_graph_json,
    read_pajek,
    write_dot,
    write_gexf,
    write_graph_json,
    write_pajek,
)
from .graphs import DistanceGraph, WeightedGraph, components, largest_component
from .ingest import (
    EnrichReport,
    FixtureLookupClient,
    JournalRecord,
    LookupFailed,
    MediaWikiLookupClient,
    ParseReport,
    RawMention,
    enrich_issn,
    parse_altmetric_export,
    parse_scopus_source_list,
)
from .pathfinder import PathfinderParams, pathfinder, pathfinder_mst, to_distance
from .pipeline import PipelineConfig, load_config, run_pipeline
from .stats import (
    AnnualPoint,
    CoverageRow,
    JournalRow,
    SpecialtyRow,
    StatsSummary,
    annual_series,
    coverage_table,
    descriptive_stats,
    distribution_tables,
    journal_ranking,
    scopus_aggregates,
    specialty_table,
)
from .svgchart import render_annual_svg

__version__ = "1.0.0"
