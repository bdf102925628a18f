"""
Citation indicators: distributions, specialties, journals, coverage
====================================================================

The same corpus, summarized four ways: how citations spread over entries
and articles, which specialty labels draw them, which journals rank on
top, and how the wiki-side shares compare against the catalog's own
output and citation volumes. Finishes with the citations-per-year series.
"""

from pathlib import Path
from tempfile import TemporaryDirectory

from sciomap import (
    FixtureLookupClient,
    annual_series,
    build_journal_index,
    coverage_table,
    dedupe_citations,
    distribution_tables,
    enrich_issn,
    journal_ranking,
    link_mentions,
    load_label_vocabulary,
    parse_altmetric_export,
    parse_scopus_source_list,
    scopus_aggregates,
    specialty_table,
)

DATA = Path(__file__).resolve().parent.parent / "data"

# 1. Reassemble the deduplicated corpus (demo 01 walks these steps slowly).
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

# 2. Distribution of citations per entry and per cited article.
print("distributions:")
for scope, s in distribution_tables(records).items():
    print(
        f"  {scope}: mean {s.mean:g}, median {s.median:g}, mode {s.mode:g}, "
        f"std {s.std_dev:.3f}, range {s.range:g}, n {s.n}"
    )

# 3. Specialty indicators. Multi-label journals count once per label, so the
#    raw shares can sum past 1; the normalized shares sum to exactly 1.
print("\nspecialties:")
for row in specialty_table(records, index):
    print(
        f"  {row.specialty}: {row.citations} citations from {row.journals_cited} "
        f"journal(s), {row.articles_cited} article(s), normalized citation "
        f"share {row.share_citations_normalized:.3f}"
    )

# 4. Journal ranking; ties break alphabetically. ``top`` marks journals at
#    or above the catalog's 10th citation percentile.
print("\njournals:")
for row in journal_ranking(records, index, k=5):
    flags = ("open-access" if row.open_access else "") + (" top" if row.top_journal else "")
    print(
        f"  {row.rank}. {row.title}: {row.citations} citations over "
        f"{row.articles_cited} article(s), mean {row.mean_citations:g}{flags and ' [' + flags.strip() + ']'}"
    )

# 5. Wiki-side vs catalog-side shares per specialty.
print("\ncoverage (wiki vs catalog):")
aggregates = scopus_aggregates(journals, vocabulary)
for row in coverage_table(records, aggregates):
    print(
        f"  {row.specialty}: wiki citations {row.wiki_citation_share:.3f} "
        f"vs catalog citations {row.scopus_citation_share:.3f}"
    )

# 6. Citations per year, with the per-article mean for that year.
print("\nannual series:")
for point in annual_series(records):
    print(
        f"  {point.year}: {point.citations} citation(s), "
        f"{point.mean_citations_per_article:g} per cited article"
    )
