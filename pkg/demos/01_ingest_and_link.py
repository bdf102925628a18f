"""
From raw mention export to a deduplicated citation corpus
==========================================================

Walks the front half of the pipeline by hand on the bundled fixtures:
parse the raw export, fill in missing ISSNs from page-lookup fixtures,
match each mention against the journal catalog, and collapse duplicate
citations of the same article within the same wiki page.
"""

from pathlib import Path
from tempfile import TemporaryDirectory

from sciomap import (
    FixtureLookupClient,
    build_journal_index,
    dedupe_citations,
    enrich_issn,
    link_mentions,
    load_label_vocabulary,
    parse_altmetric_export,
    parse_scopus_source_list,
)

DATA = Path(__file__).resolve().parent.parent / "data"

# 1. Parse the raw export. Damaged rows are skipped and reported, never fatal.
mentions, report = parse_altmetric_export(DATA / "mentions_small.csv")
print(f"parsed {report.parsed} of {report.rows} rows ({report.skipped} skipped)")

# 2. Fill in missing ISSNs from the lookup fixtures. A JSON cache file keeps
#    repeated runs from asking the same title twice; here it is throwaway.
with TemporaryDirectory() as tmp:
    enriched, enrich_report = enrich_issn(
        mentions, FixtureLookupClient(DATA / "lookup"), Path(tmp) / "cache.json"
    )
print(
    f"enrichment: {enrich_report.passthrough} already complete, "
    f"{enrich_report.hits} hit(s), {enrich_report.misses} miss(es)"
)

# 3. Link each mention to the catalog. A mention survives if one of its
#    ISSNs is in the catalog, the journal maps to at least one specialty
#    label, and a usable date is present.
journals, _ = parse_scopus_source_list(DATA / "sources_small.csv")
index, conflicts = build_journal_index(journals)
vocabulary = load_label_vocabulary(DATA / "asjc_labels.cfg")
records, link_report = link_mentions(enriched, index, vocabulary)
print(
    f"linked {link_report.linked} citations; dropped "
    f"{link_report.no_issn} without ISSN, {link_report.unknown_issn} not in catalog, "
    f"{link_report.no_date} undated, {link_report.unclassifiable} out of discipline"
)

# 4. Dedupe: within one wiki page an article counts once, latest sighting wins.
deduped, dedupe_report = dedupe_citations(records)
print(f"dedupe kept {dedupe_report.kept} of {dedupe_report.input}")

# 5. The resulting corpus, one line per retained citation.
print()
print(f"{'entry (language, page)':34} {'article':10} {'journal':9} {'date':11} labels")
for rec in deduped:
    language, page = rec.entry_id
    entry = f"{language}:{page}"
    labels = ", ".join(sorted(rec.specialties))
    print(f"{entry:34} {rec.article_id:10} {rec.journal:9} {str(rec.date):11} {labels}")
