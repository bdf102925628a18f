"""Linking mentions to journals, deduplication, filtering, and persistence.

The persisted corpus format (``corpus.tsv``) is one record per line,
tab-separated, sorted by (entry, article) for byte-stable output::

    wiki_language  wiki_page_title  article_id  issn  specialties(;-sep)  date  year
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .catalog import (
    IssnError,
    JournalIndex,
    LabelVocabulary,
    UnclassifiableJournalError,
    normalize_issn,
    resolve_specialties,
)

__all__ = [
    "CitationRecord",
    "LinkReport",
    "DedupReport",
    "FilterReport",
    "CorpusSummary",
    "link_mentions",
    "dedupe_citations",
    "filter_corpus",
    "summarize_corpus",
    "write_corpus_tsv",
    "read_corpus_tsv",
]


@dataclass(frozen=True)
class CitationRecord:
    """A linked, deduplicatable (entry, article, journal, date) fact.

    ``entry_id`` is the (language, page title) pair; ``article_id`` is the
    DOI when present, else the mention id. ``journal`` is the canonical
    primary ISSN of the resolved journal record. ``mention_id`` is retained
    for audit and is not persisted.
    """

    entry_id: tuple[str, str]
    article_id: str
    journal: str
    specialties: frozenset[str]
    date: date
    year: int
    mention_id: str | None = None

    def sort_key(self):
        return (self.entry_id[0], self.entry_id[1], self.article_id)


@dataclass
class LinkReport:
    """Counts of mentions that did or did not become citation records."""

    linked: int = 0
    no_issn: int = 0
    unknown_issn: int = 0
    no_date: int = 0
    unclassifiable: int = 0

    @property
    def dropped(self) -> int:
        return self.no_issn + self.unknown_issn + self.no_date + self.unclassifiable


@dataclass
class DedupReport:
    input: int = 0
    kept: int = 0
    removed: int = 0


@dataclass
class FilterReport:
    input: int = 0
    kept: int = 0
    dropped_window: int = 0
    dropped_discipline: int = 0
    undated_excluded_at_link: int = 0


@dataclass
class CorpusSummary:
    entries: int = 0
    citations: int = 0
    articles: int = 0
    journals: int = 0
    language_shares: dict[str, float] = field(default_factory=dict)


def link_mentions(
    mentions,
    index: JournalIndex,
    vocabulary: LabelVocabulary,
    date_basis: str = "mention",
) -> tuple[list[CitationRecord], LinkReport]:
    """Turn enriched mentions into citation records via the journal index.

    A mention links iff at least one of its ISSNs resolves in the index
    (the first resolving one wins) and it carries a usable date. Unmatched
    mentions are counted by reason. Specialty labels are attached from the
    journal's classification codes; a journal none of whose codes resolve
    in the vocabulary lies outside the discipline, so its mentions drop
    here (counted as unclassifiable) rather than aborting the run.

    ``date_basis`` selects which reading of "publication date" anchors the
    record: ``"mention"`` (default) uses the mention date; ``"article"``
    uses January 1st of the article year.
    """
    if date_basis not in ("mention", "article"):
        raise ValueError(f"date_basis must be 'mention' or 'article', got {date_basis!r}")
    records: list[CitationRecord] = []
    report = LinkReport()
    # None marks a journal whose codes resolve to nothing (outside the
    # discipline); its mentions all drop without re-raising per mention.
    specialty_cache: dict[str, frozenset[str] | None] = {}
    for mention in mentions:
        if not mention.issns:
            report.no_issn += 1
            continue
        journal = None
        for raw in mention.issns:
            try:
                issn = normalize_issn(raw)
            except IssnError:
                continue
            journal = index.get(issn)
            if journal is not None:
                break
        if journal is None:
            report.unknown_issn += 1
            continue
        if date_basis == "mention":
            when = mention.mention_date
        else:
            when = date(mention.article_year, 1, 1) if mention.article_year else None
        if when is None:
            report.no_date += 1
            continue
        key = journal.primary_issn()
        if key not in specialty_cache:
            try:
                labels, _unknown = resolve_specialties(journal, vocabulary)
                specialty_cache[key] = frozenset(labels)
            except UnclassifiableJournalError:
                specialty_cache[key] = None
        if specialty_cache[key] is None:
            report.unclassifiable += 1
            continue
        records.append(
            CitationRecord(
                entry_id=(mention.wiki_language, mention.wiki_page_title),
                article_id=mention.doi or mention.mention_id,
                journal=key,
                specialties=specialty_cache[key],
                date=when,
                year=when.year,
                mention_id=mention.mention_id,
            )
        )
        report.linked += 1
    return records, report


def dedupe_citations(records) -> tuple[list[CitationRecord], DedupReport]:
    """Keep exactly one record per (entry, article) pair: the most recent.

    Ties on identical dates collapse deterministically (smallest journal,
    then smallest specialty set, then smallest mention id), so the result
    is independent of input order. Output is sorted by (entry, article).
    """
    groups: dict[tuple, CitationRecord] = {}
    report = DedupReport()
    for rec in records:
        report.input += 1
        key = (rec.entry_id, rec.article_id)
        cur = groups.get(key)
        if cur is None or _beats(rec, cur):
            groups[key] = rec
    kept = sorted(groups.values(), key=CitationRecord.sort_key)
    report.kept = len(kept)
    report.removed = report.input - report.kept
    return kept, report


def _tiebreak(rec: CitationRecord):
    # Persisted fields only, so file-mediated and in-memory pipelines pick
    # the same survivor; mention_id settles full duplicates for audit.
    return (rec.journal, ";".join(sorted(rec.specialties)), rec.mention_id or "")


def _beats(rec: CitationRecord, cur: CitationRecord) -> bool:
    if rec.date != cur.date:
        return rec.date > cur.date
    return _tiebreak(rec) < _tiebreak(cur)


def filter_corpus(
    records,
    require_date: bool = True,
    discipline_labels: set[str] | None = None,
    year_window: tuple[int, int] | None = None,
    undated_excluded_at_link: int = 0,
) -> tuple[list[CitationRecord], FilterReport]:
    """Apply the discipline and year-window rules.

    Undated mentions were already excluded at link time (every record
    carries a date); ``undated_excluded_at_link`` echoes that count into
    the report for audit. The discipline rule keeps records whose
    specialties intersect the given labels; the window keeps years within
    ``[lo, hi]`` inclusive. With no rules this is the identity.
    """
    if year_window is not None and year_window[0] > year_window[1]:
        raise ValueError(f"year window lo > hi: {year_window}")
    report = FilterReport(undated_excluded_at_link=undated_excluded_at_link if require_date else 0)
    kept: list[CitationRecord] = []
    for rec in records:
        report.input += 1
        if discipline_labels is not None and not (rec.specialties & discipline_labels):
            report.dropped_discipline += 1
            continue
        if year_window is not None and not (year_window[0] <= rec.year <= year_window[1]):
            report.dropped_window += 1
            continue
        kept.append(rec)
    report.kept = len(kept)
    return kept, report


def summarize_corpus(records) -> CorpusSummary:
    """Distinct-entity counts plus language shares over distinct entries."""
    entries: set[tuple[str, str]] = set()
    articles: set[str] = set()
    journals: set[str] = set()
    citations = 0
    for rec in records:
        citations += 1
        entries.add(rec.entry_id)
        articles.add(rec.article_id)
        journals.add(rec.journal)
    shares: dict[str, float] = {}
    if entries:
        by_language: dict[str, int] = {}
        for language, _title in entries:
            by_language[language] = by_language.get(language, 0) + 1
        shares = {lang: count / len(entries) for lang, count in sorted(by_language.items())}
    return CorpusSummary(
        entries=len(entries),
        citations=citations,
        articles=len(articles),
        journals=len(journals),
        language_shares=shares,
    )


def write_corpus_tsv(records, path) -> None:
    """Persist records sorted by (entry, article) for deterministic diffs."""
    ordered = sorted(records, key=CitationRecord.sort_key)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for rec in ordered:
            fh.write(
                "\t".join(
                    [
                        rec.entry_id[0],
                        rec.entry_id[1],
                        rec.article_id,
                        rec.journal,
                        ";".join(sorted(rec.specialties)),
                        rec.date.isoformat(),
                        str(rec.year),
                    ]
                )
                + "\n"
            )


def read_corpus_tsv(path) -> list[CitationRecord]:
    path = Path(path)
    records: list[CitationRecord] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 7:
                raise ValueError(f"{path}:{lineno}: expected 7 tab-separated fields, got {len(parts)}")
            language, title, article_id, issn, specialties, iso_date, year = parts
            records.append(
                CitationRecord(
                    entry_id=(language, title),
                    article_id=article_id,
                    journal=issn,
                    specialties=frozenset(s for s in specialties.split(";") if s),
                    date=date.fromisoformat(iso_date),
                    year=int(year),
                )
            )
    return records
