"""Descriptive statistics and the citation tables.

Everything here regroups the deduplicated citation corpus: per-entry and
per-article distributions, annual citation series, per-specialty and
per-journal indicators, and the Wikipedia-vs-catalog coverage comparison.
All outputs are deterministically ordered so the CSV emitters are stable.
"""

from __future__ import annotations

import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .catalog import JournalIndex, UnclassifiableJournalError, resolve_specialties
from .corpus import CitationRecord

__all__ = [
    "AnnualPoint",
    "CoverageRow",
    "JournalRow",
    "SpecialtyRow",
    "StatsSummary",
    "annual_series",
    "coverage_table",
    "descriptive_stats",
    "distribution_tables",
    "journal_ranking",
    "scopus_aggregates",
    "specialty_table",
]


@dataclass(frozen=True)
class StatsSummary:
    mean: float
    median: float
    mode: float
    std_dev: float
    range: float
    n: int


@dataclass(frozen=True)
class SpecialtyRow:
    specialty: str
    journals_cited: int
    share_journals: float
    share_journals_normalized: float
    articles_cited: int
    citations: int
    share_citations: float
    share_citations_normalized: float
    mean_citations_per_article: float
    std_citations_per_article: float


@dataclass(frozen=True)
class JournalRow:
    rank: int
    title: str
    citations: int
    articles_cited: int
    mean_citations: float
    open_access: bool
    top_journal: bool


@dataclass(frozen=True)
class CoverageRow:
    specialty: str
    wiki_article_share: float
    wiki_citation_share: float
    scopus_article_share: float
    scopus_citation_share: float


@dataclass(frozen=True)
class AnnualPoint:
    year: int
    citations: int
    mean_citations_per_article: float


def descriptive_stats(values: list[float]) -> StatsSummary:
    """Mean, midpoint median, smallest-most-frequent mode, sample standard
    deviation (0 for a single value), and max-min range."""
    if not values:
        raise ValueError("cannot summarize an empty list")
    counts = Counter(values)
    top = max(counts.values())
    mode = min(v for v, c in counts.items() if c == top)
    std_dev = statistics.stdev(values) if len(values) > 1 else 0.0
    return StatsSummary(
        mean=statistics.fmean(values),
        median=float(statistics.median(values)),
        mode=float(mode),
        std_dev=float(std_dev),
        range=float(max(values) - min(values)),
        n=len(values),
    )


def distribution_tables(records: Iterable[CitationRecord]) -> dict[str, StatsSummary]:
    """References-per-entry and citations-per-article distributions."""
    per_entry: Counter = Counter()
    per_article: Counter = Counter()
    for rec in records:
        per_entry[rec.entry_id] += 1
        per_article[rec.article_id] += 1
    if not per_entry:
        raise ValueError("cannot build distribution tables from an empty corpus")
    return {
        "per_entry": descriptive_stats(sorted(per_entry.values())),
        "per_article": descriptive_stats(sorted(per_article.values())),
    }


def annual_series(records: Iterable[CitationRecord]) -> list[AnnualPoint]:
    """Citations per year plus citations-per-distinct-article that year."""
    citations: Counter = Counter()
    articles: dict[int, set[str]] = {}
    for rec in records:
        citations[rec.year] += 1
        articles.setdefault(rec.year, set()).add(rec.article_id)
    return [
        AnnualPoint(year, citations[year], citations[year] / len(articles[year]))
        for year in sorted(citations)
    ]


def specialty_table(
    records: Iterable[CitationRecord], catalog: JournalIndex | None = None
) -> list[SpecialtyRow]:
    """Per-specialty citation indicators.

    A record contributes to every specialty of its journal, so multi-label
    journals are counted once per label and the raw share columns can sum
    past 1; the *_normalized shares divide by the label-expanded totals and
    sum to 1. The trailing column pair is the mean and standard deviation
    of citations per distinct article within the specialty.
    """
    journals: dict[str, set[str]] = {}
    articles: dict[str, set[str]] = {}
    citations: Counter = Counter()
    per_article: dict[str, Counter] = {}
    all_journals: set[str] = set()
    total_citations = 0
    for rec in records:
        specialties = rec.specialties
        if catalog is not None and rec.journal in catalog:
            listed = catalog.get(rec.journal).specialty_names
            if listed:
                specialties = listed
        all_journals.add(rec.journal)
        total_citations += 1
        for label in specialties:
            journals.setdefault(label, set()).add(rec.journal)
            articles.setdefault(label, set()).add(rec.article_id)
            citations[label] += 1
            per_article.setdefault(label, Counter())[rec.article_id] += 1
    expanded_journals = sum(len(v) for v in journals.values())
    expanded_citations = sum(citations.values())
    rows = []
    for label in sorted(citations, key=lambda s: (-citations[s], s)):
        counts = sorted(per_article[label].values())
        rows.append(
            SpecialtyRow(
                specialty=label,
                journals_cited=len(journals[label]),
                share_journals=len(journals[label]) / len(all_journals),
                share_journals_normalized=len(journals[label]) / expanded_journals,
                articles_cited=len(articles[label]),
                citations=citations[label],
                share_citations=citations[label] / total_citations,
                share_citations_normalized=citations[label] / expanded_citations,
                mean_citations_per_article=citations[label] / len(articles[label]),
                std_citations_per_article=(
                    statistics.stdev(counts) if len(counts) > 1 else 0.0
                ),
            )
        )
    return rows


def journal_ranking(
    records: Iterable[CitationRecord], catalog: JournalIndex, k: int
) -> list[JournalRow]:
    """Top-k journals by citation count; ties broken by title ascending.

    ``top_journal`` marks journals whose catalog citation percentile is 10
    or better (lower percentile = more cited).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    citations: Counter = Counter()
    articles: dict[str, set[str]] = {}
    for rec in records:
        citations[rec.journal] += 1
        articles.setdefault(rec.journal, set()).add(rec.article_id)

    def title_of(issn: str) -> str:
        return catalog.get(issn).title if issn in catalog else issn

    ranked = sorted(citations, key=lambda j: (-citations[j], title_of(j)))
    rows = []
    for rank, issn in enumerate(ranked[:k], start=1):
        record = catalog.get(issn) if issn in catalog else None
        rows.append(
            JournalRow(
                rank=rank,
                title=title_of(issn),
                citations=citations[issn],
                articles_cited=len(articles[issn]),
                mean_citations=citations[issn] / len(articles[issn]),
                open_access=bool(record and record.open_access),
                top_journal=bool(record and record.top_percentile <= 10),
            )
        )
    return rows


def scopus_aggregates(
    journals: Iterable, vocabulary=None
) -> dict[str, dict[str, int]]:
    """Sum catalog scholarly output and citation counts per specialty label.

    Journals carrying several labels contribute fully to each. When a
    vocabulary is given, labels come from resolving each journal's codes
    (journals resolving to nothing are outside the discipline and skipped);
    otherwise the journal's own specialty_names are trusted.
    """
    totals: dict[str, dict[str, int]] = {}
    for journal in journals:
        if vocabulary is not None:
            try:
                labels, _unknown = resolve_specialties(journal, vocabulary)
            except UnclassifiableJournalError:
                continue
        else:
            labels = set(journal.specialty_names)
        for label in labels:
            bucket = totals.setdefault(label, {"scholarly_output": 0, "citation_count": 0})
            bucket["scholarly_output"] += journal.scholarly_output
            bucket["citation_count"] += journal.citation_count
    return totals


def coverage_table(
    records: Iterable[CitationRecord],
    aggregates: Mapping[str, Mapping[str, int]],
) -> list[CoverageRow]:
    """Wikipedia vs catalog share of articles and citations per specialty.

    Every specialty present in the corpus must appear in ``aggregates``;
    all four share columns are normalized to sum to 1 over the rows.
    """
    articles: dict[str, set[str]] = {}
    citations: Counter = Counter()
    for rec in records:
        for label in rec.specialties:
            articles.setdefault(label, set()).add(rec.article_id)
            citations[label] += 1
    labels = sorted(citations)
    for label in labels:
        if label not in aggregates:
            raise ValueError(f"no catalog aggregate for specialty {label!r}")
    wiki_articles = sum(len(articles[s]) for s in labels)
    wiki_citations = sum(citations[s] for s in labels)
    scopus_articles = sum(aggregates[s]["scholarly_output"] for s in labels)
    scopus_citations = sum(aggregates[s]["citation_count"] for s in labels)
    rows = []
    for label in labels:
        rows.append(
            CoverageRow(
                specialty=label,
                wiki_article_share=len(articles[label]) / wiki_articles,
                wiki_citation_share=citations[label] / wiki_citations,
                scopus_article_share=aggregates[label]["scholarly_output"] / scopus_articles,
                scopus_citation_share=aggregates[label]["citation_count"] / scopus_citations,
            )
        )
    return rows
