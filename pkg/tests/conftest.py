"""Shared fixtures: bundled data paths, the linked small corpus, and
deterministic random-graph/corpus generators used across test modules."""

from __future__ import annotations

import random
import string
from datetime import date
from pathlib import Path

import pytest

from sciomap import (
    CitationRecord,
    WeightedGraph,
    build_journal_index,
    dedupe_citations,
    link_mentions,
    load_label_vocabulary,
    parse_altmetric_export,
    parse_scopus_source_list,
)

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def vocabulary():
    return load_label_vocabulary(DATA / "asjc_labels.cfg")


@pytest.fixture(scope="session")
def journal_index(vocabulary):
    journals, report = parse_scopus_source_list(DATA / "sources_small.csv")
    assert report.skipped == 0, report.messages
    index, conflicts = build_journal_index(journals)
    assert not conflicts
    return index


@pytest.fixture(scope="session")
def small_journals():
    journals, _report = parse_scopus_source_list(DATA / "sources_small.csv")
    return journals


@pytest.fixture(scope="session")
def small_corpus(journal_index, vocabulary):
    """The deduplicated 5-record corpus from the bundled small fixture.

    ISSN enrichment is bypassed: the one mention that needs a lookup is
    only relevant to enrichment tests, and it drops out here as no_issn.
    (The full pipeline, which does enrich, links that mention too and
    ends up with 6 records.)
    """
    mentions, report = parse_altmetric_export(DATA / "mentions_small.csv")
    assert report.skipped == 0
    records, _link_report = link_mentions(mentions, journal_index, vocabulary)
    deduped, _dedupe_report = dedupe_citations(records)
    return deduped


# --- deterministic generators ----------------------------------------------


def make_random_graph(
    rng: random.Random,
    n: int,
    p: float,
    weights: str = "float",
    connected: bool = False,
) -> WeightedGraph:
    """Random undirected graph on nodes 'a', 'b', ... with edge probability p.

    weights: "float" draws from (0.5, 3.0) rounded to 3 decimals (distance
    flavor), "int" draws from {1..5} (exact arithmetic for tie-heavy tests).
    connected=True threads a random spanning path first.
    """
    names = [string.ascii_letters[i] for i in range(n)]
    g = WeightedGraph()
    for name in names:
        g.add_node(name)

    def draw() -> float:
        if weights == "int":
            return float(rng.randint(1, 5))
        return round(rng.uniform(0.5, 3.0), 3)

    if connected and n > 1:
        order = names[:]
        rng.shuffle(order)
        for a, b in zip(order, order[1:]):
            g.add_edge(a, b, draw())
    for i in range(n):
        for j in range(i + 1, n):
            if not g.has_edge(names[i], names[j]) and rng.random() < p:
                g.add_edge(names[i], names[j], draw())
    return g


def make_random_corpus(rng: random.Random, max_entries: int = 50, max_journals: int = 20):
    """Synthetic deduplicated citation records over random journals.

    Journals carry 1-3 labels from a small pool, so specialty-level graphs
    exercise both multi-label fan-out and the same-journal exclusion.
    """
    labels = [f"L{k}" for k in range(8)]
    n_journals = rng.randint(2, max_journals)
    journals = {}
    for j in range(n_journals):
        count = rng.randint(1, 3)
        journals[f"J{j:02d}"] = frozenset(rng.sample(labels, count))
    journal_ids = sorted(journals)
    records = []
    n_entries = rng.randint(1, max_entries)
    article_serial = 0
    for e in range(n_entries):
        entry_id = ("en", f"Entry {e}")
        n_citations = rng.randint(1, 6)
        cited = set()
        for _ in range(n_citations):
            journal = rng.choice(journal_ids)
            article_serial += 1
            # Sometimes re-cite an article that another entry already cites.
            if records and rng.random() < 0.2:
                prototype = rng.choice(records)
                article, journal, specialties = (
                    prototype.article_id,
                    prototype.journal,
                    prototype.specialties,
                )
            else:
                article = f"A{article_serial:04d}"
                specialties = journals[journal]
            if article in cited:
                continue
            cited.add(article)
            when = date(2007 + rng.randint(0, 10), 1 + rng.randint(0, 11), 1 + rng.randint(0, 27))
            records.append(
                CitationRecord(
                    entry_id=entry_id,
                    article_id=article,
                    journal=journal,
                    specialties=specialties,
                    date=when,
                    year=when.year,
                )
            )
    return records
