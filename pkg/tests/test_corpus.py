"""Linking, deduplication, filtering, summarizing, and corpus persistence."""

import random
from datetime import date

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sciomap import (
    CitationRecord,
    dedupe_citations,
    filter_corpus,
    link_mentions,
    parse_altmetric_export,
    read_corpus_tsv,
    summarize_corpus,
    write_corpus_tsv,
)
from tests.test_ingest import make_mention


def make_record(
    entry=("en", "Page"),
    article="A1",
    journal="00211753",
    specialties=("History",),
    when=date(2015, 6, 1),
    mention_id=None,
):
    return CitationRecord(
        entry_id=entry,
        article_id=article,
        journal=journal,
        specialties=frozenset(specialties),
        date=when,
        year=when.year,
        mention_id=mention_id,
    )


class TestLink:
    def test_small_fixture_counts(self, data_dir, journal_index, vocabulary):
        mentions, _ = parse_altmetric_export(data_dir / "mentions_small.csv")
        records, report = link_mentions(mentions, journal_index, vocabulary)
        # Without enrichment the Isis mention M01 and the ISSN-less M10 drop.
        assert report.linked == 8
        assert report.no_issn == 2
        assert report.unknown_issn == 2
        assert report.no_date == 0
        assert report.unclassifiable == 0
        assert report.dropped == 4
        assert len(records) == 8

    def test_either_issn_reaches_the_same_journal(self, data_dir, journal_index, vocabulary):
        mentions, _ = parse_altmetric_export(data_dir / "mentions_small.csv")
        by_id = {m.mention_id: m for m in mentions}
        records, _ = link_mentions([by_id["M02"], by_id["M03"]], journal_index, vocabulary)
        # M02 carries the print ISSN, M03 the electronic one; both resolve
        # to the journal's primary (print) identity.
        assert [r.journal for r in records] == ["00028762", "00028762"]
        assert records[0].specialties == frozenset({"History"})

    def test_invalid_issn_in_mention_is_skipped_not_fatal(self, journal_index, vocabulary):
        m = make_mention(issns=("garbage", "0021-1753"))
        records, report = link_mentions([m], journal_index, vocabulary)
        assert report.linked == 1
        assert records[0].journal == "00211753"

    def test_undated_mention_drops_with_reason(self, journal_index, vocabulary):
        m = make_mention(issns=("0021-1753",), mention_date=None, article_year=None)
        records, report = link_mentions([m], journal_index, vocabulary)
        assert records == []
        assert report.no_date == 1

    def test_article_date_basis_uses_publication_year(self, journal_index, vocabulary):
        m = make_mention(issns=("0021-1753",), mention_date=date(2012, 9, 14), article_year=2014)
        (rec_mention,), _ = link_mentions([m], journal_index, vocabulary, date_basis="mention")
        (rec_article,), _ = link_mentions([m], journal_index, vocabulary, date_basis="article")
        assert rec_mention.year == 2012
        assert rec_article.date == date(2014, 1, 1)
        assert rec_article.year == 2014

    def test_article_basis_without_year_drops(self, journal_index, vocabulary):
        m = make_mention(issns=("0021-1753",), article_year=None)
        records, report = link_mentions([m], journal_index, vocabulary, date_basis="article")
        assert records == []
        assert report.no_date == 1

    def test_bad_date_basis_rejected(self, journal_index, vocabulary):
        with pytest.raises(ValueError, match="date_basis"):
            link_mentions([], journal_index, vocabulary, date_basis="citation")

    def test_article_identity_prefers_doi(self, journal_index, vocabulary):
        with_doi = make_mention(mention_id="M1", doi="10.1/x", issns=("0021-1753",))
        without = make_mention(mention_id="M2", doi=None, issns=("0021-1753",))
        records, _ = link_mentions([with_doi, without], journal_index, vocabulary)
        assert records[0].article_id == "10.1/x"
        assert records[1].article_id == "M2"


class TestDedupe:
    def test_small_fixture_keeps_five(self, data_dir, journal_index, vocabulary):
        mentions, _ = parse_altmetric_export(data_dir / "mentions_small.csv")
        records, _ = link_mentions(mentions, journal_index, vocabulary)
        deduped, report = dedupe_citations(records)
        assert (report.input, report.kept, report.removed) == (8, 5, 3)
        facts = [(r.entry_id, r.article_id, r.date, r.mention_id) for r in deduped]
        assert facts == [
            (("en", "Beowulf"), "10.1086/350011", date(2012, 9, 14), "M07"),
            (("en", "Hypatia"), "10.1086/ahr.1", date(2016, 7, 9), "M02"),
            (("en", "Printing press"), "10.1086/350777", date(2013, 5, 30), "M06"),
            (("en", "Printing press"), "10.2307/spec.44", date(2014, 11, 23), "M04"),
            (("sv", "Runsten"), "10.2307/spec.99", date(2016, 8, 19), "M08"),
        ]

    def test_most_recent_wins(self):
        older = make_record(when=date(2014, 1, 5), mention_id="A")
        newer = make_record(when=date(2014, 11, 23), mention_id="B")
        kept, report = dedupe_citations([older, newer])
        assert [r.mention_id for r in kept] == ["B"]
        assert report.removed == 1

    def test_date_tie_breaks_on_persisted_fields_then_mention_id(self):
        a = make_record(journal="00387134", mention_id="M9")
        b = make_record(journal="00211753", mention_id="M8")
        kept, _ = dedupe_citations([a, b])
        assert kept[0].journal == "00211753"  # smaller journal id wins the tie
        c = make_record(mention_id="M2")
        d = make_record(mention_id="M1")
        kept, _ = dedupe_citations([c, d])
        assert kept[0].mention_id == "M1"

    @given(st.integers(min_value=0, max_value=2**31 - 1))
    @settings(max_examples=40, deadline=None)
    def test_result_independent_of_input_order(self, seed):
        rng = random.Random(seed)
        pool = []
        for i in range(rng.randint(2, 30)):
            pool.append(
                make_record(
                    entry=("en", f"P{rng.randint(0, 3)}"),
                    article=f"A{rng.randint(0, 5)}",
                    journal=rng.choice(["00211753", "00028762", "00387134"]),
                    when=date(2010 + rng.randint(0, 5), 1 + rng.randint(0, 11), 5),
                    mention_id=f"M{i:02d}",
                )
            )
        shuffled = pool[:]
        rng.shuffle(shuffled)
        kept_a, _ = dedupe_citations(pool)
        kept_b, _ = dedupe_citations(shuffled)
        assert kept_a == kept_b
        # One survivor per (entry, article), and it carries the max date.
        keys = [(r.entry_id, r.article_id) for r in kept_a]
        assert len(keys) == len(set(keys))
        best = {}
        for r in pool:
            key = (r.entry_id, r.article_id)
            best[key] = max(best.get(key, r.date), r.date)
        for r in kept_a:
            assert r.date == best[(r.entry_id, r.article_id)]


class TestFilter:
    def test_identity_without_rules(self, small_corpus):
        kept, report = filter_corpus(small_corpus)
        assert kept == small_corpus
        assert report.dropped_window == report.dropped_discipline == 0

    def test_year_window_is_inclusive(self):
        recs = [
            make_record(article="A1", when=date(2006, 12, 31)),
            make_record(article="A2", when=date(2007, 1, 1)),
            make_record(article="A3", when=date(2017, 12, 31)),
            make_record(article="A4", when=date(2018, 1, 1)),
        ]
        kept, report = filter_corpus(recs, year_window=(2007, 2017))
        assert [r.article_id for r in kept] == ["A2", "A3"]
        assert report.dropped_window == 2

    def test_discipline_rule_keeps_intersecting_records(self):
        recs = [
            make_record(article="A1", specialties=("History", "Classics")),
            make_record(article="A2", specialties=("Musicology",)),
        ]
        kept, report = filter_corpus(recs, discipline_labels={"History"})
        assert [r.article_id for r in kept] == ["A1"]
        assert report.dropped_discipline == 1

    def test_inverted_window_rejected(self):
        with pytest.raises(ValueError, match="lo > hi"):
            filter_corpus([], year_window=(2017, 2007))

    def test_undated_count_echoed_for_audit(self):
        _, report = filter_corpus([], undated_excluded_at_link=7)
        assert report.undated_excluded_at_link == 7


class TestSummary:
    def test_small_corpus_summary(self, small_corpus):
        summary = summarize_corpus(small_corpus)
        assert summary.entries == 4
        assert summary.citations == 5
        assert summary.articles == 5
        assert summary.journals == 3
        assert summary.language_shares == {"en": 0.75, "sv": 0.25}

    def test_empty_corpus(self):
        summary = summarize_corpus([])
        assert (summary.entries, summary.citations, summary.articles, summary.journals) == (0, 0, 0, 0)
        assert summary.language_shares == {}

    def test_shares_sum_to_one(self, small_corpus):
        summary = summarize_corpus(small_corpus)
        assert sum(summary.language_shares.values()) == pytest.approx(1.0)


class TestPersistence:
    def test_round_trip_preserves_everything_but_mention_id(self, small_corpus, tmp_path):
        path = tmp_path / "corpus.tsv"
        write_corpus_tsv(small_corpus, path)
        back = read_corpus_tsv(path)
        stripped = [
            CitationRecord(
                entry_id=r.entry_id,
                article_id=r.article_id,
                journal=r.journal,
                specialties=r.specialties,
                date=r.date,
                year=r.year,
            )
            for r in small_corpus
        ]
        assert back == stripped

    def test_output_is_sorted_and_stable(self, small_corpus, tmp_path):
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        write_corpus_tsv(small_corpus, a)
        write_corpus_tsv(list(reversed(small_corpus)), b)
        assert a.read_bytes() == b.read_bytes()

    def test_damaged_line_is_fatal_with_location(self, tmp_path):
        path = tmp_path / "corpus.tsv"
        path.write_text("en\tPage\tA1\n")
        with pytest.raises(ValueError, match="corpus.tsv:1"):
            read_corpus_tsv(path)
