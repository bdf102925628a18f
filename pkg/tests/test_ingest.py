"""Input parsers, lookup clients, and the ISSN enrichment pass."""

import json
import urllib.parse
from datetime import date

import pytest
import requests

from sciomap import (
    FixtureLookupClient,
    LookupFailed,
    MediaWikiLookupClient,
    RawMention,
    enrich_issn,
    parse_altmetric_export,
    parse_scopus_source_list,
)
from sciomap.ingest import normalize_title_key, write_mentions_csv

MENTIONS_HEADER_LINE = (
    "mention_id,doi,article_title,journal_title,issns,"
    "wiki_page_title,wiki_language,mention_date,article_year"
)


def make_mention(mention_id="M1", issns=(), journal_title="Isis", **kw):
    defaults = dict(
        mention_id=mention_id,
        doi=None,
        article_title="An article",
        journal_title=journal_title,
        issns=tuple(issns),
        wiki_page_title="Some page",
        wiki_language="en",
        mention_date=date(2015, 3, 1),
        article_year=2014,
    )
    defaults.update(kw)
    return RawMention(**defaults)


class TestMentionsParser:
    def test_small_fixture_parses_clean(self, data_dir):
        mentions, report = parse_altmetric_export(data_dir / "mentions_small.csv")
        assert report.rows == 12
        assert report.parsed == 12
        assert report.skipped == 0
        by_id = {m.mention_id: m for m in mentions}
        # Pipe-separated ISSN cells come apart.
        assert by_id["M02"].issns == ("0002-8762",)
        # A missing ISSN cell is an empty tuple, not [''].
        assert by_id["M01"].issns == ()
        # A garbled date degrades to absent without dropping the row.
        assert by_id["M11"].mention_date is None
        assert by_id["M12"].mention_date == date(2016, 2, 2)

    def test_header_is_mandatory(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("a,b,c\n")
        with pytest.raises(ValueError, match="malformed header"):
            parse_altmetric_export(p)

    def test_empty_file_rejected(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("")
        with pytest.raises(ValueError, match="empty file"):
            parse_altmetric_export(p)

    def test_missing_file_raises_filenotfound(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            parse_altmetric_export(tmp_path / "absent.csv")

    def test_damaged_rows_skip_without_aborting(self, tmp_path):
        rows = [
            MENTIONS_HEADER_LINE,
            "M1,,T,J,,Page,en,2015-01-01,2014",  # good
            "M2,,T,J,,Page,ENGLISH,2015-01-01,2014",  # bad language code
            ",,T,J,,Page,en,2015-01-01,2014",  # empty mention_id
            "M4,,T,J,,,en,2015-01-01,2014",  # empty page title
            "M5,,T,J,,Page,en",  # short row
            "M6,,T,J,,Page,sv,not-a-date,eleven",  # garbled date+year still parses
        ]
        p = tmp_path / "m.csv"
        p.write_text("\n".join(rows) + "\n")
        mentions, report = parse_altmetric_export(p)
        assert [m.mention_id for m in mentions] == ["M1", "M6"]
        assert report.rows == 6
        assert report.parsed == 2
        assert report.skipped == 4
        assert len(report.messages) == 4
        assert mentions[1].mention_date is None
        assert mentions[1].article_year is None

    def test_language_is_lowercased(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text(MENTIONS_HEADER_LINE + "\nM1,,T,J,,Page,EN,2015-01-01,\n")
        mentions, report = parse_altmetric_export(p)
        assert report.skipped == 0
        assert mentions[0].wiki_language == "en"

    def test_write_then_parse_round_trips(self, tmp_path, data_dir):
        mentions, _ = parse_altmetric_export(data_dir / "mentions_small.csv")
        out = tmp_path / "again.csv"
        write_mentions_csv(mentions, out)
        back, report = parse_altmetric_export(out)
        assert report.skipped == 0
        assert back == mentions


class TestSourcesParser:
    def test_small_fixture_parses_clean(self, data_dir):
        journals, report = parse_scopus_source_list(data_dir / "sources_small.csv")
        assert report.skipped == 0
        assert len(journals) == 6
        by_title = {j.title: j for j in journals}
        isis = by_title["Isis"]
        assert isis.print_issn == "00211753"
        assert isis.e_issn is None
        assert isis.asjc_codes == frozenset({"1206"})
        assert isis.open_access is False
        ahr = by_title["American Historical Review"]
        assert (ahr.print_issn, ahr.e_issn) == ("00028762", "19375239")
        assert ahr.primary_issn() == "00028762"
        speculum = by_title["Speculum"]
        assert speculum.e_issn is None
        assert speculum.asjc_codes == frozenset({"1205", "1208"})
        assert speculum.primary_issn() == "00387134"

    def test_bad_rows_skip_by_reason(self, tmp_path):
        header = (
            "title,print_issn,e_issn,asjc_codes,specialty_names,"
            "open_access,top_percentile,scholarly_output,citation_count"
        )
        rows = [
            header,
            "Good,0021-1753,,1205,,false,50,10,10",
            "NoIssn,,,1205,,false,50,10,10",
            "BadIssn,0021-1754,99,1205,,false,50,10,10",
            "BadOa,0002-8762,,1205,,maybe,50,10,10",
            "BadNum,0038-7134,,1205,,true,fifty,10,10",
            "OutOfRange,0080-4401,,1205,,true,150,10,10",
        ]
        p = tmp_path / "s.csv"
        p.write_text("\n".join(rows) + "\n")
        journals, report = parse_scopus_source_list(p)
        assert [j.title for j in journals] == ["Good"]
        assert report.skipped == 5

    def test_one_valid_issn_is_enough(self, tmp_path):
        header = (
            "title,print_issn,e_issn,asjc_codes,specialty_names,"
            "open_access,top_percentile,scholarly_output,citation_count"
        )
        p = tmp_path / "s.csv"
        p.write_text(header + "\nEOnly,garbled,1545-6994,1205,,true,9.5,10,10\n")
        journals, report = parse_scopus_source_list(p)
        assert report.skipped == 0
        assert journals[0].print_issn is None
        assert journals[0].e_issn == "15456994"
        assert journals[0].primary_issn() == "15456994"
        assert journals[0].open_access is True


class TestFixtureLookup:
    def test_hit_from_bundled_directory(self, data_dir):
        client = FixtureLookupClient(data_dir / "lookup")
        assert client.lookup("Isis") == ["0021-1753"]
        # Keying is case- and whitespace-insensitive.
        assert client.lookup("  ISIS ") == ["0021-1753"]

    def test_miss_is_empty_not_error(self, data_dir):
        client = FixtureLookupClient(data_dir / "lookup")
        assert client.lookup("No Such Journal") == []

    def test_key_is_percent_encoded(self, tmp_path):
        key = normalize_title_key("Annales d'histoire")
        path = tmp_path / (urllib.parse.quote(key, safe="") + ".json")
        path.write_text(json.dumps({"issns": ["0080-4401"]}))
        client = FixtureLookupClient(tmp_path)
        assert client.lookup("Annales  d'histoire") == ["0080-4401"]


class FakeResponse:
    def __init__(self, payload=None, status=200, body_error=None):
        self.payload = payload
        self.status = status
        self.body_error = body_error

    def raise_for_status(self):
        if self.status >= 400:
            raise requests.HTTPError(f"status {self.status}")

    def json(self):
        if self.body_error is not None:
            raise self.body_error
        return self.payload


class FakeSession:
    def __init__(self, response=None, exc=None):
        self.response = response
        self.exc = exc
        self.calls = []

    def get(self, url, params=None, timeout=None):
        self.calls.append((url, dict(params), timeout))
        if self.exc is not None:
            raise self.exc
        return self.response


def wiki_payload(content):
    return {
        "query": {
            "pages": {"123": {"revisions": [{"slots": {"main": {"*": content}}}]}}
        }
    }


class TestMediaWikiLookup:
    ENDPOINT = "https://en.wikipedia.org/w/api.php"

    def test_extracts_validated_issns_from_wikitext(self):
        content = "| ISSN = 0021-1753 | eISSN = 1545-6994 oops 0021-1754 again 0021-1753"
        session = FakeSession(response=FakeResponse(wiki_payload(content)))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        # Checksum failures are dropped, duplicates collapse, order preserved.
        assert client.lookup("Isis (journal)") == ["0021-1753", "1545-6994"]
        url, params, timeout = session.calls[0]
        assert url == self.ENDPOINT
        assert params["titles"] == "Isis (journal)"
        assert params["action"] == "query"
        assert timeout == pytest.approx(10.0)

    def test_lowercase_check_digit_upcased(self):
        session = FakeSession(response=FakeResponse(wiki_payload("issn 2059-481x here")))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        assert client.lookup("X") == ["2059-481X"]

    def test_legacy_revision_shape_supported(self):
        payload = {"query": {"pages": {"1": {"revisions": [{"*": "ISSN 0038-7134"}]}}}}
        session = FakeSession(response=FakeResponse(payload))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        assert client.lookup("Speculum") == ["0038-7134"]

    def test_missing_page_is_a_miss(self):
        payload = {"query": {"pages": {"-1": {"missing": ""}}}}
        session = FakeSession(response=FakeResponse(payload))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        assert client.lookup("Nope") == []

    def test_network_error_raises_lookup_failed(self):
        session = FakeSession(exc=requests.ConnectionError("refused"))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        with pytest.raises(LookupFailed, match="refused"):
            client.lookup("Isis")

    def test_http_error_raises_lookup_failed(self):
        session = FakeSession(response=FakeResponse(status=503))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        with pytest.raises(LookupFailed):
            client.lookup("Isis")

    def test_bad_json_raises_lookup_failed(self):
        session = FakeSession(response=FakeResponse(body_error=ValueError("bad json")))
        client = MediaWikiLookupClient(self.ENDPOINT, session=session)
        with pytest.raises(LookupFailed):
            client.lookup("Isis")


class CountingClient:
    """Scripted lookup client that counts how often it is asked."""

    def __init__(self, table):
        self.table = table
        self.calls = 0

    def lookup(self, title):
        self.calls += 1
        result = self.table.get(normalize_title_key(title), [])
        if isinstance(result, Exception):
            raise result
        return list(result)


class TestEnrich:
    def test_mentions_with_issns_pass_through(self, tmp_path):
        m = make_mention(issns=("0021-1753",))
        client = CountingClient({})
        out, report = enrich_issn([m], client, tmp_path / "cache.json")
        assert out == [m]
        assert report.passthrough == 1
        assert client.calls == 0
        assert not (tmp_path / "cache.json").exists()

    def test_hit_attaches_issns_and_caches(self, tmp_path):
        cache = tmp_path / "cache.json"
        client = CountingClient({"isis": ["0021-1753"]})
        out, report = enrich_issn([make_mention()], client, cache)
        assert out[0].issns == ("0021-1753",)
        assert (report.looked_up, report.hits, report.from_cache) == (1, 1, 0)
        assert json.loads(cache.read_text()) == {"isis": ["0021-1753"]}

        # A fresh client on the same cache never gets asked.
        client2 = CountingClient({"isis": ["9999-9999"]})
        out2, report2 = enrich_issn([make_mention()], client2, cache)
        assert client2.calls == 0
        assert out2[0].issns == ("0021-1753",)
        assert (report2.looked_up, report2.from_cache, report2.hits) == (0, 1, 1)

    def test_misses_are_not_cached(self, tmp_path):
        cache = tmp_path / "cache.json"
        client = CountingClient({})
        _, report = enrich_issn([make_mention(journal_title="Ghost")], client, cache)
        assert report.misses == 1
        assert not cache.exists()
        # The next pass asks again instead of trusting a cached failure.
        client2 = CountingClient({"ghost": ["0080-4401"]})
        out2, report2 = enrich_issn([make_mention(journal_title="Ghost")], client2, cache)
        assert client2.calls == 1
        assert out2[0].issns == ("0080-4401",)
        assert report2.hits == 1

    def test_lookup_failure_degrades_to_miss(self, tmp_path):
        client = CountingClient({"isis": LookupFailed("endpoint down")})
        out, report = enrich_issn([make_mention()], client, tmp_path / "cache.json")
        assert out[0].issns == ()
        assert report.misses == 1

    def test_unreadable_cache_is_fatal(self, tmp_path):
        cache = tmp_path / "cache.json"
        cache.write_text("{ not json")
        with pytest.raises(ValueError, match="invalid ISSN cache"):
            enrich_issn([make_mention()], CountingClient({}), cache)

    def test_non_object_cache_is_fatal(self, tmp_path):
        cache = tmp_path / "cache.json"
        cache.write_text("[1, 2]")
        with pytest.raises(ValueError, match="expected a JSON object"):
            enrich_issn([make_mention()], CountingClient({}), cache)

    def test_cache_written_once_for_repeated_titles(self, tmp_path):
        cache = tmp_path / "cache.json"
        client = CountingClient({"isis": ["0021-1753"]})
        mentions = [make_mention(mention_id=f"M{i}") for i in range(3)]
        out, report = enrich_issn(mentions, client, cache)
        assert client.calls == 1  # second and third hit the in-run cache
        assert report.from_cache == 2
        assert all(m.issns == ("0021-1753",) for m in out)
