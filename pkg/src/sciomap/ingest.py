"""Parsing of the two input corpora and optional ISSN enrichment.

Input formats (UTF-8 CSV, quoted fields):

``mentions.csv`` header::

    mention_id,doi,article_title,journal_title,issns,wiki_page_title,wiki_language,mention_date,article_year

where ``issns`` is ``|``-separated and ``mention_date`` is ``YYYY-MM-DD`` or empty.

``sources.csv`` header::

    title,print_issn,e_issn,asjc_codes,specialty_names,open_access,top_percentile,scholarly_output,citation_count

where ``asjc_codes`` and ``specialty_names`` are ``;``-separated and
``open_access`` is ``true|false``.
"""

from __future__ import annotations

import csv
import json
import re
import urllib.parse
from dataclasses import dataclass, field, replace
from datetime import date
from pathlib import Path

import requests

from .catalog import IssnError, normalize_issn

__all__ = [
    "RawMention",
    "JournalRecord",
    "ParseReport",
    "EnrichReport",
    "MENTIONS_HEADER",
    "SOURCES_HEADER",
    "parse_altmetric_export",
    "write_mentions_csv",
    "parse_scopus_source_list",
    "LookupFailed",
    "FixtureLookupClient",
    "MediaWikiLookupClient",
    "enrich_issn",
    "normalize_title_key",
]

MENTIONS_HEADER = [
    "mention_id",
    "doi",
    "article_title",
    "journal_title",
    "issns",
    "wiki_page_title",
    "wiki_language",
    "mention_date",
    "article_year",
]

SOURCES_HEADER = [
    "title",
    "print_issn",
    "e_issn",
    "asjc_codes",
    "specialty_names",
    "open_access",
    "top_percentile",
    "scholarly_output",
    "citation_count",
]

_LANGUAGE_RE = re.compile(r"^[a-z]{2,3}$")


@dataclass(frozen=True)
class RawMention:
    """One Wikipedia-page -> scholarly-article citation event."""

    mention_id: str
    doi: str | None
    article_title: str
    journal_title: str
    issns: tuple[str, ...]
    wiki_page_title: str
    wiki_language: str
    mention_date: date | None
    article_year: int | None


@dataclass(frozen=True)
class JournalRecord:
    """A journal with canonical ISSNs, classification codes, and aggregates."""

    title: str
    print_issn: str | None
    e_issn: str | None
    asjc_codes: frozenset[str]
    specialty_names: frozenset[str]
    open_access: bool
    top_percentile: float
    scholarly_output: int
    citation_count: int

    def primary_issn(self) -> str:
        """Stable identity for the journal: print ISSN when present, else e-ISSN."""
        issn = self.print_issn or self.e_issn
        assert issn is not None
        return issn


@dataclass
class ParseReport:
    """Row-level accounting for a parse run; row damage is never fatal."""

    rows: int = 0
    parsed: int = 0
    skipped: int = 0
    messages: list[str] = field(default_factory=list)

    def skip(self, row_number: int, reason: str) -> None:
        self.skipped += 1
        self.messages.append(f"row {row_number}: {reason}")


def _parse_date(text: str) -> date | None:
    """ISO-8601 calendar dates only; anything else maps to 'date absent'."""
    text = text.strip()
    if not text:
        return None
    try:
        return date.fromisoformat(text)
    except ValueError:
        return None


def _parse_year(text: str) -> int | None:
    text = text.strip()
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        return None


def parse_altmetric_export(path) -> tuple[list[RawMention], ParseReport]:
    """Parse a mentions CSV export into RawMention records.

    Rows with unparseable mandatory fields (mention_id, wiki_page_title,
    wiki_language) are skipped and counted in the report. A garbled date or
    year degrades to "absent" without skipping the row. Input ordering is
    preserved.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"mentions file not found: {path}")
    mentions: list[RawMention] = []
    report = ParseReport()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header {','.join(MENTIONS_HEADER)}") from None
        if header != MENTIONS_HEADER:
            raise ValueError(f"{path}: malformed header {header!r}")
        for row_number, row in enumerate(reader, start=2):
            report.rows += 1
            if len(row) != len(MENTIONS_HEADER):
                report.skip(row_number, f"expected {len(MENTIONS_HEADER)} fields, got {len(row)}")
                continue
            rec = dict(zip(MENTIONS_HEADER, row))
            mention_id = rec["mention_id"].strip()
            page_title = rec["wiki_page_title"].strip()
            language = rec["wiki_language"].strip().lower()
            if not mention_id:
                report.skip(row_number, "empty mention_id")
                continue
            if not page_title:
                report.skip(row_number, "empty wiki_page_title")
                continue
            if not _LANGUAGE_RE.match(language):
                report.skip(row_number, f"invalid wiki_language {rec['wiki_language']!r}")
                continue
            issns = tuple(s.strip() for s in rec["issns"].split("|") if s.strip())
            mentions.append(
                RawMention(
                    mention_id=mention_id,
                    doi=rec["doi"].strip() or None,
                    article_title=rec["article_title"].strip(),
                    journal_title=rec["journal_title"].strip(),
                    issns=issns,
                    wiki_page_title=page_title,
                    wiki_language=language,
                    mention_date=_parse_date(rec["mention_date"]),
                    article_year=_parse_year(rec["article_year"]),
                )
            )
            report.parsed += 1
    return mentions, report


def write_mentions_csv(mentions, path) -> None:
    """Serialize mentions back to the canonical CSV format (round-trip safe)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writerow(MENTIONS_HEADER)
        for m in mentions:
            writer.writerow(
                [
                    m.mention_id,
                    m.doi or "",
                    m.article_title,
                    m.journal_title,
                    "|".join(m.issns),
                    m.wiki_page_title,
                    m.wiki_language,
                    m.mention_date.isoformat() if m.mention_date else "",
                    str(m.article_year) if m.article_year is not None else "",
                ]
            )


def parse_scopus_source_list(path) -> tuple[list[JournalRecord], ParseReport]:
    """Parse a journal source list CSV into JournalRecord entries.

    ISSNs are canonicalized; rows where both ISSNs fail validation are
    skipped and counted, as are rows with garbled numeric fields.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"sources file not found: {path}")
    journals: list[JournalRecord] = []
    report = ParseReport()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header {','.join(SOURCES_HEADER)}") from None
        if header != SOURCES_HEADER:
            raise ValueError(f"{path}: malformed header {header!r}")
        for row_number, row in enumerate(reader, start=2):
            report.rows += 1
            if len(row) != len(SOURCES_HEADER):
                report.skip(row_number, f"expected {len(SOURCES_HEADER)} fields, got {len(row)}")
                continue
            rec = dict(zip(SOURCES_HEADER, row))
            issns: list[str | None] = []
            for raw in (rec["print_issn"], rec["e_issn"]):
                raw = raw.strip()
                if not raw:
                    issns.append(None)
                    continue
                try:
                    issns.append(normalize_issn(raw))
                except IssnError:
                    issns.append(None)
            print_issn, e_issn = issns
            if print_issn is None and e_issn is None:
                report.skip(row_number, f"no valid ISSN for {rec['title']!r}")
                continue
            oa_text = rec["open_access"].strip().lower()
            if oa_text not in ("true", "false"):
                report.skip(row_number, f"open_access must be true|false, got {rec['open_access']!r}")
                continue
            try:
                percentile = float(rec["top_percentile"])
                output = int(rec["scholarly_output"])
                citations = int(rec["citation_count"])
            except ValueError:
                report.skip(row_number, "garbled numeric field")
                continue
            if not 0.0 <= percentile <= 100.0 or output < 0 or citations < 0:
                report.skip(row_number, "numeric field out of range")
                continue
            journals.append(
                JournalRecord(
                    title=rec["title"].strip(),
                    print_issn=print_issn,
                    e_issn=e_issn,
                    asjc_codes=frozenset(c.strip() for c in rec["asjc_codes"].split(";") if c.strip()),
                    specialty_names=frozenset(s.strip() for s in rec["specialty_names"].split(";") if s.strip()),
                    open_access=oa_text == "true",
                    top_percentile=percentile,
                    scholarly_output=output,
                    citation_count=citations,
                )
            )
            report.parsed += 1
    return journals, report


# --- ISSN enrichment -------------------------------------------------------


def normalize_title_key(title: str) -> str:
    """Lookup key for a journal title: case-insensitive, whitespace-collapsed."""
    return " ".join(title.split()).lower()


class LookupFailed(Exception):
    """A single title lookup failed (endpoint unreachable, bad payload, ...)."""


_ISSN_CANDIDATE_RE = re.compile(r"\b(\d{4}-\d{3}[\dXx])\b")


class FixtureLookupClient:
    """Offline lookup against a directory of one JSON document per title.

    The file for a title is ``<percent-encoded normalized key>.json`` holding
    ``{"issns": ["NNNN-NNNX", ...]}``. A missing file is a miss, not an error.
    """

    def __init__(self, directory):
        self.directory = Path(directory)

    def lookup(self, title: str) -> list[str]:
        key = normalize_title_key(title)
        path = self.directory / (urllib.parse.quote(key, safe="") + ".json")
        if not path.exists():
            return []
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        return list(payload.get("issns", []))


class MediaWikiLookupClient:
    """Live lookup against a MediaWiki ``api.php`` endpoint.

    Fetches the page for the journal title via ``action=query`` with raw
    revision content and scans the wikitext for ISSN-shaped tokens, keeping
    only those that pass canonical validation.
    """

    def __init__(self, endpoint: str, timeout: float = 10.0, session=None):
        self.endpoint = endpoint
        self.timeout = timeout
        self.session = session or requests.Session()

    def lookup(self, title: str) -> list[str]:
        params = {
            "action": "query",
            "format": "json",
            "titles": title,
            "prop": "revisions",
            "rvprop": "content",
            "rvslots": "main",
        }
        try:
            resp = self.session.get(self.endpoint, params=params, timeout=self.timeout)
            resp.raise_for_status()
            payload = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise LookupFailed(f"lookup for {title!r} failed: {exc}") from exc
        found: list[str] = []
        for page in payload.get("query", {}).get("pages", {}).values():
            for revision in page.get("revisions", []):
                content = revision.get("slots", {}).get("main", {}).get("*", "")
                if not content and "*" in revision:
                    content = revision["*"]
                for candidate in _ISSN_CANDIDATE_RE.findall(content):
                    try:
                        normalize_issn(candidate)
                    except IssnError:
                        continue
                    if candidate.upper() not in (c.upper() for c in found):
                        found.append(candidate.upper())
        return found


@dataclass
class EnrichReport:
    """Accounting for one enrichment pass."""

    passthrough: int = 0
    looked_up: int = 0
    hits: int = 0
    misses: int = 0
    from_cache: int = 0


def _load_cache(path: Path) -> dict[str, list[str]]:
    if not path.exists():
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cache = json.load(fh)
    except (ValueError, OSError) as exc:
        raise ValueError(f"invalid ISSN cache file {path}: {exc}") from exc
    if not isinstance(cache, dict):
        raise ValueError(f"invalid ISSN cache file {path}: expected a JSON object")
    return cache


def enrich_issn(mentions, client, cache_path) -> tuple[list[RawMention], EnrichReport]:
    """Attach ISSNs to mentions that lack them, looked up by journal title.

    Mentions already carrying at least one ISSN pass through untouched.
    Successful lookups are cached in a JSON map at ``cache_path``; failed
    lookups leave the mention unchanged and are counted. Idempotent for an
    unchanged cache.
    """
    cache_path = Path(cache_path)
    cache = _load_cache(cache_path)
    enriched: list[RawMention] = []
    report = EnrichReport()
    dirty = False
    for mention in mentions:
        if mention.issns:
            report.passthrough += 1
            enriched.append(mention)
            continue
        key = normalize_title_key(mention.journal_title)
        if key in cache:
            issns = cache[key]
            report.from_cache += 1
        else:
            report.looked_up += 1
            try:
                issns = client.lookup(mention.journal_title)
            except LookupFailed:
                issns = []
            if issns:
                cache[key] = issns
                dirty = True
        if issns:
            report.hits += 1
            enriched.append(replace(mention, issns=tuple(issns)))
        else:
            report.misses += 1
            enriched.append(mention)
    if dirty:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        with open(cache_path, "w", encoding="utf-8") as fh:
            json.dump(cache, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return enriched, report
