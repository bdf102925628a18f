#!/usr/bin/env python3
"""Regenerate the bundled hub-shaped synthetic corpus (500 mention rows).

Layout: one heavy hub specialty (History) tied to each of the 12 other
specialties by 17 citing entries, six disjoint pairs of non-hub specialties
tied by 7 entries each (above the pruning threshold of 6, but dominated by
hub paths after scaling), and 4 entries citing two distinct History
journals (journal-level signal only; a single label can never pair with
itself). Every journal carries exactly one specialty label, so no latent
co-citation can arise. Deterministic: no RNG, no timestamps.
"""

from __future__ import annotations

import csv
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

# label -> classification code (the two History journals use 1205).
SPOKES = [
    ("Archeology", "1202"),
    ("Arts and Humanities", "1201"),
    ("Classics", "1203"),
    ("Conservation", "1204"),
    ("History and Philosophy of Science", "1206"),
    ("Language and Linguistics", "1207"),
    ("Literature and Literary Theory", "1208"),
    ("Museology", "1209"),
    ("Music", "1210"),
    ("Philosophy", "1211"),
    ("Religious studies", "1212"),
    ("Visual Arts and Performing Arts", "1213"),
]
HUB_ENTRIES = 17   # History-spoke co-citation weight
PAIR_ENTRIES = 7   # spoke-spoke weight: survives prune(6), loses to hub paths
PAD_ENTRIES = 4    # History-History citing entries (no specialty edge)


def issn_with_check(seven: str) -> str:
    total = sum(int(d) * w for d, w in zip(seven, range(8, 1, -1)))
    rem = (11 - total % 11) % 11
    check = "X" if rem == 10 else str(rem)
    return f"{seven[:4]}-{seven[4:]}{check}"


def main() -> None:
    journals = {}  # key -> (title, issn, code)
    issn_serial = 0

    def add_journal(key: str, title: str, code: str) -> None:
        nonlocal issn_serial
        issn_serial += 1
        journals[key] = (title, issn_with_check(f"{3700000 + issn_serial:07d}"), code)

    add_journal("History/0", "Annals of Hub History", "1205")
    add_journal("History/1", "Hub Historical Review", "1205")
    for label, code in SPOKES:
        add_journal(f"{label}/0", f"Journal of {label} A", code)
        add_journal(f"{label}/1", f"Journal of {label} B", code)

    rows = []
    serial = 0

    def mention(page: str, journal_key: str, year: int) -> None:
        nonlocal serial
        serial += 1
        title, issn, _code = journals[journal_key]
        rows.append(
            [
                f"R{serial:04d}",
                f"10.5555/hub.{serial}",
                f"Study {serial}",
                title,
                issn,
                page,
                "en",
                f"{year}-03-0{1 + serial % 9}",
                str(year),
            ]
        )

    for s, (label, _code) in enumerate(SPOKES):
        for i in range(HUB_ENTRIES):
            page = f"Hub {label} {i + 1}"
            year = 2007 + (s + i) % 11
            mention(page, f"History/{i % 2}", year)
            mention(page, f"{label}/{i % 2}", year)
    for p in range(0, len(SPOKES), 2):
        left, right = SPOKES[p][0], SPOKES[p + 1][0]
        for i in range(PAIR_ENTRIES):
            page = f"Pair {left} {right} {i + 1}"
            year = 2007 + (p + i) % 11
            mention(page, f"{left}/{i % 2}", year)
            mention(page, f"{right}/{(i + 1) % 2}", year)
    for i in range(PAD_ENTRIES):
        page = f"Pad {i + 1}"
        mention(page, "History/0", 2010 + i)
        mention(page, "History/1", 2010 + i)

    with open(DATA / "mentions_hub.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            [
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
        )
        writer.writerows(rows)

    with open(DATA / "sources_hub.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            [
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
        )
        for n, (title, issn, code) in enumerate(sorted(journals.values())):
            writer.writerow(
                [title, issn, "", code, "", "false", "50.0", str(100 + n), str(1000 + 10 * n)]
            )

    print(f"wrote {len(rows)} mention rows and {len(journals)} journals under {DATA}")


if __name__ == "__main__":
    main()
