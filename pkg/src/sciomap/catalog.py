"""ISSN canonicalization, journal indexing, and specialty label resolution."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "IssnError",
    "IssnLengthError",
    "IssnCharacterError",
    "IssnChecksumError",
    "normalize_issn",
    "Conflict",
    "JournalIndex",
    "build_journal_index",
    "LabelVocabulary",
    "load_label_vocabulary",
    "parse_label_vocabulary",
    "UnclassifiableJournalError",
    "resolve_specialties",
]


class IssnError(ValueError):
    """Base class for ISSN validation failures."""


class IssnLengthError(IssnError):
    """ISSN does not have exactly 8 significant characters."""


class IssnCharacterError(IssnError):
    """ISSN contains characters other than digits (or a final X)."""


class IssnChecksumError(IssnError):
    """ISSN check digit does not match the mod-11 checksum."""


def normalize_issn(raw: str) -> str:
    """Canonicalize an ISSN: strip separators, uppercase, verify the check digit.

    Returns the 8-character canonical form (digits, optional final ``X``).
    Raises IssnLengthError, IssnCharacterError, or IssnChecksumError so
    callers can distinguish the failure mode.
    """
    compact = raw.replace("-", "").replace(" ", "").upper()
    if len(compact) != 8:
        raise IssnLengthError(f"ISSN {raw!r} has {len(compact)} significant characters, expected 8")
    body, check = compact[:7], compact[7]
    if not body.isdigit():
        raise IssnCharacterError(f"ISSN {raw!r} has a non-digit in its first 7 characters")
    if not (check.isdigit() or check == "X"):
        raise IssnCharacterError(f"ISSN {raw!r} has an invalid check character {check!r}")
    # Mod-11 checksum: weights 8..2 over the body, 11 - (sum mod 11), 10 -> X, 11 -> 0.
    total = sum(int(d) * w for d, w in zip(body, range(8, 1, -1)))
    expected = (11 - (total % 11)) % 11
    expected_char = "X" if expected == 10 else str(expected)
    if check != expected_char:
        raise IssnChecksumError(f"ISSN {raw!r} check digit {check!r} does not match expected {expected_char!r}")
    return compact


@dataclass(frozen=True)
class Conflict:
    """Two journal records claimed the same ISSN; the first one was kept."""

    issn: str
    kept_title: str
    dropped_title: str


@dataclass
class JournalIndex:
    """Lookup table from canonical ISSN (print or electronic) to journal record.

    Immutable after construction; safe for concurrent readers.
    """

    by_issn: dict = field(default_factory=dict)

    def get(self, issn: str):
        return self.by_issn.get(issn)

    def __contains__(self, issn: str) -> bool:
        return issn in self.by_issn

    def __len__(self) -> int:
        return len(self.by_issn)

    def journals(self) -> list:
        """Distinct journal records, ordered by primary ISSN."""
        seen: dict[int, object] = {}
        for rec in self.by_issn.values():
            seen.setdefault(id(rec), rec)
        return sorted(seen.values(), key=lambda r: r.primary_issn())


def build_journal_index(journals) -> tuple[JournalIndex, list[Conflict]]:
    """Index journal records under every canonical ISSN they carry.

    When two records claim the same ISSN the first record wins and a
    Conflict is reported; nothing is fatal.
    """
    index = JournalIndex()
    conflicts: list[Conflict] = []
    for rec in journals:
        for issn in (rec.print_issn, rec.e_issn):
            if issn is None:
                continue
            existing = index.by_issn.get(issn)
            if existing is None:
                index.by_issn[issn] = rec
            elif existing is not rec:
                conflicts.append(Conflict(issn=issn, kept_title=existing.title, dropped_title=rec.title))
    return index, conflicts


class UnclassifiableJournalError(ValueError):
    """No classification code of the journal resolved to a known label."""


@dataclass
class LabelVocabulary:
    """Classification-code vocabulary: code -> label, with fold-in targets.

    ``folds`` maps a raw label to the unified label it is merged into
    (e.g. a miscellaneous/general variant folding into the discipline label).
    """

    by_code: dict[str, str] = field(default_factory=dict)
    folds: dict[str, str] = field(default_factory=dict)

    def unified_labels(self) -> set[str]:
        """The final label set after applying all folds."""
        return {self.folds.get(label, label) for label in self.by_code.values()}

    def resolve_code(self, code: str) -> str | None:
        label = self.by_code.get(code)
        if label is None:
            return None
        return self.folds.get(label, label)


def parse_label_vocabulary(text: str) -> LabelVocabulary:
    """Parse the plain-text label table: ``code, label[, folds-into]`` per line.

    Blank lines and ``#`` comments are ignored.
    """
    vocab = LabelVocabulary()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (2, 3) or not parts[0] or not parts[1]:
            raise ValueError(f"label vocabulary line {lineno}: expected 'code, label[, folds-into]', got {line!r}")
        code, label = parts[0], parts[1]
        if code in vocab.by_code:
            raise ValueError(f"label vocabulary line {lineno}: duplicate code {code!r}")
        vocab.by_code[code] = label
        if len(parts) == 3 and parts[2]:
            vocab.folds[label] = parts[2]
    return vocab


def load_label_vocabulary(path) -> LabelVocabulary:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_label_vocabulary(fh.read())


def resolve_specialties(record, vocabulary: LabelVocabulary) -> tuple[set[str], set[str]]:
    """Resolve a journal's classification codes to the unified specialty labels.

    Returns ``(labels, unknown_codes)``. Unknown codes are dropped and
    reported; an empty result raises UnclassifiableJournalError.
    """
    labels: set[str] = set()
    unknown: set[str] = set()
    for code in record.asjc_codes:
        label = vocabulary.resolve_code(code)
        if label is None:
            unknown.add(code)
        else:
            labels.add(label)
    if not labels:
        raise UnclassifiableJournalError(
            f"journal {record.title!r}: no classification code resolved (codes={sorted(record.asjc_codes)})"
        )
    return labels, unknown
