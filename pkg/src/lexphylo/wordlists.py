"""Swadesh word-list ingestion, normalization and corpus validation.

A word list is a mapping from meaning slots (1..M, default M=200) to a
single orthographic form per slot. Lists are read from UTF-8 TSV files
with the header ``index<TAB>gloss<TAB>word``; the file name (sans
extension) doubles as the default language id. Forms are normalized
before any comparison: canonical composition, lowercasing, and removal
of whitespace, hyphens and control characters, so that edit distances
count segmental content rather than punctuation conventions.

Missing slots are allowed (coverage < M); downstream distance code
averages over slots shared by both lists and reports the effective
sample size.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Sequence

from .errors import (
    EmptyFormError,
    EncodingError,
    ParseError,
    ValidationError,
)

DEFAULT_MEANINGS = 200  # the classic Swadesh list size

HEADER = "index\tgloss\tword"

# Hyphen-like code points stripped before comparison; they are spelling
# conventions, not segments, and would inflate edit counts.
_HYPHENS = frozenset("-‐‑‒–—―")


def normalize_form(raw: str) -> str:
    """Normalize an orthographic form for distance comparison.

    Applies Unicode canonical composition (NFC), case-folds to lowercase,
    and removes all whitespace, hyphens and control/format characters.
    The result is re-composed so that equal-looking forms compare equal
    codepoint by codepoint.

    Raises EmptyFormError if nothing remains.
    """
    text = unicodedata.normalize("NFC", raw).casefold()
    kept = []
    for ch in text:
        if ch.isspace() or ch in _HYPHENS:
            continue
        if unicodedata.category(ch) in ("Cc", "Cf"):
            continue
        kept.append(ch)
    form = unicodedata.normalize("NFC", "".join(kept))
    if not form:
        raise EmptyFormError(f"form is empty after normalization: {raw!r}")
    return form


@dataclass(frozen=True)
class WordList:
    """One language or dialect's Swadesh list.

    ``forms`` maps meaning index -> normalized form (at most one form per
    meaning); ``glosses`` keeps the English meaning labels for round-trip
    serialization. Instances are treated as immutable after construction
    and are safe to share across threads.
    """

    language_id: str
    forms: dict[int, str]
    glosses: dict[int, str] = field(default_factory=dict)
    town: str | None = None

    @property
    def coverage(self) -> int:
        """Number of filled meaning slots."""
        return len(self.forms)

    def shared_slots(self, other: "WordList") -> list[int]:
        """Meaning indices filled in both lists, ascending."""
        return sorted(self.forms.keys() & other.forms.keys())


def parse_wordlist(
    source: str | Path | BinaryIO,
    *,
    language_id: str | None = None,
    meanings: int = DEFAULT_MEANINGS,
    town: str | None = None,
) -> WordList:
    """Parse a UTF-8 TSV word list.

    ``source`` may be a path or a binary stream. When a path is given and
    ``language_id`` is not, the file stem is used as the language id.
    Forms are normalized via normalize_form. Rows with a wrong column
    count raise ParseError with the offending line number; duplicate or
    out-of-range meaning indices raise ValidationError.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        data = path.read_bytes()
        name = path.name
        if language_id is None:
            language_id = path.stem
    else:
        data = source.read()
        name = getattr(source, "name", "<stream>")
        if language_id is None:
            raise ValidationError(f"{name}: language_id is required for stream input")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{name}: not valid UTF-8 ({exc})") from None
    return parse_wordlist_text(
        text, language_id=language_id, meanings=meanings, town=town, name=name
    )


def parse_wordlist_text(
    text: str,
    *,
    language_id: str,
    meanings: int = DEFAULT_MEANINGS,
    town: str | None = None,
    name: str = "<text>",
) -> WordList:
    """Parse word-list TSV content that has already been decoded."""
    lines = text.splitlines()
    if not lines or lines[0].rstrip("\r") != HEADER:
        raise ParseError(f"{name}:1: expected header {HEADER!r}")
    forms: dict[int, str] = {}
    glosses: dict[int, str] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.rstrip("\r")
        if not line:
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise ParseError(
                f"{name}:{lineno}: expected 3 tab-separated columns, got {len(cells)}"
            )
        raw_index, gloss, word = cells
        try:
            index = int(raw_index)
        except ValueError:
            raise ParseError(f"{name}:{lineno}: meaning index {raw_index!r} is not an integer") from None
        if not 1 <= index <= meanings:
            raise ValidationError(
                f"{name}:{lineno}: meaning index {index} outside [1, {meanings}]"
            )
        if index in forms:
            raise ValidationError(f"{name}:{lineno}: duplicate meaning index {index}")
        try:
            forms[index] = normalize_form(word)
        except EmptyFormError:
            raise ValidationError(f"{name}:{lineno}: empty word form for meaning {index}") from None
        glosses[index] = gloss
    return WordList(language_id=language_id, forms=forms, glosses=glosses, town=town)


def serialize_wordlist(wordlist: WordList) -> str:
    """Render a WordList back to its TSV file format.

    parse_wordlist_text(serialize_wordlist(w), language_id=w.language_id)
    reproduces ``w`` for any list whose forms are already normalized.
    """
    rows = [HEADER]
    for index in sorted(wordlist.forms):
        gloss = wordlist.glosses.get(index, "")
        rows.append(f"{index}\t{gloss}\t{wordlist.forms[index]}")
    return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class LanguageSummary:
    """Per-language entry of a corpus validation report."""

    language_id: str
    coverage: int
    missing: tuple[int, ...]  # slots absent relative to the corpus union


@dataclass(frozen=True)
class CorpusReport:
    """Result of validate_corpus: per-language coverage plus warnings."""

    languages: tuple[LanguageSummary, ...]
    warnings: tuple[str, ...]

    def format_text(self) -> str:
        lines = []
        for entry in self.languages:
            missing = ",".join(str(i) for i in entry.missing) if entry.missing else "-"
            lines.append(
                f"{entry.language_id}\tcoverage={entry.coverage}\tmissing={missing}"
            )
        for warning in self.warnings:
            lines.append(f"warning: {warning}")
        return "\n".join(lines) + "\n"


def validate_corpus(
    lists: Sequence[WordList], *, coverage_floor: int = 100
) -> CorpusReport:
    """Check a set of word lists for use as a distance corpus.

    Duplicate language ids are a hard error. Coverage below
    ``coverage_floor`` produces a warning entry. The report names, per
    language, the meaning slots missing relative to the union of all
    filled slots.
    """
    if len(lists) < 2:
        raise ValidationError(f"need at least 2 word lists, got {len(lists)}")
    seen: set[str] = set()
    for wl in lists:
        if wl.language_id in seen:
            raise ValidationError(f"duplicate language id {wl.language_id!r}")
        seen.add(wl.language_id)
    union: set[int] = set()
    for wl in lists:
        union |= wl.forms.keys()
    summaries = []
    warnings = []
    for wl in lists:
        missing = tuple(sorted(union - wl.forms.keys()))
        summaries.append(
            LanguageSummary(
                language_id=wl.language_id, coverage=wl.coverage, missing=missing
            )
        )
        if wl.coverage < coverage_floor:
            warnings.append(
                f"{wl.language_id}: coverage {wl.coverage} below floor {coverage_floor}"
            )
    return CorpusReport(languages=tuple(summaries), warnings=tuple(warnings))
