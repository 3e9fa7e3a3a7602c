"""Normalized edit distances between words, languages and whole corpora.

The word distance is the Levenshtein edit distance divided by the length
of the longer word, which bounds it in [0, 1] and keeps it a metric: a
single substitution between two 2-letter words scores 0.5, between two
8-letter words only 0.125. The language distance is the mean word
distance over all meaning slots filled in both lists.

A DistanceMatrix is a labeled symmetric grid with zero diagonal. The
same class carries plain lexical distances (unit range) and separation
times in years; unit-range validation is applied only where an operation
requires it. Export formats: full-precision square CSV, JSON
``{labels, entries}``, and a lower-triangular integer table (entries
multiplied by 1000, rounded half away from zero) with a trailing label
legend.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ContractError, EmptyFormError, NoOverlapError, ParseError, ValidationError
from .wordlists import WordList


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character insertions, deletions or
    substitutions transforming ``a`` into ``b``.

    Operates on Unicode scalar values; forms are expected to be
    normalized already. Always <= max(len(a), len(b)).
    """
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    # two-row dynamic program over the edit lattice
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        append = current.append
        for j, cb in enumerate(b, start=1):
            cost = previous[j - 1] if ca == cb else previous[j - 1] + 1
            deletion = previous[j] + 1
            insertion = current[j - 1] + 1
            if deletion < cost:
                cost = deletion
            if insertion < cost:
                cost = insertion
            append(cost)
        previous = current
    return previous[-1]


def word_distance(a: str, b: str) -> float:
    """Levenshtein distance normalized by the longer word's length.

    Returns a value in [0, 1]; 0 iff the forms are equal. Empty forms are
    rejected (normalization upstream forbids them, which also makes the
    0/0 case unreachable).
    """
    if not a or not b:
        raise EmptyFormError("word_distance requires non-empty forms")
    return levenshtein(a, b) / max(len(a), len(b))


@dataclass(frozen=True)
class LanguageDistance:
    """Mean word distance between two lists plus the effective sample size."""

    value: float
    slots_compared: int


def language_distance(a: WordList, b: WordList) -> LanguageDistance:
    """Mean word distance over the meaning slots filled in BOTH lists.

    ``slots_compared`` records the effective number of meanings; lists
    with no shared slot raise NoOverlapError rather than returning a
    biased value.
    """
    shared = a.shared_slots(b)
    if not shared:
        raise NoOverlapError(
            f"{a.language_id!r} and {b.language_id!r} share no filled meaning slot"
        )
    total = math.fsum(word_distance(a.forms[i], b.forms[i]) for i in shared)
    return LanguageDistance(value=total / len(shared), slots_compared=len(shared))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric labeled matrix with zero diagonal.

    ``values[i][j]`` is the distance (or separation time) between
    ``labels[i]`` and ``labels[j]``. Rows are stored fully populated;
    construction order of entries never affects the stored bits.
    """

    labels: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> float:
        return self.values[i][j]

    def get(self, label_a: str, label_b: str) -> float:
        return self.values[self.labels.index(label_a)][self.labels.index(label_b)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def check(self, *, unit_range: bool = False) -> None:
        """Validate symmetry and the zero diagonal; raise ContractError
        otherwise. With unit_range=True also require entries in [0, 1]."""
        n = self.size
        if any(len(row) != n for row in self.values) or len(self.values) != n:
            raise ContractError("matrix is not square")
        if len(set(self.labels)) != n:
            raise ContractError("matrix labels are not unique")
        for i in range(n):
            if self.values[i][i] != 0.0:
                raise ContractError(f"non-zero diagonal at {self.labels[i]!r}")
            for j in range(i + 1, n):
                if self.values[i][j] != self.values[j][i]:
                    raise ContractError(
                        f"asymmetric entries for ({self.labels[i]!r}, {self.labels[j]!r})"
                    )
                if unit_range and not 0.0 <= self.values[i][j] <= 1.0:
                    raise ContractError(
                        f"entry for ({self.labels[i]!r}, {self.labels[j]!r}) outside [0, 1]"
                    )

    def scaled(self, factor: float) -> "DistanceMatrix":
        """New matrix with every entry multiplied by ``factor``."""
        return DistanceMatrix(
            labels=self.labels,
            values=tuple(tuple(v * factor for v in row) for row in self.values),
        )


def matrix_from_rows(labels: Sequence[str], rows: Sequence[Sequence[float]]) -> DistanceMatrix:
    """Build a DistanceMatrix from mutable row data."""
    return DistanceMatrix(
        labels=tuple(labels), values=tuple(tuple(row) for row in rows)
    )


def build_matrix(lists: Sequence[WordList]) -> DistanceMatrix:
    """Pairwise language distances over a set of word lists.

    Labels follow the caller-provided list order. Any pair with zero
    overlap raises NoOverlapError naming the pair. The result is a pure
    function of the inputs: evaluation order cannot change a single bit.
    """
    if len(lists) < 2:
        raise ValidationError(f"need at least 2 word lists, got {len(lists)}")
    labels = [wl.language_id for wl in lists]
    if len(set(labels)) != len(labels):
        raise ValidationError("duplicate language ids in matrix input")
    n = len(lists)
    rows = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = language_distance(lists[i], lists[j]).value
            rows[i][j] = rows[j][i] = d
    return matrix_from_rows(labels, rows)


def round_half_away(value: float) -> int:
    """Round a non-negative value to the nearest integer, halves away
    from zero (matching the integer-table export convention)."""
    return int(math.floor(value + 0.5))


def format_float(value: float) -> str:
    """Full-precision float rendering; integral values drop the '.0'."""
    text = repr(value)
    return text[:-2] if text.endswith(".0") else text


def write_matrix_csv(matrix: DistanceMatrix) -> str:
    """Square CSV with a header row/column of language ids and
    full-precision entries."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["language_id", *matrix.labels])
    for label, row in zip(matrix.labels, matrix.values):
        writer.writerow([label, *(format_float(v) for v in row)])
    return out.getvalue()


def read_matrix_csv(text: str, *, name: str = "<csv>") -> DistanceMatrix:
    """Parse the square CSV format back into a DistanceMatrix."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise ParseError(f"{name}: empty matrix file")
    labels = tuple(rows[0][1:])
    if len(rows) - 1 != len(labels):
        raise ParseError(
            f"{name}: header names {len(labels)} languages but file has {len(rows) - 1} rows"
        )
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(labels) + 1:
            raise ParseError(
                f"{name}:{lineno}: expected {len(labels) + 1} columns, got {len(row)}"
            )
        if row[0] != labels[lineno - 2]:
            raise ParseError(
                f"{name}:{lineno}: row label {row[0]!r} does not match header order"
            )
        try:
            values.append(tuple(float(cell) for cell in row[1:]))
        except ValueError as exc:
            raise ParseError(f"{name}:{lineno}: {exc}") from None
    matrix = DistanceMatrix(labels=labels, values=tuple(values))
    try:
        matrix.check()
    except ContractError as exc:
        raise ParseError(f"{name}: {exc}") from None
    return matrix


def write_matrix_json(matrix: DistanceMatrix) -> str:
    """JSON object {labels, entries} with full-precision values."""
    payload = {"labels": list(matrix.labels), "entries": [list(r) for r in matrix.values]}
    return json.dumps(payload, indent=2) + "\n"


def read_matrix_json(text: str, *, name: str = "<json>") -> DistanceMatrix:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: {exc}") from None
    if not isinstance(payload, dict) or "labels" not in payload or "entries" not in payload:
        raise ParseError(f"{name}: expected an object with 'labels' and 'entries'")
    try:
        matrix = DistanceMatrix(
            labels=tuple(str(l) for l in payload["labels"]),
            values=tuple(tuple(float(v) for v in row) for row in payload["entries"]),
        )
        matrix.check()
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name}: {exc}") from None
    except ContractError as exc:
        raise ParseError(f"{name}: {exc}") from None
    return matrix


def write_matrix_appendix(
    matrix: DistanceMatrix, display_names: Mapping[str, str] | None = None
) -> str:
    """Lower-triangular integer table (entries x1000) plus label legend.

    Each non-trivial entry is printed as a zero-padded integer; row and
    column indices are 1-based. ``display_names`` optionally maps labels
    to the legend text (defaults to the label itself).
    """
    n = matrix.size
    ints = [
        [round_half_away(matrix.entry(i, j) * 1000.0) for j in range(i)]
        for i in range(n)
    ]
    width = max(3, max((len(str(v)) for row in ints for v in row), default=3))
    lines = []
    for i in range(n):
        cells = " ".join(f"{v:0{width}d}" for v in ints[i])
        row_label = f"{i + 1:>2}"
        lines.append(f"{row_label} {cells}".rstrip())
    lines.append("")
    lines.append("   " + " ".join(f"{j + 1:>{width}}" for j in range(n - 1)))
    lines.append("")
    for i, label in enumerate(matrix.labels):
        display = display_names.get(label, label) if display_names else label
        lines.append(f"{i + 1:>2} {display}")
    return "\n".join(lines) + "\n"


def read_matrix_file(path: str | Path) -> DistanceMatrix:
    """Read a matrix from a .csv or .json file (dispatch on extension)."""
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if p.suffix.lower() == ".json":
        return read_matrix_json(text, name=p.name)
    return read_matrix_csv(text, name=p.name)
