"""Dialect-geography analyses over distance matrices and word lists.

Three studies: mean distance of each language to all the others (small
mean = lexically central, the homeland signal), distances of every
dialect to a pair of outside reference languages with their ratio, and
the dominance test asking whether one reference is uniformly closer
than the other.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .distance import DistanceMatrix, language_distance
from .errors import ContractError
from .fixtures import DialectEntry, RegionGroup
from .wordlists import WordList


@dataclass(frozen=True)
class AverageEntry:
    language_id: str
    mean_distance: float
    rank: int  # 1 = smallest mean


@dataclass(frozen=True)
class AverageDistanceReport:
    """Per-language mean distances, in matrix label order.

    Ranks are a permutation of 1..N ascending by mean; equal means are
    ordered by label so the ranking never depends on row order, and the
    tied labels are recorded.
    """

    entries: tuple[AverageEntry, ...]
    ties: tuple[tuple[str, ...], ...]

    def by_rank(self) -> list[AverageEntry]:
        return sorted(self.entries, key=lambda e: e.rank)

    def entry_for(self, language_id: str) -> AverageEntry:
        for entry in self.entries:
            if entry.language_id == language_id:
                return entry
        raise KeyError(language_id)


def average_distances(matrix: DistanceMatrix) -> AverageDistanceReport:
    """Mean distance of each language to the other N-1."""
    matrix.check()
    n = matrix.size
    if n < 2:
        raise ContractError(f"need at least 2 languages, got {n}")
    means = [
        math.fsum(matrix.entry(i, j) for j in range(n) if j != i) / (n - 1)
        for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: (means[i], matrix.labels[i]))
    ranks = [0] * n
    for pos, i in enumerate(order):
        ranks[i] = pos + 1
    grouped: dict[float, list[str]] = {}
    for i in order:
        grouped.setdefault(means[i], []).append(matrix.labels[i])
    ties = tuple(tuple(g) for g in grouped.values() if len(g) > 1)
    entries = tuple(
        AverageEntry(language_id=matrix.labels[i], mean_distance=means[i], rank=ranks[i])
        for i in range(n)
    )
    return AverageDistanceReport(entries=entries, ties=ties)


@dataclass(frozen=True)
class RefRecord:
    """Distances of one dialect to the two reference languages.

    ratio is d_ref1 / d_ref2, left as None when d_ref2 is zero."""

    language_id: str
    d_ref1: float
    d_ref2: float
    ratio: float | None


@dataclass(frozen=True)
class RefComparison:
    ref1_id: str
    ref2_id: str
    records: tuple[RefRecord, ...]


def reference_comparison(
    dialects: Sequence[WordList], ref1: WordList, ref2: WordList
) -> RefComparison:
    """Distance of every dialect to both references, with the ratio.

    Each dialect must share at least one filled meaning slot with each
    reference (language_distance raises otherwise, naming the pair).
    """
    records = []
    for dialect in dialects:
        d1 = language_distance(dialect, ref1).value
        d2 = language_distance(dialect, ref2).value
        ratio = d1 / d2 if d2 > 0.0 else None
        records.append(
            RefRecord(
                language_id=dialect.language_id, d_ref1=d1, d_ref2=d2, ratio=ratio
            )
        )
    return RefComparison(
        ref1_id=ref1.language_id, ref2_id=ref2.language_id, records=tuple(records)
    )


@dataclass(frozen=True)
class DominanceResult:
    """holds is true when every dialect is strictly closer to ref2 than
    any dialect is to ref1; margin = min(d_ref1) - max(d_ref2)."""

    holds: bool
    margin: float


def dominance_check(comparison: RefComparison) -> DominanceResult:
    if not comparison.records:
        raise ContractError("dominance check needs at least one dialect")
    min_ref1 = min(r.d_ref1 for r in comparison.records)
    max_ref2 = max(r.d_ref2 for r in comparison.records)
    margin = min_ref1 - max_ref2
    return DominanceResult(holds=max_ref2 < min_ref1, margin=margin)


@dataclass(frozen=True)
class HomelandCandidate:
    language_id: str
    town: str
    region_group: RegionGroup
    mean_distance: float
    rank: int


def homeland_candidates(
    report: AverageDistanceReport, registry: Sequence[DialectEntry], k: int
) -> list[HomelandCandidate]:
    """The k languages with the smallest mean distance, annotated with
    registry geography. Report and registry must cover the same labels."""
    by_label = {entry.label: entry for entry in registry}
    report_labels = {entry.language_id for entry in report.entries}
    if report_labels != set(by_label):
        missing = sorted(report_labels ^ set(by_label))
        raise ContractError(f"report and registry labels differ: {missing}")
    if not 1 <= k <= len(report.entries):
        raise ContractError(f"k must be in 1..{len(report.entries)}, got {k}")
    out = []
    for entry in report.by_rank()[:k]:
        reg = by_label[entry.language_id]
        out.append(
            HomelandCandidate(
                language_id=entry.language_id,
                town=reg.town,
                region_group=reg.region_group,
                mean_distance=entry.mean_distance,
                rank=entry.rank,
            )
        )
    return out


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def write_averages_csv(
    report: AverageDistanceReport, towns: Mapping[str, str] | None = None
) -> str:
    """Rows in matrix label order: language_id,town,mean_distance,rank."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["language_id", "town", "mean_distance", "rank"])
    for entry in report.entries:
        town = towns.get(entry.language_id, "") if towns else ""
        writer.writerow([entry.language_id, town, _fmt(entry.mean_distance), entry.rank])
    return buf.getvalue()


def write_averages_json(
    report: AverageDistanceReport, towns: Mapping[str, str] | None = None
) -> str:
    payload = {
        "entries": [
            {
                "language_id": e.language_id,
                "town": (towns.get(e.language_id, "") if towns else ""),
                "mean_distance": round(e.mean_distance, 6),
                "rank": e.rank,
            }
            for e in report.entries
        ],
        "ties": [list(group) for group in report.ties],
    }
    return json.dumps(payload, indent=2) + "\n"


def write_refcomp_csv(comparison: RefComparison) -> str:
    """Per-dialect distances to both references; ratio empty if undefined."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "language_id",
            f"d_{comparison.ref1_id}",
            f"d_{comparison.ref2_id}",
            "ratio",
        ]
    )
    for rec in comparison.records:
        writer.writerow(
            [
                rec.language_id,
                _fmt(rec.d_ref1),
                _fmt(rec.d_ref2),
                _fmt(rec.ratio) if rec.ratio is not None else "",
            ]
        )
    return buf.getvalue()


def write_refcomp_json(comparison: RefComparison) -> str:
    dominance = dominance_check(comparison)
    payload = {
        "ref1": comparison.ref1_id,
        "ref2": comparison.ref2_id,
        "records": [
            {
                "language_id": r.language_id,
                "d_ref1": round(r.d_ref1, 6),
                "d_ref2": round(r.d_ref2, 6),
                "ratio": round(r.ratio, 6) if r.ratio is not None else None,
            }
            for r in comparison.records
        ],
        "dominance": {"holds": dominance.holds, "margin": round(dominance.margin, 6)},
    }
    return json.dumps(payload, indent=2) + "\n"
