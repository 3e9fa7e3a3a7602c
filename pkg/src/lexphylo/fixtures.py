"""Bundled reference dataset: 23 Malagasy dialect word lists of 200
meanings each, collected in 2010 across the island, condensed to their
pairwise lexical distance matrix.

The matrix ships as the published lower triangle of integers (distance
times 1000) so the file diffs cleanly against its source; a checksum
guards the transcription. Each dialect is identified by name and the
town where the list was collected, joined as ``Name_Town`` for machine
labels.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass

from .distance import DistanceMatrix, matrix_from_rows
from .errors import ContractError
from .phylogeny import PhyloTree, TreeNode

# Lower triangle, row i (2..23) listing distances to 1..i-1, times 1000.
_TRIANGLE = """
323
246 276
322 240 295
302 281 309 345
227 318 275 359 266
413 386 390 418 314 370
280 386 342 401 356 245 436
366 424 379 412 405 375 450 409
411 396 416 440 318 366 249 456 482
207 326 260 362 286 061 383 201 374 384
362 343 345 387 292 328 289 397 435 330 324
303 369 330 381 384 329 454 362 256 487 318 407
343 302 331 355 243 317 303 403 423 314 336 301 419
397 453 394 462 392 375 342 463 485 304 383 405 471 388
368 391 385 416 392 390 448 406 320 474 383 429 325 418 486
400 350 369 390 280 358 165 433 427 278 373 240 439 261 358 410
322 376 325 374 391 337 426 381 198 473 339 412 234 406 461 264 414
358 407 376 417 408 394 440 419 292 481 387 431 325 422 472 161 408 243
297 388 359 430 356 299 400 346 386 433 275 375 363 375 455 348 394 349 355
386 341 370 385 290 344 262 403 422 321 348 250 404 306 403 401 213 416 417 383
225 389 332 394 382 316 471 319 385 475 287 421 296 431 480 382 467 348 387 356 441
379 424 407 424 398 380 443 433 315 466 380 412 351 420 472 203 395 288 202 351 409 406
"""

# sha256 over ",".join of the 253 integers in row-major triangle order
APPENDIX_SHA256 = "f1e6131be2caaf1dfe82ba6c16dca2a8fdd9cd6fa108794e0ca63d955188d5b7"


class RegionGroup(str, enum.Enum):
    """Geographic grouping of the dialects, matching the four clusters
    the reference tree splits into at its two top levels. Antandroy
    stands alone: it is the most divergent dialect and no regional
    cluster absorbs it."""

    EAST_CENTER = "east-center"
    NORTH = "north"
    SOUTH_WEST = "south-west"
    ANTANDROY = "antandroy"


@dataclass(frozen=True)
class DialectEntry:
    """One dialect of the reference set."""

    index: int  # 1-based position in the published matrix
    name: str
    town: str
    region_group: RegionGroup

    @property
    def label(self) -> str:
        return f"{self.name}_{self.town}"

    @property
    def display(self) -> str:
        return f"{self.name} ({self.town})"


_SOUTH_WEST = {5, 7, 10, 12, 14, 17, 21}
_NORTH = {9, 13, 16, 18, 19, 23}
_ANTANDROY = {15}


def _group_for(index: int) -> RegionGroup:
    if index in _ANTANDROY:
        return RegionGroup.ANTANDROY
    if index in _SOUTH_WEST:
        return RegionGroup.SOUTH_WEST
    if index in _NORTH:
        return RegionGroup.NORTH
    return RegionGroup.EAST_CENTER


_NAMES: tuple[tuple[str, str], ...] = (
    ("Antambohoaka", "Mananjary"),
    ("Antaisaka", "Vangaindrano"),
    ("Antaimoro", "Manakara"),
    ("Zafisoro", "Farafangana"),
    ("Bara", "Betroka"),
    ("Betsileo", "Fianarantsoa"),
    ("Vezo", "Toliara"),
    ("Sihanaka", "Ambatondranzaka"),
    ("Tsimihety", "Mandritsara"),
    ("Mahafaly", "Ampanihy"),
    ("Merina", "Antananarivo"),
    ("Sakalava", "Morondava"),
    ("Betsimisaraka", "Fenoarivo-Est"),
    ("Antanosy", "Tolagnaro"),
    ("Antandroy", "Ambovombe"),
    ("Antankarana", "Vohemar"),
    ("Masikoro", "Miary"),
    ("Antankarana", "Antalaha"),
    ("Sakalava", "Ambanja"),
    ("Sakalava", "Majunga"),
    ("Sakalava", "Maintirano"),
    ("Betsimisaraka", "Mahanoro"),
    ("Antankarana", "Ambilobe"),
)

COLLECTION_YEAR = 2010
REFERENCE_SIZE = 23


def load_registry() -> tuple[DialectEntry, ...]:
    """The 23 dialects in published matrix order."""
    return tuple(
        DialectEntry(index=i, name=name, town=town, region_group=_group_for(i))
        for i, (name, town) in enumerate(_NAMES, start=1)
    )


def appendix_integers() -> list[int]:
    """The 253 published triangle integers in row-major order, verified
    against the frozen checksum."""
    rows = _TRIANGLE.strip().splitlines()
    if len(rows) != REFERENCE_SIZE - 1:
        raise ContractError(
            f"reference triangle has {len(rows)} rows, expected {REFERENCE_SIZE - 1}"
        )
    values: list[int] = []
    for r, row in enumerate(rows, start=2):
        cells = row.split()
        if len(cells) != r - 1:
            raise ContractError(
                f"reference triangle row {r} has {len(cells)} cells, expected {r - 1}"
            )
        values.extend(int(c) for c in cells)
    digest = hashlib.sha256(",".join(str(v) for v in values).encode("ascii")).hexdigest()
    if digest != APPENDIX_SHA256:
        raise ContractError(
            f"reference triangle checksum mismatch: {digest} != {APPENDIX_SHA256}"
        )
    return values


def load_reference_matrix() -> DistanceMatrix:
    """The full symmetric 23x23 distance matrix (integers / 1000)."""
    values = appendix_integers()
    registry = load_registry()
    labels = tuple(entry.label for entry in registry)
    n = REFERENCE_SIZE
    rows = [[0.0] * n for _ in range(n)]
    it = iter(values)
    for i in range(1, n):
        for j in range(i):
            d = next(it) / 1000.0
            rows[i][j] = rows[j][i] = d
    matrix = matrix_from_rows(labels, rows)
    matrix.check(unit_range=True)
    return matrix


def registry_by_label() -> dict[str, DialectEntry]:
    return {entry.label: entry for entry in load_registry()}


def derive_region_groups(tree: PhyloTree) -> dict[str, RegionGroup]:
    """Recompute each leaf's region group from tree structure alone.

    Cutting the tree below the root and again below the larger child
    yields four leaf sets. They are named by anchor members with
    unambiguous geography: Vezo_Toliara sits on the south-west coast,
    Antankarana_Vohemar at the northern tip, Merina_Antananarivo in the
    center, and a singleton group can only be the Antandroy isolate.
    """
    if len(tree.root.children) != 2:
        raise ContractError("expected a binary root")
    groups: list[frozenset[str]] = []
    for side in tree.root.children:
        parts: tuple[TreeNode, ...] = (side,) if side.is_leaf else side.children
        groups.extend(frozenset(part.leaf_names()) for part in parts)
    if len(groups) != 4:
        raise ContractError(f"expected 4 region groups, derived {len(groups)}")

    anchors = {
        "Vezo_Toliara": RegionGroup.SOUTH_WEST,
        "Antankarana_Vohemar": RegionGroup.NORTH,
        "Merina_Antananarivo": RegionGroup.EAST_CENTER,
    }
    assignment: dict[str, RegionGroup] = {}
    named: set[RegionGroup] = set()
    unnamed: list[frozenset[str]] = []
    for group in groups:
        hit = [g for label, g in anchors.items() if label in group]
        if len(hit) > 1:
            raise ContractError(f"group {sorted(group)} matches several anchors")
        if hit:
            named.add(hit[0])
            for label in group:
                assignment[label] = hit[0]
        else:
            unnamed.append(group)
    if len(unnamed) != 1 or len(unnamed[0]) != 1:
        raise ContractError("expected exactly one singleton group without an anchor")
    for label in unnamed[0]:
        assignment[label] = RegionGroup.ANTANDROY
    if named != {RegionGroup.SOUTH_WEST, RegionGroup.NORTH, RegionGroup.EAST_CENTER}:
        raise ContractError("anchor dialects did not land in three distinct groups")
    return assignment
