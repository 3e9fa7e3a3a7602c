"""Separation times, UPGMA tree building, calibration and Newick output.

Lexical distances are converted to pairwise separation times with the
logarithmic rule ``T = -scale * ln(1 - D)``, the inverse of exponential
vocabulary decay. The rule's constant is a free parameter: once a tree
is calibrated (leaves pinned to the collection year, root to the
root-split year) the dated output no longer depends on it. Trees are
built with classic UPGMA: merge the two clusters with minimal average
linkage at half that distance, update linkage as the size-weighted mean
over all cross pairs. Ties are broken by the smallest leaf index in
label order, which makes every build byte-reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Iterator

from .distance import DistanceMatrix, format_float, matrix_from_rows
from .errors import (
    ContractError,
    DegenerateTreeError,
    ParseError,
    SaturationError,
    ValidationError,
)


@dataclass(frozen=True)
class TreeNode:
    """Node of a rooted binary ultrametric tree.

    Leaves carry a ``name`` and height 0; internal nodes carry the merge
    height (half the linkage distance, in the input matrix's units).
    ``date`` is filled by calibrate().
    """

    height: float
    children: tuple["TreeNode", ...] = ()
    name: str | None = None
    date: float | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["TreeNode"]:
        if self.is_leaf:
            return [self]
        out: list[TreeNode] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def leaf_names(self) -> list[str]:
        return [leaf.name or "" for leaf in self.leaves()]

    def min_leaf_name(self) -> str:
        return min(self.leaf_names())

    def walk(self) -> Iterator["TreeNode"]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class PhyloTree:
    """A rooted strictly-binary tree over a fixed leaf label set."""

    root: TreeNode
    labels: tuple[str, ...]

    @property
    def root_height(self) -> float:
        return self.root.height

    def root_bipartition(self) -> tuple[frozenset[str], frozenset[str]]:
        """Leaf sets of the two subtrees under the root."""
        left, right = self.root.children
        return frozenset(left.leaf_names()), frozenset(right.leaf_names())


@dataclass(frozen=True)
class Calibration:
    """Absolute dating anchors: leaves at collection_year, root at root_year."""

    collection_year: int = 2010
    root_year: int = 650

    def __post_init__(self) -> None:
        if self.root_year >= self.collection_year:
            raise ValidationError(
                f"root year {self.root_year} must precede collection year {self.collection_year}"
            )


def to_separation_times(matrix: DistanceMatrix, scale: float) -> DistanceMatrix:
    """Pairwise separation times ``-scale * ln(1 - D)`` in years.

    Every off-diagonal entry must be strictly below 1; a distance of 1
    has no finite separation time and raises SaturationError naming the
    pair.
    """
    if scale <= 0:
        raise ValidationError(f"scale must be positive, got {scale}")
    matrix.check()
    n = matrix.size
    rows = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = matrix.entry(i, j)
            pair = f"{matrix.labels[i]!r} and {matrix.labels[j]!r}"
            if d < 0.0:
                raise ValidationError(f"negative distance {d} between {pair}")
            if d >= 1.0:
                raise SaturationError(
                    f"distance {d} between {pair} has no finite separation time"
                )
            t = -scale * math.log1p(-d)
            rows[i][j] = rows[j][i] = t
    return matrix_from_rows(matrix.labels, rows)


def upgma(matrix: DistanceMatrix) -> PhyloTree:
    """Average-linkage agglomerative tree over a symmetric matrix.

    At each of the N-1 steps the pair of clusters with minimal average
    inter-cluster distance merges at height distance/2; distances to the
    merged cluster are size-weighted means, which keeps the linkage equal
    to the plain average over all cross pairs of leaves. When two pairs
    tie, the pair whose clusters contain the smallest leaf indices (in
    label order) merges first.
    """
    matrix.check()
    n = matrix.size
    if n < 2:
        raise ContractError(f"UPGMA needs at least 2 labels, got {n}")

    # cluster id -> state; leaf ids are 0..n-1, merged ids count upward
    nodes: dict[int, TreeNode] = {
        i: TreeNode(height=0.0, name=matrix.labels[i]) for i in range(n)
    }
    sizes: dict[int, int] = {i: 1 for i in range(n)}
    min_member: dict[int, int] = {i: i for i in range(n)}
    dist: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            dist[(i, j)] = matrix.entry(i, j)
    active: set[int] = set(range(n))
    next_id = n

    while len(active) > 1:
        best_key: tuple[float, int, int] | None = None
        best_pair: tuple[int, int] | None = None
        for (a, b), d in dist.items():
            if a not in active or b not in active:
                continue
            lo, hi = sorted((min_member[a], min_member[b]))
            key = (d, lo, hi)
            if best_key is None or key < best_key:
                best_key = key
                best_pair = (a, b)
        assert best_pair is not None
        a, b = best_pair
        d_min = dist[(min(a, b), max(a, b))]
        merged = TreeNode(
            height=d_min / 2.0,
            children=tuple(
                sorted((nodes[a], nodes[b]), key=TreeNode.min_leaf_name)
            ),
        )
        cid = next_id
        next_id += 1
        nodes[cid] = merged
        sizes[cid] = sizes[a] + sizes[b]
        min_member[cid] = min(min_member[a], min_member[b])
        active.discard(a)
        active.discard(b)
        for k in sorted(active):
            da = dist.pop((min(a, k), max(a, k)))
            db = dist.pop((min(b, k), max(b, k)))
            dist[(k, cid)] = (sizes[a] * da + sizes[b] * db) / (sizes[a] + sizes[b])
        active.add(cid)

    root = nodes[next_id - 1]
    return PhyloTree(root=root, labels=matrix.labels)


def calibrate(tree: PhyloTree, calibration: Calibration) -> PhyloTree:
    """Affine mapping of node heights to calendar years.

    Leaves (height 0) map to the collection year, the root to the root
    year, internal nodes linearly in between. Topology and the height
    order are untouched. A zero root height (all inputs identical) cannot
    be calibrated.
    """
    height = tree.root_height
    if height <= 0.0:
        raise DegenerateTreeError("tree has zero root height; nothing to calibrate")
    span = calibration.root_year - calibration.collection_year

    def dated(node: TreeNode) -> TreeNode:
        date = calibration.collection_year + span * (node.height / height)
        return replace(node, date=date, children=tuple(dated(c) for c in node.children))

    return PhyloTree(root=dated(tree.root), labels=tree.labels)


def cophenetic_matrix(tree: PhyloTree) -> DistanceMatrix:
    """Tree-induced leaf distances: twice the height of the lowest
    common ancestor. Labels are sorted lexicographically."""
    labels = tuple(sorted(tree.root.leaf_names()))
    index = {name: i for i, name in enumerate(labels)}
    n = len(labels)
    rows = [[0.0] * n for _ in range(n)]

    def visit(node: TreeNode) -> list[str]:
        if node.is_leaf:
            return [node.name or ""]
        groups = [visit(child) for child in node.children]
        for gi in range(len(groups)):
            for gj in range(gi + 1, len(groups)):
                for na in groups[gi]:
                    for nb in groups[gj]:
                        i, j = index[na], index[nb]
                        rows[i][j] = rows[j][i] = 2.0 * node.height
        merged: list[str] = []
        for g in groups:
            merged.extend(g)
        return merged

    visit(tree.root)
    return matrix_from_rows(labels, rows)


_NEWICK_SPECIALS = set("():;,[]'\t\n ")


def _quote_label(label: str) -> str:
    if label and not (_NEWICK_SPECIALS & set(label)):
        return label
    return "'" + label.replace("'", "''") + "'"


def emit_newick(tree: PhyloTree) -> str:
    """Standard Newick serialization with branch lengths.

    Branch length is parent height minus child height; children are
    ordered lexicographically by the smallest leaf label in their
    subtree, so equal trees always serialize identically.
    """

    def render(node: TreeNode, parent_height: float | None) -> str:
        if node.is_leaf:
            body = _quote_label(node.name or "")
        else:
            parts = [
                render(child, node.height)
                for child in sorted(node.children, key=TreeNode.min_leaf_name)
            ]
            body = "(" + ",".join(parts) + ")"
        if parent_height is None:
            return body
        return f"{body}:{format_float(parent_height - node.height)}"

    return render(tree.root, None) + ";"


def parse_newick(text: str) -> PhyloTree:
    """Parse a Newick string produced by emit_newick.

    Heights are reconstructed bottom-up from branch lengths (leaves sit
    at height 0), so a parse/emit round trip preserves the cophenetic
    matrix up to float rounding.
    """
    s = text.strip()
    if not s.endswith(";"):
        raise ParseError("newick text must end with ';'")
    s = s[:-1]
    pos = 0

    def error(msg: str) -> ParseError:
        return ParseError(f"newick:{pos}: {msg}")

    def parse_label() -> str:
        nonlocal pos
        if pos < len(s) and s[pos] == "'":
            pos += 1
            out = []
            while pos < len(s):
                if s[pos] == "'":
                    if pos + 1 < len(s) and s[pos + 1] == "'":
                        out.append("'")
                        pos += 2
                        continue
                    pos += 1
                    return "".join(out)
                out.append(s[pos])
                pos += 1
            raise error("unterminated quoted label")
        start = pos
        while pos < len(s) and s[pos] not in _NEWICK_SPECIALS:
            pos += 1
        return s[start:pos]

    def parse_length() -> float | None:
        nonlocal pos
        if pos < len(s) and s[pos] == ":":
            pos += 1
            start = pos
            while pos < len(s) and (s[pos] in "+-.eE" or s[pos].isdigit()):
                pos += 1
            try:
                return float(s[start:pos])
            except ValueError:
                raise error(f"bad branch length {s[start:pos]!r}") from None
        return None

    def parse_node() -> tuple[TreeNode, float | None]:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            children: list[tuple[TreeNode, float | None]] = [parse_node()]
            while pos < len(s) and s[pos] == ",":
                pos += 1
                children.append(parse_node())
            if pos >= len(s) or s[pos] != ")":
                raise error("expected ')'")
            pos += 1
            parse_label()  # internal labels are accepted and ignored
            length = parse_length()
            height = 0.0
            for child, branch in children:
                if branch is None:
                    raise error("internal child without branch length")
                height = max(height, child.height + branch)
            node = TreeNode(
                height=height,
                children=tuple(
                    sorted((c for c, _ in children), key=TreeNode.min_leaf_name)
                ),
            )
            return node, length
        label = parse_label()
        if not label:
            raise error("expected a leaf label")
        return TreeNode(height=0.0, name=label), parse_length()

    root, _ = parse_node()
    if pos != len(s):
        raise error("trailing characters after tree")
    return PhyloTree(root=root, labels=tuple(sorted(root.leaf_names())))


def tree_to_dict(tree: PhyloTree) -> dict:
    """Nested plain-dict form of a tree (for JSON dumps)."""

    def convert(node: TreeNode) -> dict:
        out: dict = {"height": node.height}
        if node.date is not None:
            out["date"] = node.date
        if node.is_leaf:
            out["name"] = node.name
        else:
            out["children"] = [
                convert(child)
                for child in sorted(node.children, key=TreeNode.min_leaf_name)
            ]
        return out

    return convert(tree.root)


def tree_to_json(
    tree: PhyloTree,
    *,
    scale: float | None = None,
    calibration: Calibration | None = None,
) -> str:
    """JSON dump {labels, topology, nodes, ...} with method metadata.

    The separation-time rule is recorded explicitly because its
    functional form is a modeling assumption, not something recoverable
    from the output.
    """
    payload: dict = {
        "labels": sorted(tree.root.leaf_names()),
        "topology": emit_newick(tree),
        "nodes": tree_to_dict(tree),
    }
    if scale is not None:
        payload["time_rule"] = {"form": "T = -scale * ln(1 - D)", "scale": scale}
    if calibration is not None:
        payload["calibration"] = {
            "collection_year": calibration.collection_year,
            "root_year": calibration.root_year,
        }
    return json.dumps(payload, indent=2) + "\n"
