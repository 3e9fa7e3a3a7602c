"""Command-line front end.

Every command that writes files also writes a run manifest next to them
recording the command, parameters, tool version and sha256 checksums of
all inputs and outputs. The pipeline has no randomness and no
timestamps inside data outputs, so reruns are byte-identical; the
manifest's own timestamp is the only field that may differ between two
otherwise identical runs.

Exit codes: 0 success, 1 invalid input or usage, 2 I/O failure,
3 internal contract violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, NoReturn

from ._version import __version__
from .analysis import (
    average_distances,
    dominance_check,
    homeland_candidates,
    reference_comparison,
    write_averages_csv,
    write_averages_json,
    write_refcomp_csv,
    write_refcomp_json,
)
from .distance import (
    build_matrix,
    read_matrix_file,
    write_matrix_appendix,
    write_matrix_csv,
    write_matrix_json,
)
from .errors import ContractError, ValidationError
from .fixtures import load_reference_matrix, load_registry, registry_by_label
from .phylogeny import (
    Calibration,
    calibrate,
    emit_newick,
    to_separation_times,
    tree_to_json,
    upgma,
)
from .wordlists import DEFAULT_MEANINGS, WordList, parse_wordlist, validate_corpus


class _Parser(argparse.ArgumentParser):
    """Argument errors are invalid usage, exit 1 (argparse defaults to 2,
    which this tool reserves for I/O failures)."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_text(path: Path, text: str) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_manifest(
    command: str,
    parameters: dict,
    inputs: Iterable[Path],
    outputs: Iterable[Path],
    manifest_path: Path,
) -> None:
    payload = {
        "command": command,
        "tool": f"lexphylo {__version__}",
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "parameters": parameters,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "outputs": {str(p): _sha256(p) for p in outputs},
    }
    _write_text(manifest_path, json.dumps(payload, indent=2) + "\n")


def _say(args: argparse.Namespace, message: str) -> None:
    if not args.quiet:
        print(message)


def _load_dir_lists(dir_path: Path, meanings: int) -> tuple[list[WordList], list[Path]]:
    if not dir_path.is_dir():
        raise NotADirectoryError(f"not a directory: {dir_path}")
    paths = sorted(p for p in dir_path.iterdir() if p.suffix.lower() == ".tsv")
    return [parse_wordlist(p, meanings=meanings) for p in paths], paths


def cmd_distances(args: argparse.Namespace) -> int:
    lists, paths = _load_dir_lists(Path(args.lists_dir), args.meanings)
    matrix = build_matrix(lists)
    out = Path(args.output)
    text = write_matrix_json(matrix) if args.format == "json" else write_matrix_csv(matrix)
    _write_text(out, text)
    manifest = out.with_name(out.name + ".manifest.json")
    _write_manifest(
        "distances",
        {"meanings": args.meanings, "format": args.format},
        paths,
        [out],
        manifest,
    )
    _say(args, f"wrote {out} ({matrix.size}x{matrix.size}) and {manifest}")
    return 0


def cmd_tree(args: argparse.Namespace) -> int:
    matrix_path = Path(args.matrix)
    matrix = read_matrix_file(matrix_path)
    times = to_separation_times(matrix, args.scale)
    tree = upgma(times)
    cal = Calibration(collection_year=args.collection_year, root_year=args.root_year)
    dated = calibrate(tree, cal)
    prefix = Path(args.output)
    nwk = prefix.with_name(prefix.name + ".nwk")
    tree_json = prefix.with_name(prefix.name + ".json")
    _write_text(nwk, emit_newick(dated) + "\n")
    _write_text(tree_json, tree_to_json(dated, scale=args.scale, calibration=cal))
    manifest = prefix.with_name(prefix.name + ".manifest.json")
    _write_manifest(
        "tree",
        {
            "root_year": args.root_year,
            "collection_year": args.collection_year,
            "scale": args.scale,
        },
        [matrix_path],
        [nwk, tree_json],
        manifest,
    )
    _say(args, f"wrote {nwk}, {tree_json} and {manifest}")
    return 0


def cmd_averages(args: argparse.Namespace) -> int:
    matrix_path = Path(args.matrix)
    matrix = read_matrix_file(matrix_path)
    report = average_distances(matrix)
    known = registry_by_label()
    towns = {
        label: known[label].town for label in matrix.labels if label in known
    }
    out = Path(args.output)
    if args.format == "json":
        text = write_averages_json(report, towns)
    else:
        text = write_averages_csv(report, towns)
    _write_text(out, text)
    manifest = out.with_name(out.name + ".manifest.json")
    _write_manifest(
        "averages", {"format": args.format}, [matrix_path], [out], manifest
    )
    if set(matrix.labels) == set(known):
        top = homeland_candidates(report, load_registry(), 3)
        names = ", ".join(f"{c.language_id} ({c.town})" for c in top)
        _say(args, f"smallest mean distances: {names}")
    _say(args, f"wrote {out} and {manifest}")
    return 0


def cmd_compare_ref(args: argparse.Namespace) -> int:
    lists, paths = _load_dir_lists(Path(args.lists_dir), args.meanings)
    if not lists:
        raise ValidationError(f"no .tsv word lists in {args.lists_dir}")
    ref1_path, ref2_path = Path(args.ref1), Path(args.ref2)
    ref1 = parse_wordlist(ref1_path, meanings=args.meanings)
    ref2 = parse_wordlist(ref2_path, meanings=args.meanings)
    comparison = reference_comparison(lists, ref1, ref2)
    out = Path(args.output)
    if args.format == "json":
        text = write_refcomp_json(comparison)
    else:
        text = write_refcomp_csv(comparison)
    _write_text(out, text)
    manifest = out.with_name(out.name + ".manifest.json")
    _write_manifest(
        "compare-ref",
        {"meanings": args.meanings, "format": args.format},
        [*paths, ref1_path, ref2_path],
        [out],
        manifest,
    )
    dom = dominance_check(comparison)
    _say(
        args,
        f"dominance ({comparison.ref2_id} uniformly closer than {comparison.ref1_id}): "
        f"{'yes' if dom.holds else 'no'} (margin {dom.margin:.6f})",
    )
    _say(args, f"wrote {out} and {manifest}")
    return 0


def cmd_fixture(args: argparse.Namespace) -> int:
    matrix = load_reference_matrix()
    if args.format == "csv":
        text = write_matrix_csv(matrix)
    elif args.format == "json":
        text = write_matrix_json(matrix)
    else:
        display = {e.label: e.display for e in load_registry()}
        text = write_matrix_appendix(matrix, display)
    out = Path(args.output)
    _write_text(out, text)
    manifest = out.with_name(out.name + ".manifest.json")
    _write_manifest("fixture", {"format": args.format}, [], [out], manifest)
    _say(args, f"wrote {out} and {manifest}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    lists, _ = _load_dir_lists(Path(args.lists_dir), args.meanings)
    report = validate_corpus(lists)
    if not args.quiet:
        print(report.format_text(), end="")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="lexphylo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lexphylo {__version__}")
    common = _Parser(add_help=False)
    common.add_argument(
        "--meanings",
        type=int,
        default=DEFAULT_MEANINGS,
        help=f"meaning slots per word list (default {DEFAULT_MEANINGS})",
    )
    common.add_argument(
        "--quiet", action="store_true", help="suppress progress messages"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "distances",
        parents=[common],
        help="pairwise language distance matrix from a directory of word lists",
    )
    p.add_argument("lists_dir", help="directory of .tsv word lists")
    p.add_argument("-o", "--output", required=True, help="matrix file to write")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser(
        "tree",
        parents=[common],
        help="dated UPGMA tree from a distance matrix",
    )
    p.add_argument("matrix", help="distance matrix file (.csv or .json)")
    p.add_argument(
        "-o", "--output", required=True,
        help="output prefix; writes PREFIX.nwk and PREFIX.json",
    )
    p.add_argument("--root-year", type=int, default=650, help="root date (default 650)")
    p.add_argument(
        "--collection-year", type=int, default=2010, help="leaf date (default 2010)"
    )
    p.add_argument(
        "--scale", type=float, default=1000.0,
        help="time-rule constant; dated output does not depend on it (default 1000)",
    )
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser(
        "averages",
        parents=[common],
        help="per-language mean distance and rank from a matrix",
    )
    p.add_argument("matrix", help="distance matrix file (.csv or .json)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_averages)

    p = sub.add_parser(
        "compare-ref",
        parents=[common],
        help="distance of every list to two reference languages, with ratios",
    )
    p.add_argument("lists_dir", help="directory of .tsv word lists")
    p.add_argument("ref1", help="first reference word list (.tsv)")
    p.add_argument("ref2", help="second reference word list (.tsv)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_compare_ref)

    p = sub.add_parser(
        "fixture",
        parents=[common],
        help="export the bundled 23-dialect reference matrix",
    )
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=["appendix", "csv", "json"], default="appendix")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser(
        "validate",
        parents=[common],
        help="check a directory of word lists and print a coverage report",
    )
    p.add_argument("lists_dir", help="directory of .tsv word lists")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"lexphylo: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"lexphylo: i/o error: {exc}", file=sys.stderr)
        return 2
    except ContractError as exc:
        print(f"lexphylo: contract violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
