"""Lexicostatistics toolkit: normalized edit distances between Swadesh
word lists, UPGMA phylogenies with absolute-date calibration, and
dialect-geography analyses, plus a bundled 23-dialect Malagasy
reference matrix."""

from ._version import __version__
from .analysis import (
    AverageDistanceReport,
    DominanceResult,
    HomelandCandidate,
    RefComparison,
    RefRecord,
    average_distances,
    dominance_check,
    homeland_candidates,
    reference_comparison,
)
from .distance import (
    DistanceMatrix,
    LanguageDistance,
    build_matrix,
    language_distance,
    levenshtein,
    word_distance,
)
from .errors import (
    ContractError,
    DegenerateTreeError,
    EmptyFormError,
    EncodingError,
    LexphyloError,
    NoOverlapError,
    ParseError,
    SaturationError,
    ValidationError,
)
from .fixtures import (
    DialectEntry,
    RegionGroup,
    load_reference_matrix,
    load_registry,
)
from .phylogeny import (
    Calibration,
    PhyloTree,
    TreeNode,
    calibrate,
    cophenetic_matrix,
    emit_newick,
    parse_newick,
    to_separation_times,
    upgma,
)
from .wordlists import (
    WordList,
    normalize_form,
    parse_wordlist,
    serialize_wordlist,
    validate_corpus,
)

__all__ = [
    "__version__",
    "AverageDistanceReport",
    "Calibration",
    "ContractError",
    "DegenerateTreeError",
    "DialectEntry",
    "DistanceMatrix",
    "DominanceResult",
    "EmptyFormError",
    "EncodingError",
    "HomelandCandidate",
    "LanguageDistance",
    "LexphyloError",
    "NoOverlapError",
    "ParseError",
    "PhyloTree",
    "RefComparison",
    "RefRecord",
    "RegionGroup",
    "SaturationError",
    "TreeNode",
    "ValidationError",
    "WordList",
    "average_distances",
    "build_matrix",
    "calibrate",
    "cophenetic_matrix",
    "dominance_check",
    "emit_newick",
    "homeland_candidates",
    "language_distance",
    "levenshtein",
    "load_reference_matrix",
    "load_registry",
    "normalize_form",
    "parse_newick",
    "parse_wordlist",
    "reference_comparison",
    "serialize_wordlist",
    "to_separation_times",
    "upgma",
    "validate_corpus",
    "word_distance",
]
