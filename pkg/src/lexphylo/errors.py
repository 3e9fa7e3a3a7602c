"""Exception hierarchy shared across the package.

Two top-level families matter for callers: ``ValidationError`` covers bad
input data (malformed files, empty forms, saturated distances) and maps to
CLI exit code 1; ``ContractError`` covers violated API preconditions
(non-symmetric matrices, mismatched label sets) and maps to exit code 3.
Plain I/O failures are left to the builtin ``OSError`` (exit code 2).
"""


class LexphyloError(Exception):
    """Base class for all package errors."""


class ValidationError(LexphyloError):
    """Input data violates a documented invariant."""


class ParseError(ValidationError):
    """A word-list or matrix file is structurally malformed."""


class EncodingError(ParseError):
    """Input bytes are not valid UTF-8."""


class EmptyFormError(ValidationError):
    """A word form is empty after normalization."""


class NoOverlapError(ValidationError):
    """Two word lists share no filled meaning slot."""


class SaturationError(ValidationError):
    """A lexical distance of 1.0 has no finite separation time."""


class DegenerateTreeError(ValidationError):
    """A tree with zero root height cannot be calibrated."""


class ContractError(LexphyloError):
    """An API precondition was violated by the caller."""
