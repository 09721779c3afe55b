"""Exception hierarchy shared by every cbstools module.

The CLI maps these onto exit codes:
    UsageError / ParseError  -> 2
    DomainError              -> 3
    VerificationError        -> 1
"""


class CbsError(Exception):
    """Base class for all cbstools errors."""


class UsageError(CbsError, ValueError):
    """Caller supplied inconsistent arguments (space mismatch, bad exponent, ...)."""


class ParseError(UsageError):
    """A problem file could not be read or validated."""


class DomainError(CbsError, ValueError):
    """Mathematically undefined request (zero vector, empty cone, ...)."""


class OracleError(CbsError, RuntimeError):
    """Sampling failed on degenerate input."""


class VerificationError(CbsError, AssertionError):
    """An invariant of the verification suite was violated."""
