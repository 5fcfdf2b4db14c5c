"""Exception types shared across the package."""


class OmegawError(Exception):
    """Base class for all package errors."""


class DomainError(OmegawError, ValueError):
    """Argument lies outside the mathematical domain of the operation."""


class ConvergenceError(OmegawError, ArithmeticError):
    """An iteration failed to reach the requested accuracy."""


class NoConvergenceError(ConvergenceError):
    """A root refinement started from a valid bracket but did not settle."""


class NoSolutionError(OmegawError, ValueError):
    """The problem is well posed but has no solution of the requested kind."""


class DegenerateError(OmegawError, ValueError):
    """A parameter sits exactly on a degenerate configuration."""


class PoleCollisionError(OmegawError, ValueError):
    """A candidate root coincides with a pole of the rational side."""


class TruncationWarning(UserWarning):
    """Truncated-series results drifted measurably from the exact ones."""


class SplitMismatchWarning(UserWarning):
    """A fixed-point family solution fails the two-factor split it should satisfy."""
