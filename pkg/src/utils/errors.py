"""
Exception hierarchy for SkewBetti.

ValidationError covers bad input and refused work, StructuralError an
internal invariant that did not hold, CheckFailure a cross-check or theorem
check that came out false. The command line maps each to its own exit code.
"""


class BettiError(Exception):
    """Root of all errors raised by this package."""


class ValidationError(BettiError, ValueError):
    """Input rejected before any computation started."""


class DiagramError(ValidationError):
    """Invalid (lambda, mu) data, unknown row/column label or broken staircase."""


class GraphError(ValidationError):
    """Invalid graph data or a graph outside an operation's hypotheses."""


class SizeLimitError(ValidationError):
    """A documented desk-scale limit would be exceeded."""


class StructuralError(BettiError, AssertionError):
    """An internal consistency assertion failed."""


class CheckFailure(BettiError):
    """Two routes disagreed or a structural theorem check failed."""
