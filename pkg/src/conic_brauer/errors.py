"""Exception hierarchy.

Every error carries a short machine-readable ``reason`` used by the CLI in
JSON mode.
"""

from __future__ import annotations


class ConicBrauerError(Exception):
    reason = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.reason)
        self.details = details


class InvalidInput(ConicBrauerError, ValueError):
    reason = "invalid-input"


class ZeroInput(InvalidInput):
    reason = "zero-input"


class LengthMismatch(InvalidInput):
    reason = "length-mismatch"


class PointNotOnCurve(InvalidInput):
    reason = "point-not-on-curve"


class PointAtInfinity(InvalidInput):
    reason = "point-at-infinity"


class DegenerateForm(InvalidInput):
    reason = "degenerate-form"


class NegativeUnderRoot(InvalidInput):
    reason = "negative-under-root"


class PoleOrZeroAtPoint(ConicBrauerError):
    reason = "pole-or-zero-at-point"


class UnsupportedClosedPoint(ConicBrauerError):
    reason = "unsupported-closed-point"


class NotDivisibleBy2(ConicBrauerError):
    reason = "not-divisible-by-2"


class FactorBoundExceeded(ConicBrauerError, ArithmeticError):
    """Raised when an answer depends on a factorization beyond the trial bound."""

    reason = "factor-bound-exceeded"


class HypothesisFailed(ConicBrauerError):
    """A theorem hypothesis does not hold; ``which`` names the failed check."""

    reason = "hypothesis-failed"

    def __init__(self, which: str, message: str = "", **details):
        super().__init__(message or f"hypothesis failed: {which}", **details)
        self.which = which


class NotConnected(HypothesisFailed):
    reason = "not-connected"

    def __init__(self, message: str = "E(R) has two components"):
        super().__init__("E(R) connected", message)


class TwoTorsionInS(HypothesisFailed):
    reason = "two-torsion-in-S"

    def __init__(self, message: str = "S meets E[2]"):
        super().__init__("S disjoint from E[2]", message)


class SearchExhausted(ConicBrauerError):
    reason = "search-exhausted"
