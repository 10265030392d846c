"""Exception hierarchy shared by all holofol layers.

Every structured failure mode gets its own class so callers (and the CLI
exit-code mapper) can dispatch on type rather than on message text.
"""

from __future__ import annotations


class HolofolError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------- algebra


class InvalidInput(HolofolError):
    """A precondition on plain input data was violated."""


class NotDivisible(HolofolError):
    """Exact polynomial division left a nonzero remainder."""


class DivisionByZeroFunction(HolofolError):
    """A denominator became the zero function during substitution."""


# --------------------------------------------------------------- foliation


class ZeroForm(HolofolError):
    """The one-form is identically zero and cannot be reduced."""


class NotPComplete(HolofolError):
    """The contraction eta(X) is not a product of the fiber factors.

    Raised both for the degenerate case eta(X) = 0 (X tangent to the
    fibration) and for extraneous irreducible factors.
    """


class SingularLocus(HolofolError):
    """A covering-map transport would require dividing by the zero function."""


class NotDeckInvariant(HolofolError):
    """A (u,v) field is not invariant under the deck transformations."""


# ------------------------------------------------------------ normal forms


class InvalidParams(HolofolError):
    """Normal-form parameter invariants are violated."""


class ShapeMismatch(HolofolError):
    """A pulled-back field does not have the u^k (a(v) u, c v^N) shape."""


class GateFailure(HolofolError):
    """One of the arithmetic divisibility/membership gates failed.

    ``reason`` is one of: "n_does_not_divide_k", "n_does_not_divide_N_minus_1",
    "a_not_in_C_zn", "a_vanishes_at_0", "N_greater_than_1",
    "lambda1_not_rational", "sbar_not_in_C_zn".
    """

    def __init__(self, reason: str, message: str = ""):
        self.reason = reason
        super().__init__(message or reason)


class NotRiccati(HolofolError):
    """The field is not of the x-complete Riccati shape."""


class BaseOnInvariantLine(HolofolError):
    """Trajectory parametrization requested with base point on x = 0."""


class IrrationalLambda1(HolofolError):
    """The leading residue is not a real rational number."""


# ----------------------------------------------------------------- tracer


class NearPole(HolofolError):
    """Field evaluation requested too close to a pole."""


class StepUnderflow(HolofolError):
    """The adaptive step size collapsed below the hard floor."""


class UndefinedOnTrace(HolofolError):
    """The first integral is undefined (denominator ~ 0) at a trace sample."""


class PathThroughSingularity(HolofolError):
    """A traced path crosses the zero set of eta(X)."""


# ------------------------------------------------------------------ parser


class ExprSyntaxError(HolofolError):
    """Malformed expression text; carries a 1-based line:column position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at {line}:{column}")


class NonIntegerExponent(ExprSyntaxError):
    """Exponents must be integer literals."""


class UnknownVariable(ExprSyntaxError):
    """Identifier is not one of the allowed variables."""
