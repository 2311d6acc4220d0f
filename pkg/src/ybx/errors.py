"""Exception types raised by the ybx package."""


class YbxError(Exception):
    """Base class for all package errors."""


class PoleAtPoint(YbxError):
    """A denominator vanishes at the requested evaluation point."""


class LimitUndefined(YbxError):
    """The scaled q -> 0 limit does not exist or is not a unit monomial in z."""


class NonPolynomialResult(YbxError):
    """An exact division that was expected to be polynomial left a remainder."""


class FixedPointViolation(YbxError):
    """The piecewise-linear border recursion did not close on itself."""


class SignatureMismatch(YbxError):
    """Two crystal elements carry different signatures."""


class DegenerateParameter(YbxError):
    """A parameter makes q-integers ill defined (q in {0, 1, -1})."""


class PreconditionError(YbxError):
    """Input violates a documented precondition (bad level, bad index range)."""
