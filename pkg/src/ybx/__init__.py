"""Exact 3D R / 3D L operators, matrix-product Yang-Baxter solutions and combinatorial R."""
from .errors import (
    DegenerateParameter,
    FixedPointViolation,
    LimitUndefined,
    NonPolynomialResult,
    PoleAtPoint,
    PreconditionError,
    SignatureMismatch,
    YbxError,
)
from .exactalg import BiPoly, LaurentPoly, Monomial, SpectralSum, ZERO, Zero
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "DegenerateParameter",
    "FixedPointViolation",
    "LaurentPoly",
    "LimitUndefined",
    "Monomial",
    "NonPolynomialResult",
    "PoleAtPoint",
    "PreconditionError",
    "Report",
    "SignatureMismatch",
    "SpectralSum",
    "YbxError",
    "ZERO",
    "Zero",
]
