"""Exact arithmetic: rationals, polynomials, and the field tower."""
from fractions import Fraction

from .bipoly import BiPoly, bipoly_divide, bipoly_gcd, resultant, squarefree_factors
from .fields import (
    DEFAULT_BUDGET,
    QQ,
    Budget,
    ExtElem,
    ExtensionField,
    FieldMismatch,
    FunctionField,
    NeedsExtension,
    RatFunc,
    is_rational,
    to_rational,
)
from .unipoly import (
    ZERO_DEGREE,
    PolyRing,
    UniPoly,
    squarefree_decomposition,
    squarefree_part,
    subresultant_prs,
    uni_gcd,
    uni_xgcd,
)
from .unipoly import resultant as uni_resultant

Rational = Fraction

__all__ = [
    "BiPoly", "Budget", "DEFAULT_BUDGET", "ExtElem", "ExtensionField", "FieldMismatch",
    "Fraction", "FunctionField", "NeedsExtension", "PolyRing", "QQ", "RatFunc", "Rational",
    "UniPoly", "ZERO_DEGREE", "bipoly_divide", "bipoly_gcd", "is_rational", "resultant",
    "squarefree_decomposition", "squarefree_factors", "squarefree_part", "subresultant_prs",
    "to_rational", "uni_gcd", "uni_resultant", "uni_xgcd",
]
