"""Fractional finite sums, essences and #-regularized series over a catalog
of elementary functions."""

from .errors import (
    FracSumError, LexError, MaxTermsExceeded, NoPrimitiveInCatalog, NonDecaying,
    NonPolynomial, NonSummable, NotInCatalog, ParseError, PoleAtBound, PoleError,
    UnsupportedForTaylor, UnsupportedFunction,
)
from .essence import EssenceResult, essence, essence_derivative_identity_check, essence_numeric, shifted_essence
from .eulermac import euler_maclaurin_sum
from .expr import CatalogExpr, CatalogTerm, antiderivative, check_summable, differentiate, evaluate, render, translate
from .fracsum import SumResult, frac_sum, frac_sum_series, frac_sum_taylor
from .parser import parse, parse_expr
from .regularize import HashSum, hash_sum
from .specfun import bernoulli, digamma, ln_gamma, polygamma, zeta_int

__version__ = "0.1.0"

__all__ = [
    "CatalogExpr", "CatalogTerm", "EssenceResult", "HashSum", "SumResult",
    "antiderivative", "bernoulli", "check_summable", "differentiate", "digamma",
    "essence", "essence_derivative_identity_check", "essence_numeric",
    "euler_maclaurin_sum", "evaluate", "frac_sum", "frac_sum_series",
    "frac_sum_taylor", "hash_sum", "ln_gamma", "parse", "parse_expr",
    "polygamma", "render", "shifted_essence", "translate", "zeta_int",
    "FracSumError", "LexError", "MaxTermsExceeded", "NoPrimitiveInCatalog",
    "NonDecaying", "NonPolynomial", "NonSummable", "NotInCatalog", "ParseError",
    "PoleAtBound", "PoleError", "UnsupportedForTaylor", "UnsupportedFunction",
]
