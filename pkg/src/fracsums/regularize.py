"""Regularized values of infinite sums.

The #-sum of f is ``-ess(F)`` for a primitive F of f.  For classically
convergent series it reproduces the ordinary value; for divergent ones it
assigns the usual regularized constants (``sum k = -1/12``, ``sum 1/k = gamma``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .essence import essence_closed_form
from .expr import (
    CatalogExpr, Constant, Exponential, ExpTimesX, InverseMonomial, Monomial,
    antiderivative,
)

__all__ = ["HashSum", "hash_sum", "classically_convergent"]


@dataclass(frozen=True)
class HashSum:
    value: complex
    classically_convergent: bool
    primitive: CatalogExpr

    def __complex__(self):
        return self.value


def classically_convergent(e: CatalogExpr) -> bool:
    """Heuristic: does sum_{k>=1} e(k) converge in the ordinary sense?

    Exponentials with Re z < 0 converge.  Otherwise the slowest inverse power
    must be at least 2, or exactly 1 with the 1/k coefficients cancelling (as
    in a telescoping pair).  Any surviving polynomial, logarithmic or
    non-decaying exponential term makes the series diverge.
    """
    harmonic = 0j
    for t in e:
        b = t.basis
        if isinstance(b, (Exponential, ExpTimesX)):
            if b.z.real >= 0:
                return False
        elif isinstance(b, InverseMonomial):
            if b.a == 1:
                harmonic += t.coeff
        elif isinstance(b, (Constant, Monomial)):
            return False
        else:
            return False
    return abs(harmonic) <= 1e-12 * max(1.0, sum(abs(t.coeff) for t in e))


def hash_sum(e: CatalogExpr) -> HashSum:
    """Regularized value ``-ess(F)`` with F the zero-constant primitive."""
    prim = antiderivative(e)
    return HashSum(-essence_closed_form(prim), classically_convergent(e), prim)
