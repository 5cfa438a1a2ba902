"""Essence of catalog functions.

``ess(f)`` is the derivative at 0 of ``x -> sum_{k=1}^x f(k)``.  It is linear
in f, known in closed form for every basis family, and moves under a
translation by ``ess(f(. + s)) = ess(f) + sum_{k=1}^s f'(k)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NonSummable
from .expr import (
    CatalogExpr, Constant, Exponential, ExpTimesX, InverseMonomial, Logarithm,
    Monomial, check_summable, differentiate, term,
)
from .fracsum import cexpm1, frac_sum, pole_distance
from .specfun import EULER_GAMMA, bernoulli, zeta_int

__all__ = [
    "EssenceResult",
    "basis_essence",
    "essence",
    "essence_closed_form",
    "essence_numeric",
    "shifted_essence",
    "essence_derivative_identity_check",
    "numeric_derivative",
]


@dataclass(frozen=True)
class EssenceResult:
    value: complex
    provenance: str  # "closed_form" | "numeric_limit"
    err_estimate: float = 0.0

    def __complex__(self):
        return self.value


def basis_essence(b) -> complex:
    """Essence of an unshifted basis function with coefficient 1."""
    if isinstance(b, Constant):
        return 1 + 0j
    if isinstance(b, Monomial):
        return complex(float(bernoulli(b.a, "plus")))
    if isinstance(b, InverseMonomial):
        return b.a * zeta_int(b.a + 1)
    if isinstance(b, Exponential):
        return b.z * cmath.exp(b.z) / cexpm1(b.z)
    if isinstance(b, ExpTimesX):
        d = cexpm1(b.z)
        return cmath.exp(b.z) / d * (1 - b.z / d)
    if isinstance(b, Logarithm):
        return complex(-EULER_GAMMA)
    raise TypeError(b)


def _require_summable(e: CatalogExpr) -> None:
    rep = check_summable(e)
    if not rep.summable:
        raise NonSummable("; ".join(rep.reasons), rep.offending)


def essence_closed_form(e: CatalogExpr) -> complex:
    _require_summable(e)
    total = 0j
    for t in e:
        v = basis_essence(t.basis)
        if t.shift != 0:
            unit = term(t.basis)
            v += frac_sum(differentiate(unit), 1, t.shift).value
        total += t.coeff * v
    return total


def essence(e: CatalogExpr) -> EssenceResult:
    """Closed-form essence of a summable catalog expression."""
    return EssenceResult(essence_closed_form(e), "closed_form")


def shifted_essence(e: CatalogExpr, s) -> complex:
    """ess(e(. + s)) from ess(e) and the sum of e' up to s."""
    return essence_closed_form(e) + frac_sum(differentiate(e), 1, s).value


def essence_numeric(e: CatalogExpr, h_min: float = 2.0 ** -10, depth: int = 4) -> EssenceResult:
    """(1/h) sum_{k=1}^h f(k) on h = 2^-3 .. h_min, Richardson extrapolated.

    The error estimate is the size of the last extrapolation correction.
    """
    _require_summable(e)
    if not 0 < h_min <= 2.0 ** -3:
        raise ValueError("h_min must lie in (0, 1/8]")
    j_max = max(3 + depth, math.ceil(math.log2(1.0 / h_min)))
    rows: list[list[complex]] = []
    for j in range(3, j_max + 1):
        h = 2.0 ** -j
        row = [frac_sum(e, 1, h).value / h]
        for m in range(1, min(depth, len(rows)) + 1):
            prev = rows[-1][m - 1]
            row.append(row[m - 1] + (row[m - 1] - prev) / (2.0 ** m - 1.0))
        rows.append(row)
    last = rows[-1]
    err = abs(last[-1] - last[-2])
    return EssenceResult(last[-1], "numeric_limit", err)


def numeric_derivative(f, x: complex, h: float = 0.05, ntab: int = 10) -> tuple[complex, float]:
    """Derivative along the real direction by central differences with
    Richardson extrapolation over shrinking steps (Ridders' scheme).

    Returns (value, error estimate).
    """
    con, con2, safe = 1.4, 1.96, 2.0
    a = [[0j] * ntab for _ in range(ntab)]
    hh = h
    a[0][0] = (f(x + hh) - f(x - hh)) / (2 * hh)
    best, err = a[0][0], math.inf
    for i in range(1, ntab):
        hh /= con
        a[0][i] = (f(x + hh) - f(x - hh)) / (2 * hh)
        fac = con2
        for j in range(1, i + 1):
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1)
            fac *= con2
            errt = max(abs(a[j][i] - a[j - 1][i]), abs(a[j][i] - a[j - 1][i - 1]))
            if errt <= err:
                err, best = errt, a[j][i]
        if abs(a[i][i] - a[i - 1][i - 1]) >= safe * err:
            break
    return best, err


def essence_derivative_identity_check(e: CatalogExpr, x) -> float:
    """Residual |d/dx sum_{k=1}^x f(k) - ess(f) - sum_{k=1}^x f'(k)|.

    The derivative is taken numerically, so the residual measures how well
    the computed sum is differentiable in the way the identity requires.
    """
    x = complex(x)
    h = 0.05 * min(1.0, pole_distance(e, x))
    deriv, _ = numeric_derivative(lambda t: frac_sum(e, 1, t).value, x, h)
    rhs = essence_closed_form(e) + frac_sum(differentiate(e), 1, x).value
    return abs(deriv - rhs)
