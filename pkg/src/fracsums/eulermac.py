"""Euler-Maclaurin evaluation of sums of polynomials.

For a polynomial P the expansion terminates, so

    sum_{k=1}^x P(k) = int_0^x P + (P(x) - P(0)) / 2
                       + sum_m B_2m / (2m)! (P^(2m-1)(x) - P^(2m-1)(0))

is exact for every complex x.
"""

from __future__ import annotations

import math

from .errors import NonPolynomial
from .expr import CatalogExpr, is_polynomial, polynomial_coeffs
from .specfun import bernoulli

__all__ = ["MAX_EM_DEGREE", "euler_maclaurin_sum", "polyval", "polyder"]

MAX_EM_DEGREE = 16


def polyval(coeffs, x: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def polyder(coeffs) -> list:
    return [k * c for k, c in enumerate(coeffs)][1:]


def euler_maclaurin_sum(p: CatalogExpr, x) -> complex:
    if not is_polynomial(p):
        raise NonPolynomial("Euler-Maclaurin evaluation needs a polynomial")
    coeffs = list(polynomial_coeffs(p))
    deg = len(coeffs) - 1
    if deg > MAX_EM_DEGREE:
        raise NonPolynomial(f"degree {deg} exceeds {MAX_EM_DEGREE}")
    x = complex(x)
    if not coeffs:
        return 0j
    integral = polyval([0j] + [c / (j + 1) for j, c in enumerate(coeffs)], x)
    total = integral + 0.5 * (polyval(coeffs, x) - coeffs[0])
    d = polyder(coeffs)  # P'
    m = 1
    while d:
        w = float(bernoulli(2 * m)) / math.factorial(2 * m)
        total += w * (polyval(d, x) - d[0])
        d = polyder(polyder(d))
        m += 1
    return total
