"""Fractional finite sums over the catalog.

Three independent engines:

``frac_sum``
    closed forms per basis family, reduced to sums starting at 1 and with
    translations handled by ``sum_{k=1}^t g(k+s) = G(t+s) - G(s)``.
``frac_sum_series``
    the fundamental formula ``sum_{nu>=1} (f(nu) - f(nu+x))`` for decaying
    functions, with an Euler-Maclaurin estimate of the tail.
``frac_sum_taylor``
    the Taylor expansion ``sum_k ess(f^(k-1)) x^k / k!``.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    MaxTermsExceeded, NonDecaying, NonSummable, PoleAtBound, PoleError,
    UnsupportedForTaylor,
)
from .expr import (
    CatalogExpr, Constant, Exponential, ExpTimesX, InverseMonomial, Logarithm,
    Monomial, antiderivative, check_summable, differentiate, evaluate,
)
from .specfun import EULER_GAMMA, bernoulli, digamma, ln_gamma, polygamma, zeta_int

__all__ = [
    "SumResult",
    "frac_sum",
    "partial_sum",
    "frac_sum_series",
    "frac_sum_taylor",
    "pole_distance",
    "faulhaber_coeffs",
    "cexpm1",
]

log = logging.getLogger(__name__)

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class SumResult:
    value: complex
    method: str  # "closed_form" | "series" | "taylor"
    err_estimate: float = 0.0
    terms_used: int = 0
    converged: bool = True

    def __complex__(self):
        return self.value


def cexpm1(z: complex) -> complex:
    """e^z - 1 without cancellation for small |z|."""
    z = complex(z)
    if abs(z) < 1e-5:
        return z * (1 + z * (0.5 + z / 6))
    if z.imag == 0:
        return complex(math.expm1(z.real))
    return cmath.exp(z) - 1


@lru_cache(maxsize=None)
def faulhaber_coeffs(a: int) -> tuple[Fraction, ...]:
    """Ascending coefficients of t -> sum_{k=1}^t k^a.

    t^a + sum_{j=0}^a C(a,j) B^-_{a-j} t^(j+1)/(j+1), with B^-_1 = -1/2.
    """
    if a == 0:
        return (Fraction(0), Fraction(1))
    c = [Fraction(0)] * (a + 2)
    c[a] += 1
    for j in range(a + 1):
        c[j + 1] += math.comb(a, j) * bernoulli(a - j, "minus") / (j + 1)
    return tuple(c)


@lru_cache(maxsize=None)
def _faulhaber_float(a: int) -> tuple[float, ...]:
    return tuple(float(q) for q in faulhaber_coeffs(a))


def _horner(coeffs, t: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _is_pole(u: complex) -> bool:
    # poles of psi^(n)(u + 1) and lnGamma(u + 1): u in {-1, -2, ...}
    if u.imag != 0 or u.real > -0.5:
        return False
    return u.real == round(u.real)


def _base_sum(b, t: complex) -> complex:
    """sum_{k=1}^t b(k) for an unshifted basis function."""
    if t == 0:
        return 0j
    if isinstance(b, Constant):
        return t
    if isinstance(b, Monomial):
        return _horner(_faulhaber_float(b.a), t)
    if isinstance(b, Exponential):
        return cmath.exp(b.z) * cexpm1(b.z * t) / cexpm1(b.z)
    if isinstance(b, ExpTimesX):
        d = cexpm1(b.z)
        return cmath.exp(b.z) / d * (t * cmath.exp(b.z * t) - cexpm1(b.z * t) / d)
    if _is_pole(t):
        raise PoleAtBound(f"bound {t} hits a pole of the closed form")
    try:
        if isinstance(b, InverseMonomial):
            if b.a == 1:
                return EULER_GAMMA + digamma(t + 1)
            sign = 1.0 if b.a % 2 else -1.0
            return zeta_int(b.a) + sign / math.factorial(b.a - 1) * polygamma(b.a - 1, t + 1)
        if isinstance(b, Logarithm):
            return ln_gamma(t + 1)
    except PoleError as exc:
        raise PoleAtBound(f"bound {t} hits a pole of the closed form") from exc
    raise TypeError(b)


def _require_summable(e: CatalogExpr) -> None:
    rep = check_summable(e)
    if not rep.summable:
        raise NonSummable("; ".join(rep.reasons), rep.offending)


def partial_sum(e: CatalogExpr, t) -> complex:
    """sum_{k=1}^t e(k) by closed forms."""
    t = complex(t)
    if t == 0:
        return 0j
    total = 0j
    for term in e:
        s = term.shift
        if s == 0:
            total += term.coeff * _base_sum(term.basis, t)
        else:
            total += term.coeff * (_base_sum(term.basis, t + s) - _base_sum(term.basis, s))
    return total


def frac_sum(e: CatalogExpr, x, y) -> SumResult:
    """sum_{k=x}^{y} e(k) = S(y) - S(x-1), S the sum from 1."""
    _require_summable(e)
    x, y = complex(x), complex(y)
    value = partial_sum(e, y) - partial_sum(e, x - 1)
    return SumResult(value, "closed_form")


def pole_distance(e: CatalogExpr, t) -> float:
    """Distance from t to the nearest pole of t -> sum_{k=1}^t e(k)."""
    t = complex(t)
    best = math.inf
    for term in e:
        if isinstance(term.basis, (InverseMonomial, Logarithm)):
            u = t + term.shift
            m = min(-1, round(u.real))
            best = min(best, abs(u - m))
    return best


# ---------------------------------------------------------------------------
# series engine
# ---------------------------------------------------------------------------

def _decays(term) -> bool:
    b = term.basis
    if isinstance(b, InverseMonomial):
        return True
    if isinstance(b, (Exponential, ExpTimesX)):
        return b.z.real < 0
    return False


def frac_sum_series(e: CatalogExpr, x, tol: float = 1e-8, max_terms: int = 10**7,
                    em_order: int = 2, strict: bool = False) -> SumResult:
    """sum_{k=1}^x e(k) via sum_{nu=1}^N (f(nu) - f(nu+x)) plus a tail.

    The tail sum_{nu>N} g(nu), g(nu) = f(nu) - f(nu+x), is estimated by
    Euler-Maclaurin: int_N^inf g - g(N)/2 - sum_j B_2j/(2j)! g^(2j-1)(N), with
    the first omitted correction as the error estimate.  N doubles until the
    estimate drops below ``tol``.
    """
    _require_summable(e)
    bad = [t for t in e if not _decays(t)]
    if bad:
        raise NonDecaying(f"{len(bad)} term(s) do not decay at +infinity")
    x = complex(x)
    for t in e:
        if isinstance(t.basis, InverseMonomial) and _is_pole(x + t.shift):
            raise PoleAtBound(f"x + shift = {x + t.shift} is a negative integer")

    prim = antiderivative(e)
    odd = []
    d = differentiate(e)
    for _ in range(em_order + 1):
        odd.append(d)
        d = differentiate(differentiate(d))
    weights = [float(bernoulli(2 * j)) / math.factorial(2 * j) for j in range(1, em_order + 2)]

    def g(expr, nu):
        return evaluate(expr, nu) - evaluate(expr, nu + x)

    reach = abs(x) + max((abs(t.shift) for t in e), default=0.0)
    n_target = max(16, int(math.ceil(4 * reach)))
    n_target = min(n_target, max_terms)
    partial = 0j
    abs_mass = 0.0
    n = 0
    prev_err = math.inf
    while True:
        while n < n_target:
            n += 1
            v = g(e, n)
            partial += v
            abs_mass += abs(v)
        tail = -(evaluate(prim, n) - evaluate(prim, n + x)) - 0.5 * g(e, n)
        for w, dj in zip(weights[:-1], odd[:-1]):
            tail -= w * g(dj, n)
        # twice the first omitted correction, plus accumulated rounding
        err = 2 * abs(weights[-1] * g(odd[-1], n)) + 4 * _EPS * (abs_mass + abs(tail))
        value = partial + tail
        if err < tol:
            return SumResult(value, "series", err, n, True)
        if n >= max_terms or err >= prev_err:
            result = SumResult(value, "series", err, n, False)
            log.warning("series stopped at N=%d with error estimate %.3g > tol %.3g", n, err, tol)
            if strict:
                raise MaxTermsExceeded(f"tolerance {tol} not reached within {n} terms", result)
            return result
        prev_err = err
        n_target = min(2 * n, max_terms)


# ---------------------------------------------------------------------------
# Taylor engine
# ---------------------------------------------------------------------------

_TAYLOR_FAMILIES = (Constant, Monomial, Exponential, ExpTimesX)


def frac_sum_taylor(e: CatalogExpr, x, n_terms: int) -> SumResult:
    """Partial sum of sum_{k>=1} ess(e^(k-1)) x^k / k! with n_terms terms."""
    from .essence import essence_closed_form

    bad = [t for t in e if not isinstance(t.basis, _TAYLOR_FAMILIES)]
    if bad:
        raise UnsupportedForTaylor(
            "Taylor engine covers polynomial and exponential families only")
    _require_summable(e)
    x = complex(x)
    value = 0j
    coef = 1 + 0j  # x^k / k!
    d = e
    used = 0
    for k in range(1, n_terms + 1):
        if not d:
            break
        coef *= x / k
        value += essence_closed_form(d) * coef
        d = differentiate(d)
        used = k
    err = 0.0
    if d:
        err = abs(essence_closed_form(d) * coef * x / (used + 1))
    return SumResult(value, "taylor", err, used)
