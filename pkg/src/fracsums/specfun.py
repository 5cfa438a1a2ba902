"""Special-function kernel: Bernoulli numbers, zeta at integers, digamma,
polygamma and log-gamma for complex arguments.

Bernoulli numbers are generated once as exact ``Fraction`` values and
cached; everything else is double precision complex arithmetic.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import BoundError, PoleError

__all__ = [
    "EULER_GAMMA",
    "BERNOULLI_BOUND",
    "bernoulli",
    "bernoulli_table",
    "zeta_int",
    "digamma",
    "polygamma",
    "ln_gamma",
]

EULER_GAMMA = 0.57721566490153286060651209008240243
BERNOULLI_BOUND = 100

_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT_RE = 10.0
_ASYMPTOTIC_TERMS = 20
_POLE_TOL = 1e-14


@lru_cache(maxsize=None)
def bernoulli_table() -> tuple[Fraction, ...]:
    """B_0..B_N in the ``minus`` convention (B_1 = -1/2).

    Uses sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1, which holds exactly for
    this convention.
    """
    table = [Fraction(1)]
    for n in range(1, BERNOULLI_BOUND + 1):
        if n > 1 and n % 2 == 1:
            table.append(Fraction(0))
            continue
        s = sum(comb(n + 1, k) * table[k] for k in range(n))
        table.append(-s / (n + 1))
    return tuple(table)


def bernoulli(n: int, convention: str = "plus") -> Fraction:
    """Exact Bernoulli number B_n.

    ``convention="plus"`` gives B_1 = +1/2, ``"minus"`` gives B_1 = -1/2; all
    other indices agree.
    """
    if convention not in ("plus", "minus"):
        raise ValueError(f"unknown convention {convention!r}")
    if n < 0 or n > BERNOULLI_BOUND:
        raise BoundError(f"Bernoulli index {n} outside 0..{BERNOULLI_BOUND}")
    b = bernoulli_table()[n]
    if n == 1 and convention == "plus":
        return -b
    return b


@lru_cache(maxsize=None)
def _bernoulli_float(n: int) -> float:
    return float(bernoulli(n, "minus"))


# ---------------------------------------------------------------------------
# zeta at integers
# ---------------------------------------------------------------------------

def _eta(s: int, n: int = 40) -> float:
    # Dirichlet eta by the Cohen-Rodriguez Villegas-Zagier acceleration of
    # the alternating series sum_{k>=0} (-1)^k / (k+1)^s.
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    total = 0.0
    for k in range(n):
        c = b - c
        total += c / (k + 1.0) ** s
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return total / d


def zeta_int(n: int) -> complex:
    """Riemann zeta at an integer argument."""
    if n == 1:
        raise PoleError("zeta has a pole at 1")
    if n <= 0:
        a = 1 - n
        if a > BERNOULLI_BOUND:
            raise BoundError(f"zeta({n}) needs B_{a}, beyond table bound")
        return complex(float(-bernoulli(a, "plus") / a))
    if n >= 20:
        # a few terms of the defining series already reach double precision
        k_max = math.ceil(10.0 ** (17.0 / n))
        return complex(sum(k ** -float(n) for k in range(k_max, 0, -1)))
    if n % 2 == 0:
        # zeta(2m) = (-1)^(m+1) B_2m (2 pi)^2m / (2 (2m)!)
        val = abs(float(bernoulli(n))) * (2.0 * math.pi) ** n / (2.0 * math.factorial(n))
        return complex(val)
    return complex(_eta(n) / (1.0 - 2.0 ** (1 - n)))


# ---------------------------------------------------------------------------
# digamma / polygamma / log-gamma
# ---------------------------------------------------------------------------

def _check_pole(z: complex, name: str) -> None:
    if abs(z.imag) <= _POLE_TOL and z.real <= _POLE_TOL:
        r = round(z.real)
        if abs(z.real - r) <= _POLE_TOL * max(1.0, abs(r)):
            raise PoleError(f"{name} has a pole at {r}")


def digamma(z) -> complex:
    """psi(z) for complex z, principal branch of the log in the asymptotic
    series after an upward shift to Re z >= 10."""
    z = complex(z)
    _check_pole(z, "digamma")
    acc = 0j
    while z.real < _SHIFT_RE:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    tail = 0j
    p = inv2
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        tail += _bernoulli_float(2 * k) / (2 * k) * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - tail


@lru_cache(maxsize=None)
def _polygamma_coeffs(n: int) -> tuple[float, ...]:
    # B_2k (2k+n-1)! / (2k)!
    return tuple(
        float(bernoulli(2 * k) * Fraction(math.factorial(2 * k + n - 1), math.factorial(2 * k)))
        for k in range(1, _ASYMPTOTIC_TERMS + 1)
    )


def polygamma(n: int, z) -> complex:
    """psi^(n)(z), the n-th derivative of digamma; n = 0 is digamma itself."""
    if n == 0:
        return digamma(z)
    if n < 0:
        raise ValueError("polygamma order must be non-negative")
    z = complex(z)
    _check_pole(z, "polygamma")
    sign = -1.0 if n % 2 else 1.0
    fact_n = float(math.factorial(n))
    acc = 0j
    # higher orders need a larger argument before the series is usable
    threshold = _SHIFT_RE + n
    while z.real < threshold:
        acc += z ** -(n + 1)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    series = math.factorial(n - 1) * inv ** n + 0.5 * fact_n * inv ** (n + 1)
    p = inv ** (n + 2)
    for c in _polygamma_coeffs(n):
        series += c * p
        p *= inv2
    # psi^(n)(z) = psi^(n)(z+m) - (-1)^n n! sum 1/(z+j)^(n+1)
    return -sign * series - sign * fact_n * acc


def ln_gamma(z) -> complex:
    """log Gamma(z), continued analytically from the positive real axis with
    the cut on the negative real axis (values there are the limit from
    above)."""
    z = complex(z)
    _check_pole(z, "ln_gamma")
    acc = 0j
    while z.real < _SHIFT_RE:
        acc += cmath.log(z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    tail = 0j
    p = inv
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        tail += _bernoulli_float(2 * k) / (2 * k * (2 * k - 1)) * p
        p *= inv2
    return (z - 0.5) * cmath.log(z) - z + _LN_SQRT_2PI + tail - acc
