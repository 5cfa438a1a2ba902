"""Function catalog: finite linear combinations of translated basis functions.

A :class:`CatalogExpr` is always held in canonical form:

* ``Monomial(0)`` and ``Exponential(0)`` become ``Constant``; ``ExpTimesX(0)``
  becomes ``Monomial(1)``.
* Translations of the polynomial and exponential families are folded into
  coefficients (binomial expansion, ``e^{z(x+s)} = e^{zs} e^{zx}``), so those
  terms always carry shift 0.  ``InverseMonomial`` and ``Logarithm`` keep
  their shifts.
* Terms with equal ``(basis, shift)`` are merged, exact zeros dropped, and the
  result sorted, so equal canonical forms compare equal.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import NoPrimitiveInCatalog

__all__ = [
    "Monomial",
    "InverseMonomial",
    "Exponential",
    "ExpTimesX",
    "Logarithm",
    "Constant",
    "BasisFunction",
    "CatalogTerm",
    "CatalogExpr",
    "SummabilityReport",
    "term",
    "constant",
    "monomial",
    "inverse_monomial",
    "exponential",
    "exp_times_x",
    "logarithm",
    "power_of",
    "reciprocal_pair",
    "cos_exp",
    "sin_exp",
    "polynomial",
    "evaluate",
    "differentiate",
    "antiderivative",
    "translate",
    "check_summable",
    "render",
    "is_polynomial",
    "polynomial_coeffs",
]

TWO_PI = 2.0 * math.pi
_PERIOD_TOL = 1e-12


def clean(z) -> complex:
    """Complex with signed zeros replaced by +0.0."""
    z = complex(z)
    return complex(z.real + 0.0, z.imag + 0.0)


@dataclass(frozen=True)
class Monomial:
    a: int

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("Monomial exponent must be non-negative")


@dataclass(frozen=True)
class InverseMonomial:
    a: int

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("InverseMonomial exponent must be positive")


@dataclass(frozen=True)
class Exponential:
    z: complex


@dataclass(frozen=True)
class ExpTimesX:
    z: complex


@dataclass(frozen=True)
class Logarithm:
    pass


@dataclass(frozen=True)
class Constant:
    pass


BasisFunction = Union[Monomial, InverseMonomial, Exponential, ExpTimesX, Logarithm, Constant]

_KIND_ORDER = {Constant: 0, Monomial: 1, InverseMonomial: 2, Exponential: 3, ExpTimesX: 4, Logarithm: 5}


def _normalize_basis(b):
    if isinstance(b, Monomial) and b.a == 0:
        return Constant()
    if isinstance(b, Exponential):
        z = clean(b.z)
        return Constant() if z == 0 else Exponential(z)
    if isinstance(b, ExpTimesX):
        z = clean(b.z)
        return Monomial(1) if z == 0 else ExpTimesX(z)
    return b


def _sort_key(t: "CatalogTerm"):
    b = t.basis
    if isinstance(b, (Monomial, InverseMonomial)):
        p = (float(b.a), 0.0)
    elif isinstance(b, (Exponential, ExpTimesX)):
        p = (b.z.real, b.z.imag)
    else:
        p = (0.0, 0.0)
    return (_KIND_ORDER[type(b)], p, t.shift.real, t.shift.imag)


@dataclass(frozen=True)
class CatalogTerm:
    """``x -> coeff * basis(x + shift)``."""

    coeff: complex
    shift: complex
    basis: BasisFunction

    def __post_init__(self):
        object.__setattr__(self, "coeff", clean(self.coeff))
        object.__setattr__(self, "shift", clean(self.shift))


def _fold(t: CatalogTerm) -> list[CatalogTerm]:
    """Normalize one term and fold its shift where the family allows it."""
    b = _normalize_basis(t.basis)
    c, s = t.coeff, t.shift
    if isinstance(b, Constant):
        return [CatalogTerm(c, 0, b)]
    if s == 0 or isinstance(b, (InverseMonomial, Logarithm)):
        return [CatalogTerm(c, s, b)]
    if isinstance(b, Monomial):
        return [
            CatalogTerm(c * math.comb(b.a, j) * s ** (b.a - j), 0,
                        Constant() if j == 0 else Monomial(j))
            for j in range(b.a + 1)
        ]
    w = c * cmath.exp(b.z * s)
    if isinstance(b, Exponential):
        return [CatalogTerm(w, 0, b)]
    # e^{z(x+s)} (x+s) = e^{zs} (e^{zx} x + s e^{zx})
    return [CatalogTerm(w, 0, b), CatalogTerm(w * s, 0, Exponential(b.z))]


@dataclass(frozen=True)
class CatalogExpr:
    """Finite linear combination of catalog terms, canonical on construction."""

    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        merged: dict = {}
        for t in self.terms:
            if not isinstance(t, CatalogTerm):
                raise TypeError(f"expected CatalogTerm, got {type(t).__name__}")
            for u in _fold(t):
                if u.coeff == 0:
                    continue
                key = (u.basis, u.shift)
                merged[key] = merged.get(key, 0j) + u.coeff
        out = [CatalogTerm(c, s, b) for (b, s), c in merged.items() if c != 0]
        out.sort(key=_sort_key)
        object.__setattr__(self, "terms", tuple(out))

    @classmethod
    def of(cls, *terms: CatalogTerm) -> "CatalogExpr":
        return cls(tuple(terms))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, CatalogExpr):
            return NotImplemented
        return CatalogExpr(self.terms + other.terms)

    def __sub__(self, other):
        if not isinstance(other, CatalogExpr):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, k):
        if isinstance(k, (int, float, complex)):
            return self.scale(k)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, k) -> "CatalogExpr":
        k = complex(k)
        return CatalogExpr(tuple(CatalogTerm(t.coeff * k, t.shift, t.basis) for t in self.terms))

    def __call__(self, x) -> complex:
        return evaluate(self, x)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class SummabilityReport:
    summable: bool
    offending: tuple = ()
    reasons: tuple = ()


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def term(basis, coeff=1, shift=0) -> CatalogExpr:
    return CatalogExpr.of(CatalogTerm(coeff, shift, basis))


def constant(c) -> CatalogExpr:
    return term(Constant(), c)


def monomial(a: int, coeff=1, shift=0) -> CatalogExpr:
    return term(Monomial(a), coeff, shift)


def inverse_monomial(a: int, coeff=1, shift=0) -> CatalogExpr:
    return term(InverseMonomial(a), coeff, shift)


def exponential(z, coeff=1) -> CatalogExpr:
    return term(Exponential(complex(z)), coeff)


def exp_times_x(z, coeff=1) -> CatalogExpr:
    return term(ExpTimesX(complex(z)), coeff)


def logarithm(coeff=1, shift=0) -> CatalogExpr:
    return term(Logarithm(), coeff, shift)


def power_of(u, coeff=1) -> CatalogExpr:
    """``coeff * u^x`` stored as ``e^{zx}`` with z the principal log of u."""
    u = clean(u)
    if u == 0:
        raise ValueError("base must be non-zero")
    return exponential(cmath.log(u), coeff)


def reciprocal_pair(coeff=1, shift=0) -> CatalogExpr:
    """``coeff / ((x+s)(x+s+1))`` as the telescoping difference of two
    inverse monomials."""
    s = complex(shift)
    return inverse_monomial(1, coeff, s) - inverse_monomial(1, coeff, s + 1)


def cos_exp(z, coeff=1, times_x=False) -> CatalogExpr:
    """``coeff * cos(z x)`` (times x if requested) via exponentials."""
    ctor = exp_times_x if times_x else exponential
    iz = 1j * complex(z)
    return ctor(iz, 0.5 * coeff) + ctor(-iz, 0.5 * coeff)


def sin_exp(z, coeff=1, times_x=False) -> CatalogExpr:
    ctor = exp_times_x if times_x else exponential
    iz = 1j * complex(z)
    k = complex(coeff) / 2j
    return ctor(iz, k) - ctor(-iz, k)


def polynomial(coeffs: Iterable) -> CatalogExpr:
    """Polynomial from ascending coefficients c_0, c_1, ..."""
    return CatalogExpr(tuple(
        CatalogTerm(c, 0, Constant() if j == 0 else Monomial(j))
        for j, c in enumerate(coeffs)
    ))


def is_polynomial(e: CatalogExpr) -> bool:
    return all(isinstance(t.basis, (Constant, Monomial)) for t in e)


def polynomial_coeffs(e: CatalogExpr) -> list[complex]:
    """Ascending coefficients of a polynomial expression."""
    deg = max((t.basis.a for t in e if isinstance(t.basis, Monomial)), default=0)
    out = [0j] * (deg + 1)
    for t in e:
        j = 0 if isinstance(t.basis, Constant) else t.basis.a
        out[j] += t.coeff
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def evaluate_term(t: CatalogTerm, x) -> complex:
    b = t.basis
    u = complex(x) + t.shift
    if isinstance(b, Constant):
        return t.coeff
    if isinstance(b, Monomial):
        return t.coeff * u ** b.a
    if isinstance(b, InverseMonomial):
        # extension by zero at the singular point
        return 0j if u == 0 else t.coeff / u ** b.a
    if isinstance(b, Exponential):
        return t.coeff * cmath.exp(b.z * u)
    if isinstance(b, ExpTimesX):
        return t.coeff * cmath.exp(b.z * u) * u
    if isinstance(b, Logarithm):
        return 0j if u == 0 else t.coeff * cmath.log(u)
    raise TypeError(b)


def evaluate(e: CatalogExpr, x) -> complex:
    """Pointwise value, singular points contributing zero."""
    return sum((evaluate_term(t, x) for t in e), 0j)


def _diff_term(t: CatalogTerm) -> list[CatalogTerm]:
    b, c, s = t.basis, t.coeff, t.shift
    if isinstance(b, Constant):
        return []
    if isinstance(b, Monomial):
        return [CatalogTerm(c * b.a, s, Monomial(b.a - 1))]
    if isinstance(b, InverseMonomial):
        return [CatalogTerm(-c * b.a, s, InverseMonomial(b.a + 1))]
    if isinstance(b, Exponential):
        return [CatalogTerm(c * b.z, s, b)]
    if isinstance(b, ExpTimesX):
        return [CatalogTerm(c * b.z, s, b), CatalogTerm(c, s, Exponential(b.z))]
    if isinstance(b, Logarithm):
        return [CatalogTerm(c, s, InverseMonomial(1))]
    raise TypeError(b)


def differentiate(e: CatalogExpr) -> CatalogExpr:
    return CatalogExpr(tuple(u for t in e for u in _diff_term(t)))


def _prim_term(t: CatalogTerm) -> list[CatalogTerm]:
    b, c, s = t.basis, t.coeff, t.shift
    if isinstance(b, Constant):
        return [CatalogTerm(c, 0, Monomial(1))]
    if isinstance(b, Monomial):
        return [CatalogTerm(c / (b.a + 1), s, Monomial(b.a + 1))]
    if isinstance(b, InverseMonomial):
        if b.a == 1:
            return [CatalogTerm(c, s, Logarithm())]
        return [CatalogTerm(-c / (b.a - 1), s, InverseMonomial(b.a - 1))]
    if isinstance(b, Exponential):
        return [CatalogTerm(c / b.z, s, b)]
    if isinstance(b, ExpTimesX):
        return [CatalogTerm(c / b.z, s, b), CatalogTerm(-c / (b.z * b.z), s, Exponential(b.z))]
    raise NoPrimitiveInCatalog("no catalog primitive: x ln x - x is not a catalog function")


def antiderivative(e: CatalogExpr) -> CatalogExpr:
    """Term-wise primitive with zero constant of integration."""
    return CatalogExpr(tuple(u for t in e for u in _prim_term(t)))


def translate(e: CatalogExpr, s) -> CatalogExpr:
    """``x -> e(x + s)``."""
    s = complex(s)
    return CatalogExpr(tuple(CatalogTerm(t.coeff, t.shift + s, t.basis) for t in e))


def _period_index(z: complex):
    """Non-zero integer m with z = 2 pi i m, else None."""
    if abs(z.real) > _PERIOD_TOL * max(1.0, abs(z)):
        return None
    q = z.imag / TWO_PI
    m = round(q)
    if m != 0 and abs(q - m) <= _PERIOD_TOL * max(1.0, abs(m)):
        return m
    return None


def check_summable(e: CatalogExpr) -> SummabilityReport:
    """Flag exponential terms e^{2 pi i m x}, m != 0.

    Such a term satisfies f(x + 1/(2m)) = -f(x) with f(1) = 1, so no fractional
    sum obeying continued summation, translation, linearity and consistency
    exists for it.
    """
    bad, why = [], []
    for t in e:
        if isinstance(t.basis, (Exponential, ExpTimesX)):
            m = _period_index(t.basis.z)
            if m is not None:
                bad.append(t)
                kind = "odd" if m % 2 else "even"
                why.append(f"exponent 2*pi*i*{m} ({kind}): antiperiodic with step 1/{2 * abs(m)}")
    return SummabilityReport(not bad, tuple(bad), tuple(why))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _lit(c: complex) -> str:
    c = clean(c)
    if c.imag == 0:
        return f"({c.real!r})"
    if c.real == 0:
        return f"({c.imag!r}i)"
    sign = "-" if c.imag < 0 else "+"
    return f"({c.real!r}{sign}{abs(c.imag)!r}i)"


def _arg(shift: complex) -> str:
    return "k" if shift == 0 else f"(k+{_lit(shift)})"


def _render_term(t: CatalogTerm) -> str:
    b, c = t.basis, _lit(t.coeff)
    if isinstance(b, Constant):
        return c
    if isinstance(b, Monomial):
        return f"{c}*k" if b.a == 1 else f"{c}*k^{b.a}"
    if isinstance(b, InverseMonomial):
        base = _arg(t.shift)
        return f"{c}/{base}" if b.a == 1 else f"{c}/{base}^{b.a}"
    if isinstance(b, Exponential):
        return f"{c}*exp({_lit(b.z)}*k)"
    if isinstance(b, ExpTimesX):
        return f"{c}*exp({_lit(b.z)}*k)*k"
    inner = "k" if t.shift == 0 else f"k+{_lit(t.shift)}"
    return f"{c}*ln({inner})"


def render(e: CatalogExpr) -> str:
    """Text in the expression grammar that parses back to ``e``."""
    if not e.terms:
        return "0"
    return " + ".join(_render_term(t) for t in e)
