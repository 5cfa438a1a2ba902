"""Seeded property suites over random catalog expressions.

Each suite returns a ``SuiteReport`` listing, per property, the number of
cases and the worst residual seen.  The CLI ``verify`` command and the test
suite both drive these.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .essence import (
    basis_essence, essence_closed_form, essence_derivative_identity_check,
    essence_numeric,
)
from .eulermac import euler_maclaurin_sum
from .expr import (
    CatalogExpr, InverseMonomial, Logarithm, constant, cos_exp, differentiate,
    evaluate, exp_times_x, exponential, inverse_monomial, logarithm, monomial,
    polynomial, reciprocal_pair, sin_exp, translate,
)
from .fracsum import frac_sum, frac_sum_series, frac_sum_taylor
from .regularize import hash_sum
from .specfun import EULER_GAMMA, bernoulli, ln_gamma, zeta_int

__all__ = [
    "FAMILIES",
    "PropertyResult",
    "SuiteReport",
    "Sampler",
    "SUITES",
    "run_suite",
]

FAMILIES = ("constant", "monomial", "inverse", "exponential", "exp_times_x", "logarithm")


@dataclass
class PropertyResult:
    name: str
    tol: float
    cases: int = 0
    worst: float = 0.0

    def record(self, residual: float) -> None:
        self.cases += 1
        if not residual <= self.worst:  # NaN counts as a failure
            self.worst = residual

    @property
    def passed(self) -> bool:
        return self.cases > 0 and self.worst <= self.tol


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, tol: float) -> PropertyResult:
        r = PropertyResult(name, tol)
        self.results.append(r)
        return r

    def lines(self) -> list[str]:
        out = [f"suite {self.suite} (seed {self.seed})"]
        for r in self.results:
            flag = "PASS" if r.passed else "FAIL"
            out.append(f"  {flag}  {r.name:<32} cases={r.cases:<6d} worst={r.worst:.3e}  tol={r.tol:.0e}")
        out.append("pass" if self.passed else "FAIL")
        return out


def _dist_nonpositive(u: complex) -> float:
    return abs(u - min(0, round(u.real)))


class Sampler:
    """Random catalog expressions and points from a seeded generator."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def uniform(self, a: float, b: float) -> float:
        return self.rng.uniform(a, b)

    def coeff(self) -> complex:
        return complex(self.uniform(-2, 2), self.uniform(-2, 2))

    def point(self, re: float = 3.0, im: float = 2.0) -> complex:
        return complex(self.uniform(-re, re), self.uniform(-im, im))

    def shift(self) -> complex:
        kind = self.rng.randrange(3)
        if kind == 0:
            return 0j
        if kind == 1:
            # real, kept away from integers
            n = self.rng.randint(-1, 1)
            return complex(n + self.uniform(0.15, 0.85))
        return complex(self.uniform(-1.5, 1.5), self.rng.choice((-1, 1)) * self.uniform(0.2, 1.0))

    def exponent(self, max_re: float = 1.0) -> complex:
        while True:
            z = complex(self.uniform(-max_re, max_re), self.uniform(-3, 3))
            if abs(cmath.exp(z) - 1) >= 0.1:
                return z

    def family_expr(self, family: str) -> CatalogExpr:
        c = self.coeff()
        if family == "constant":
            return constant(c)
        if family == "monomial":
            return monomial(self.rng.randint(1, 6), c)
        if family == "inverse":
            return inverse_monomial(self.rng.randint(1, 3), c, self.shift())
        if family == "exponential":
            return exponential(self.exponent(), c)
        if family == "exp_times_x":
            return exp_times_x(self.exponent(), c)
        if family == "logarithm":
            return logarithm(c, self.shift())
        raise ValueError(family)

    def expr(self, families=FAMILIES, max_terms: int = 3) -> CatalogExpr:
        out = CatalogExpr()
        for _ in range(self.rng.randint(1, max_terms)):
            out = out + self.family_expr(self.rng.choice(families))
        return out

    def polynomial(self, max_degree: int = 10) -> CatalogExpr:
        deg = self.rng.randint(0, max_degree)
        return polynomial([complex(self.uniform(-1, 1), self.uniform(-1, 1)) for _ in range(deg + 1)])


def clear_of_poles(e: CatalogExpr, *bounds: complex, margin: float = 0.1) -> bool:
    """True when every reduced bound keeps the closed forms of e regular."""
    for t in e:
        if isinstance(t.basis, (InverseMonomial, Logarithm)):
            if _dist_nonpositive(t.shift + 1) < margin:
                return False
            for b in bounds:
                if _dist_nonpositive(complex(b) + t.shift) < margin:
                    return False
    return True


def _scaled(diff: complex, *mags: complex) -> float:
    return abs(diff) / max(1.0, *(abs(m) for m in mags))


def _draw(s: Sampler, make: Callable, accept: Callable, tries: int = 1000):
    for _ in range(tries):
        case = make()
        if accept(*case):
            return case
    raise RuntimeError("sampler could not find a regular case")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_axioms(seed: int = 0, count: int = 300) -> SuiteReport:
    s = Sampler(seed)
    rep = SuiteReport("axioms", seed)
    fs = lambda f, a, b: frac_sum(f, a, b).value  # noqa: E731

    p = rep.add("A4 single term", 1e-10)
    for _ in range(count):
        f, x = _draw(s, lambda: (s.expr(), s.point()),
                     lambda f, x: clear_of_poles(f, x, x - 1))
        p.record(abs(fs(f, x, x) - evaluate(f, x)))

    p = rep.add("A1 continued summation", 1e-9)
    for _ in range(count):
        f, x, y, z = _draw(s, lambda: (s.expr(), s.point(), s.point(), s.point()),
                           lambda f, x, y, z: clear_of_poles(f, x - 1, y, z))
        p.record(abs(fs(f, x, y) + fs(f, y + 1, z) - fs(f, x, z)))

    p = rep.add("A2 translation", 1e-9)
    for _ in range(count):
        f, x, y, d = _draw(s, lambda: (s.expr(), s.point(), s.point(), s.point(1.5, 1.0)),
                           lambda f, x, y, d: clear_of_poles(f, x - 1 + d, y + d)
                           and clear_of_poles(translate(f, d), x - 1, y, 0))
        p.record(abs(fs(f, x + d, y + d) - fs(translate(f, d), x, y)))

    p = rep.add("A3 linearity", 1e-9)
    for _ in range(count):
        f, g, x, y = _draw(s, lambda: (s.expr(), s.expr(), s.point(), s.point()),
                           lambda f, g, x, y: clear_of_poles(f + g, x - 1, y))
        lam, mu = s.coeff(), s.coeff()
        p.record(abs(fs(f.scale(lam) + g.scale(mu), x, y) - lam * fs(f, x, y) - mu * fs(g, x, y)))

    p = rep.add("empty sum", 1e-9)
    for _ in range(count):
        f, x = _draw(s, lambda: (s.expr(), s.point()), lambda f, x: clear_of_poles(f, x - 1))
        p.record(abs(fs(f, x, x - 1)))

    p = rep.add("interpolation of classical sums", 1e-9)
    for _ in range(count):
        f = s.expr()
        n = s.rng.randint(1, 200)
        loop = sum((evaluate(f, k) for k in range(1, n + 1)), 0j)
        p.record(_scaled(fs(f, 1, n) - loop, loop))

    p = rep.add("opposite sum", 1e-9)
    for _ in range(count):
        f, x = _draw(s, lambda: (s.expr(), s.point()),
                     lambda f, x: clear_of_poles(f, -x) and clear_of_poles(translate(f, -x), x, 0))
        p.record(abs(fs(f, 1, -x) + fs(translate(f, -x), 1, x)))
    return rep


def table1_rows() -> list[tuple[str, CatalogExpr, complex]]:
    """(label, expression, expected essence) for the selected-function table."""
    z1 = 1.5 + 0.5j
    rows = [("constant z", constant(z1), z1)]
    for a in range(-6, 7):
        if a == 0:
            continue
        e = monomial(a) if a > 0 else inverse_monomial(-a)
        rows.append((f"x^{a}", e, -a * zeta_int(1 - a)))
    for z in (math.pi * 1j, 0.7 - 1.3j):
        w = cmath.exp(z)
        rows.append((f"exp({z}x)", exponential(z), z * w / (w - 1)))
        rows.append((f"exp({z}x)x", exp_times_x(z), w / (w - 1) * (1 - z / (w - 1))))
    rows.append(("ln x", logarithm(), -EULER_GAMMA))
    rows.append(("1/(x(x+1))", reciprocal_pair(), 1.0))
    return rows


def suite_table1(seed: int = 0, count: int = 0) -> SuiteReport:
    rep = SuiteReport("table1", seed)
    closed = rep.add("closed form", 1e-10)
    numeric = rep.add("numeric limit", 1e-6)
    for _, e, want in table1_rows():
        closed.record(abs(essence_closed_form(e) - want))
        numeric.record(abs(essence_numeric(e).value - want))
    return rep


def suite_euler_maclaurin(seed: int = 0, count: int = 200, points: int = 100) -> SuiteReport:
    s = Sampler(seed)
    rep = SuiteReport("euler-maclaurin", seed)
    p = rep.add("EM vs fractional sum", 1e-9)
    q = rep.add("EM vs classical loop", 1e-9)
    for _ in range(count):
        poly = s.polynomial(10)
        for _ in range(points):
            x = s.point(3.0, 3.0)
            v = frac_sum(poly, 1, x).value
            p.record(_scaled(euler_maclaurin_sum(poly, x) - v, v))
    for _ in range(max(1, count // 10)):
        poly = s.polynomial(10)
        loop = 0j
        for n in range(1, 51):
            loop += evaluate(poly, n)
            q.record(_scaled(euler_maclaurin_sum(poly, n) - loop, loop))
    return rep


def suite_essence(seed: int = 0, count: int = 100) -> SuiteReport:
    s = Sampler(seed)
    rep = SuiteReport("essence", seed)
    gens = {
        "polynomial": lambda: s.polynomial(6),
        "exponential": lambda: exponential(s.exponent(), s.coeff()),
        "exp_times_x": lambda: exp_times_x(s.exponent(), s.coeff()),
        "inverse monomial": lambda: inverse_monomial(s.rng.randint(1, 3), s.coeff(), s.shift()),
    }
    for name, gen in gens.items():
        p = rep.add(f"derivative identity: {name}", 1e-6)
        for _ in range(count):
            f, x = _draw(s, lambda: (gen(), s.point(3.0, 2.0)),
                         lambda f, x: clear_of_poles(f, x, margin=0.3))
            p.record(essence_derivative_identity_check(f, x))

    p = rep.add("linearity", 1e-10)
    for _ in range(count):
        f, g = s.expr(), s.expr()
        lam, mu = s.coeff(), s.coeff()
        lhs = essence_closed_form(f.scale(lam) + g.scale(mu))
        rhs = lam * essence_closed_form(f) + mu * essence_closed_form(g)
        p.record(_scaled(lhs - rhs, rhs))

    p = rep.add("d/dy ess(f(.+y)) at 0 = ess(f')", 1e-6)
    for _ in range(count):
        f = s.rng.choice((lambda: s.polynomial(6), lambda: exponential(s.exponent(), s.coeff()),
                          lambda: exp_times_x(s.exponent(), s.coeff())))()
        h = 1e-3
        d = (essence_closed_form(translate(f, h)) - essence_closed_form(translate(f, -h))) / (2 * h)
        d2 = (essence_closed_form(translate(f, h / 2)) - essence_closed_form(translate(f, -h / 2))) / h
        want = essence_closed_form(differentiate(f))
        p.record(_scaled(d2 + (d2 - d) / 3 - want, want))

    p = rep.add("numeric vs closed form", 1e-6)
    for _ in range(count):
        f = s.expr()
        num = essence_numeric(f)
        p.record(max(0.0, abs(num.value - essence_closed_form(f)) - num.err_estimate))
    return rep


def suite_oracles(seed: int = 0, count: int = 100) -> SuiteReport:
    s = Sampler(seed)
    rep = SuiteReport("oracles", seed)

    def decaying():
        out = CatalogExpr()
        for _ in range(s.rng.randint(1, 3)):
            k = s.rng.randrange(3)
            c = s.coeff()
            if k == 0:
                out = out + inverse_monomial(s.rng.randint(1, 3), c, s.shift())
            else:
                z = complex(s.uniform(-1.5, -0.3), s.uniform(-3, 3))
                out = out + (exponential(z, c) if k == 1 else exp_times_x(z, c))
        return out

    p = rep.add("closed form vs series (in err)", 1.0)
    for _ in range(count):
        f, x = _draw(s, lambda: (decaying(), s.point()),
                     lambda f, x: clear_of_poles(f, x, margin=0.1))
        r = frac_sum_series(f, x, tol=1e-8)
        # the closed form itself carries ~1e-12 rounding near poles
        bound = r.err_estimate + 1e-11
        p.record(abs(r.value - frac_sum(f, 1, x).value) / bound)

    p = rep.add("closed form vs Taylor", 1e-8)
    for _ in range(count):
        fam = s.rng.choice(("poly", "exponential", "exp_times_x"))
        z = complex(s.uniform(-1, 1), s.uniform(-1.5, 1.5))
        f = (s.polynomial(6) if fam == "poly"
             else exponential(z, s.coeff()) if fam == "exponential" else exp_times_x(z, s.coeff()))
        r = 2 * math.sqrt(s.uniform(0, 1))
        x = cmath.rect(r, s.uniform(0, 2 * math.pi))
        t = frac_sum_taylor(f, x, 60)
        p.record(abs(t.value - frac_sum(f, 1, x).value))
    return rep


def suite_identities(seed: int = 0, count: int = 50) -> SuiteReport:
    s = Sampler(seed)
    rep = SuiteReport("identities", seed)

    p = rep.add("cos(2 pi k/x) k sums to x/2", 1e-8)
    for _ in range(count):
        while True:
            x = cmath.rect(s.uniform(0.5, 5.0), s.uniform(-0.3, 0.3) + s.rng.choice((0, math.pi)))
            if min(abs(x - 1 / m) for m in (1, 2, -1, -2)) >= 0.1:
                break
        f = cos_exp(2 * math.pi / x, times_x=True)
        p.record(abs(frac_sum(f, 1, x).value - x / 2))

    cs = rep.add("cos(pi k) k closed form", 1e-9)
    sn = rep.add("sin(pi k) k closed form", 1e-9)
    fc = cos_exp(math.pi, times_x=True)
    fsn = sin_exp(math.pi, times_x=True)
    for _ in range(2 * count):
        x = complex(s.uniform(-5, 5), s.uniform(-1, 1))
        c, sx = cmath.cos(math.pi * x), cmath.sin(math.pi * x)
        cs.record(abs(frac_sum(fc, 1, x).value - (0.5 * c * x + 0.25 * c - 0.25)))
        sn.record(abs(frac_sum(fsn, 1, x).value - (0.5 * sx * x + 0.25 * sx)))

    p = rep.add("lnGamma(x+1) power series", 1e-9)
    zetas = [zeta_int(k) for k in range(2, 41)]
    for _ in range(count):
        x = cmath.rect(0.5 * math.sqrt(s.uniform(0, 1)), s.uniform(0, 2 * math.pi))
        series = -EULER_GAMMA * x + sum(zk * (-x) ** k / k for k, zk in enumerate(zetas, start=2))
        p.record(abs(frac_sum(logarithm(), 1, x).value - series))
    return rep


def suite_regularize(seed: int = 0, count: int = 100) -> SuiteReport:
    s = Sampler(seed)
    rep = SuiteReport("regularize", seed)
    p = rep.add("known values", 1e-10)
    alt = exponential(math.pi * 1j, -1)
    for f, want in ((monomial(1), -1 / 12), (inverse_monomial(1), EULER_GAMMA),
                    (alt, 0.5), (exp_times_x(math.pi * 1j, -1), 0.25)):
        p.record(abs(hash_sum(f).value - want))

    p = rep.add("powers vs -B(a+1)/(a+1)", 1e-10)
    q = rep.add("powers vs zeta(-a)", 1e-10)
    for a in range(1, 9):
        v = hash_sum(monomial(a)).value
        p.record(abs(v + float(bernoulli(a + 1)) / (a + 1)))
        q.record(abs(v - zeta_int(-a)))

    p = rep.add("linearity", 1e-10)
    fams = ("constant", "monomial", "inverse", "exponential", "exp_times_x")
    for _ in range(count):
        f, g = s.expr(fams), s.expr(fams)
        lam, mu = s.coeff(), s.coeff()
        lhs = hash_sum(f.scale(lam) + g.scale(mu)).value
        rhs = lam * hash_sum(f).value + mu * hash_sum(g).value
        p.record(_scaled(lhs - rhs, rhs))
    return rep


def suite_specfun(seed: int = 0, count: int = 200) -> SuiteReport:
    """Internal consistency of the special functions (no external oracle)."""
    s = Sampler(seed)
    rep = SuiteReport("specfun", seed)
    p = rep.add("lnGamma recurrence", 1e-12)
    for _ in range(count):
        z = s.point(8.0, 8.0)
        if _dist_nonpositive(z) < 0.1:
            continue
        # compare exponentials so the branch of the log does not matter
        lhs = cmath.exp(ln_gamma(z + 1) - ln_gamma(z))
        p.record(_scaled(lhs - z, z))
    p = rep.add("essence of x^a vs Bernoulli", 1e-12)
    for a in range(13):
        p.record(abs(basis_essence(monomial(a).terms[0].basis if a else constant(1).terms[0].basis)
                     - float(bernoulli(a))))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "axioms": suite_axioms,
    "table1": suite_table1,
    "euler-maclaurin": suite_euler_maclaurin,
    "essence": suite_essence,
    "oracles": suite_oracles,
    "identities": suite_identities,
    "regularize": suite_regularize,
    "specfun": suite_specfun,
}


def run_suite(name: str, seed: int = 0, count: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    return fn(seed) if count is None else fn(seed, count)
