from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from fracsums.errors import (
    MaxTermsExceeded, NonDecaying, NonSummable, PoleAtBound, UnsupportedForTaylor,
)
from fracsums.expr import (
    constant, evaluate, exp_times_x, exponential, inverse_monomial, logarithm,
    monomial, polynomial, reciprocal_pair, translate,
)
from fracsums.fracsum import (
    SumResult, faulhaber_coeffs, frac_sum, frac_sum_series, frac_sum_taylor,
    partial_sum, pole_distance,
)
from fracsums.parser import parse_expr
from fracsums.verify import Sampler, clear_of_poles

from oracles import mp_sum_inverse_power, mp_sum_log, mp_sum_power

# Frozen reference values: Hurwitz zeta / digamma / loggamma / geometric sums
# evaluated with mpmath at 40 digits.
FROZEN = [
    ("1/k", complex(1.0, 1.0), complex(1.1718659855240098, 0.57667404746858117)),
    ("1/k", complex(-2.5, 0.5), complex(1.3091083022560555, 2.6406595199775146)),
    ("1/k", complex(0.5, 0.0), complex(0.61370563888010938, 0.0)),
    ("1/k", complex(3.0, -2.0), complex(1.9725764110447412, -0.51696112879607638)),
    ("1/k^2", complex(1.0, 1.0), complex(1.1819339702254627, 0.29423354275931887)),
    ("1/k^2", complex(-0.5, 0.0), complex(-3.2898681336964529, 0.0)),
    ("1/k^2", complex(-3.5, 1.5), complex(1.9079780574899707, 0.1312109613166139)),
    ("1/k^3", complex(0.25, -0.75), complex(1.1235697152520322, -0.41374778246898303)),
    ("1/k^3", complex(-1.5, 0.1), complex(0.79625439916431945, 8.4901102120061301)),
    ("1/(k+0.5)", complex(2.0, 1.0), complex(1.118114422772369, 0.31931717564081297)),
    ("1/(k+0.5)", complex(-2.2, 0.0), complex(-2.1104427676072835, 0.0)),
    ("1/(k-0.5+i)^2", complex(1.5, -0.5), complex(-0.55147333900904683, -0.93202668539580928)),
    ("k^3", complex(0.5, 0.5), complex(-0.1875, 0.25)),
    ("k^3", complex(-2.25, 1.0), complex(-2.2412109375, -3.171875)),
    ("k^7", complex(1.2, -0.3), complex(-0.63516094874999984, -4.3975540499999989)),
    ("ln(k)", complex(0.5, 0.0), complex(-0.12078223763524522, 0.0)),
    ("ln(k)", complex(2.0, 3.0), complex(-0.81037707436196498, 3.2851902667141967)),
    ("ln(k)", complex(-0.5, -1.0), complex(-0.65279064420437292, 0.95500772434256911)),
    ("ln(k+2)", complex(-1.5, 0.5), complex(-0.92733352803029485, 0.034668961275397565)),
    ("exp((0.3-1.1i)*k)", complex(-1.7, 0.4), complex(-1.6860500383701232, -0.39385566690242583)),
    ("exp(2i*k)*k", complex(2.5, -1.0), complex(-6.8956959162079297, -11.814119264816161)),
    ("2^k", complex(0.5, 0.0), complex(0.8284271247461901, 0.0)),
]


@pytest.mark.parametrize("src,x,want", FROZEN)
def test_frozen_reference_values(src, x, want):
    got = frac_sum(parse_expr(src), 1, x).value
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


class TestExamples:
    def test_euler_half(self):
        assert frac_sum(inverse_monomial(1), 1, -0.5).value == pytest.approx(-2 * math.log(2), abs=1e-12)

    def test_empty_harmonic(self):
        assert frac_sum(inverse_monomial(1), 1, 0).value == 0

    def test_linear_at_pi(self):
        v = frac_sum(monomial(1), 1, math.pi).value
        assert v == pytest.approx(math.pi * (math.pi + 1) / 2, abs=1e-13)

    @pytest.mark.parametrize("x", [0.5, -1.3 + 0.7j, 2.25j, 4.0])
    def test_alternating_times_k(self, x):
        w = cmath.exp(math.pi * 1j * x)
        want = 0.5 * w * x + 0.25 * w - 0.25
        assert abs(frac_sum(exp_times_x(math.pi * 1j), 1, x).value - want) <= 1e-12

    @pytest.mark.parametrize("x", [2, 0.5, -0.5 + 1j, 3.3 - 2j])
    def test_telescoping(self, x):
        assert abs(frac_sum(reciprocal_pair(), 1, x).value - x / (x + 1)) <= 1e-12

    def test_result_type(self):
        r = frac_sum(monomial(2), 1, 3)
        assert isinstance(r, SumResult) and r.method == "closed_form"
        assert r.err_estimate == 0 and r.value == 14 and complex(r) == 14

    def test_general_lower_bound(self):
        assert frac_sum(monomial(3), 2, 4).value == pytest.approx(99)
        assert frac_sum(constant(2.5), 0.5, 3).value == pytest.approx(2.5 * 3.5)


class TestClosedFormsAgainstMpmath:
    xs = st.builds(complex, st.floats(-4, 4), st.floats(-3, 3))

    @given(st.integers(1, 5), xs)
    def test_inverse_powers(self, a, x):
        if pole_distance(inverse_monomial(a), x) < 0.05:
            return
        want = complex(mp_sum_inverse_power(a, x))
        assert abs(frac_sum(inverse_monomial(a), 1, x).value - want) <= 1e-11 * max(1.0, abs(want))

    @given(st.integers(1, 12), xs)
    def test_powers(self, a, x):
        want = complex(mp_sum_power(a, x))
        assert abs(frac_sum(monomial(a), 1, x).value - want) <= 1e-11 * max(1.0, abs(want))

    @given(xs, st.builds(complex, st.floats(-1.5, 1.5), st.floats(0.2, 1.0)))
    def test_shifted_log(self, x, s):
        f = logarithm(1, s)
        if not clear_of_poles(f, x, margin=0.05):
            return
        want = complex(mp_sum_log(x, s))
        assert abs(frac_sum(f, 1, x).value - want) <= 1e-11 * max(1.0, abs(want))


@pytest.mark.parametrize("a,coeffs", [
    (0, [0, 1]),
    (1, [0, Fraction(1, 2), Fraction(1, 2)]),
    (2, [0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]),
    (3, [0, 0, Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]),
])
def test_faulhaber_coefficients(a, coeffs):
    assert list(faulhaber_coeffs(a)) == coeffs


class TestErrors:
    @pytest.mark.parametrize("f,y", [
        (inverse_monomial(1), -1), (inverse_monomial(3), -4), (logarithm(), -2),
        (inverse_monomial(1, 1, 0.5), -1.5),
    ])
    def test_pole_at_upper_bound(self, f, y):
        with pytest.raises(PoleAtBound):
            frac_sum(f, 1, y)

    def test_pole_at_lower_bound(self):
        with pytest.raises(PoleAtBound):
            frac_sum(inverse_monomial(2), 0, 3)

    def test_non_summable(self):
        with pytest.raises(NonSummable) as info:
            frac_sum(exponential(2j * math.pi) + monomial(1), 1, 0.5)
        assert len(info.value.offending) == 1

    def test_integer_exponential_still_summable(self):
        # e^{2 pi i k} at integers is the constant 1, but as a function of a
        # complex variable it cannot be summed; a constant can
        assert frac_sum(constant(1), 1, 0.5).value == 0.5


class TestSeries:
    def test_euler_half(self):
        r = frac_sum_series(inverse_monomial(1), -0.5, tol=1e-8)
        assert r.method == "series" and r.converged
        assert abs(r.value + 2 * math.log(2)) <= 1e-8
        assert r.err_estimate < 1e-8

    def test_inverse_square_at_one(self):
        assert frac_sum_series(inverse_monomial(2), 1, tol=1e-10).value == pytest.approx(1, abs=1e-10)

    def test_telescoping_at_two(self):
        v = frac_sum_series(reciprocal_pair(), 2, tol=1e-10).value
        assert v == pytest.approx(2 / 3, abs=1e-10)

    @pytest.mark.parametrize("f", [monomial(1), constant(1), logarithm(), exponential(0.5), exp_times_x(1j)])
    def test_non_decaying(self, f):
        with pytest.raises(NonDecaying):
            frac_sum_series(f, 0.5)

    def test_pole(self):
        with pytest.raises(PoleAtBound):
            frac_sum_series(inverse_monomial(1), -2)

    def test_budget_exhausted(self):
        f = exponential(-0.001 + 1j)
        r = frac_sum_series(f, 0.5, tol=1e-14, max_terms=64)
        assert not r.converged and r.terms_used == 64
        with pytest.raises(MaxTermsExceeded) as info:
            frac_sum_series(f, 0.5, tol=1e-14, max_terms=64, strict=True)
        assert info.value.result.terms_used == 64

    @given(st.integers(0, 10**6))
    def test_agrees_with_closed_form_within_estimate(self, seed):
        s = Sampler(seed)
        f = inverse_monomial(s.rng.randint(1, 3), s.coeff(), s.shift()) + exp_times_x(
            complex(s.uniform(-1.5, -0.3), s.uniform(-3, 3)), s.coeff())
        x = s.point()
        if not clear_of_poles(f, x, margin=0.1):
            return
        r = frac_sum_series(f, x)
        assert r.converged
        assert abs(r.value - frac_sum(f, 1, x).value) <= r.err_estimate + 1e-11


class TestTaylor:
    def test_square_is_exact(self):
        r = frac_sum_taylor(monomial(2), 3, 3)
        assert r.value == pytest.approx(14) and r.err_estimate == 0 and r.method == "taylor"

    @pytest.mark.parametrize("x", [0.5, 1.5 - 1j, -2])
    def test_square_polynomial_identity(self, x):
        r = frac_sum_taylor(monomial(2), x, 3)
        assert r.value == pytest.approx(x / 6 + x * x / 2 + x ** 3 / 3)

    def test_linear_at_one(self):
        assert frac_sum_taylor(monomial(1), 1, 2).value == pytest.approx(1)

    @pytest.mark.parametrize("z", [math.pi * 1j, 0.4 - 1j, -1.2])
    def test_exponential(self, z):
        x = 1.3 + 0.4j
        want = cmath.exp(z) * (cmath.exp(z * x) - 1) / (cmath.exp(z) - 1)
        r = frac_sum_taylor(exponential(z), x, 60)
        assert abs(r.value - want) <= 1e-12
        assert r.err_estimate < 1e-12

    def test_truncation_estimate(self):
        r = frac_sum_taylor(exponential(1j), 1.5, 5)
        assert r.err_estimate > 0 and r.terms_used == 5

    @pytest.mark.parametrize("f", [inverse_monomial(1), logarithm(), monomial(2) + inverse_monomial(1, 1, 1)])
    def test_unsupported(self, f):
        with pytest.raises(UnsupportedForTaylor):
            frac_sum_taylor(f, 0.5, 10)


class TestProperties:
    @given(st.integers(0, 10**6))
    def test_single_term(self, seed):
        s = Sampler(seed)
        f, x = s.expr(), s.point()
        if not clear_of_poles(f, x, x - 1):
            return
        assert abs(frac_sum(f, x, x).value - evaluate(f, x)) <= 1e-10

    @given(st.integers(0, 10**6))
    def test_empty_sum(self, seed):
        s = Sampler(seed)
        f, x = s.expr(), s.point()
        if not clear_of_poles(f, x - 1):
            return
        assert frac_sum(f, x, x - 1).value == 0

    @given(st.integers(0, 10**6))
    def test_translation(self, seed):
        s = Sampler(seed)
        f, x, y, d = s.expr(), s.point(), s.point(), s.point(1.5, 1.0)
        if not (clear_of_poles(f, x - 1 + d, y + d) and clear_of_poles(translate(f, d), x - 1, y, 0)):
            return
        lhs = frac_sum(f, x + d, y + d).value
        assert abs(lhs - frac_sum(translate(f, d), x, y).value) <= 1e-9

    @given(st.integers(0, 10**6), st.integers(1, 60))
    def test_integer_bounds_match_loop(self, seed, n):
        f = Sampler(seed).expr()
        loop = sum((evaluate(f, k) for k in range(1, n + 1)), 0j)
        assert abs(frac_sum(f, 1, n).value - loop) <= 1e-9 * max(1.0, abs(loop))

    @given(st.integers(0, 10**6))
    def test_opposite_sum(self, seed):
        s = Sampler(seed)
        f, x = s.expr(), s.point()
        if not (clear_of_poles(f, -x) and clear_of_poles(translate(f, -x), x, 0)):
            return
        assert abs(frac_sum(f, 1, -x).value + frac_sum(translate(f, -x), 1, x).value) <= 1e-9

    def test_partial_sum_zero_is_exact(self):
        assert partial_sum(inverse_monomial(1) + logarithm(1, 0.5), 0) == 0


def test_pole_distance():
    assert pole_distance(monomial(2), -1) == math.inf
    assert pole_distance(inverse_monomial(1), -1) == 0
    assert pole_distance(inverse_monomial(1), -2.5) == pytest.approx(0.5)
    assert pole_distance(inverse_monomial(1), 0.0) == pytest.approx(1.0)
    assert pole_distance(inverse_monomial(1, 1, 0.5), -1.5) == 0
    assert mpmath.isinf(pole_distance(polynomial([1, 2]), 3))
