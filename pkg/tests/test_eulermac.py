from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from fracsums.errors import NonPolynomial
from fracsums.eulermac import MAX_EM_DEGREE, euler_maclaurin_sum
from fracsums.expr import constant, evaluate, exponential, inverse_monomial, monomial, polynomial
from fracsums.fracsum import frac_sum
from fracsums.specfun import bernoulli
from fracsums.verify import Sampler


def test_linear():
    assert euler_maclaurin_sum(monomial(1), 10) == pytest.approx(55)
    x = 0.3 - 2j
    assert euler_maclaurin_sum(monomial(1), x) == pytest.approx(x * x / 2 + x / 2)


def test_square_at_pi():
    want = frac_sum(monomial(2), 1, math.pi).value
    assert abs(euler_maclaurin_sum(monomial(2), math.pi) - want) <= 1e-12


def test_constant():
    assert euler_maclaurin_sum(constant(1), 2.5 + 1j) == pytest.approx(2.5 + 1j)


def test_zero_polynomial():
    assert euler_maclaurin_sum(monomial(1) - monomial(1), 3) == 0


@pytest.mark.parametrize("f", [inverse_monomial(1), exponential(1j), monomial(MAX_EM_DEGREE + 1)])
def test_rejects(f):
    with pytest.raises(NonPolynomial):
        euler_maclaurin_sum(f, 2)


@given(st.integers(0, 10**6))
def test_matches_fractional_sum(seed):
    s = Sampler(seed)
    p = s.polynomial(10)
    for _ in range(5):
        x = s.point(3.0, 3.0)
        v = frac_sum(p, 1, x).value
        assert abs(euler_maclaurin_sum(p, x) - v) <= 1e-9 * max(1.0, abs(v))


@given(st.integers(0, 10**6))
def test_integer_points_match_loop(seed):
    p = Sampler(seed).polynomial(10)
    loop = 0j
    for n in range(1, 51):
        loop += evaluate(p, n)
        assert abs(euler_maclaurin_sum(p, n) - loop) <= 1e-9 * max(1.0, abs(loop))


def test_degree_sixteen():
    p = polynomial([1] * (MAX_EM_DEGREE + 1))
    x = 1.1 + 0.4j
    v = frac_sum(p, 1, x).value
    assert abs(euler_maclaurin_sum(p, x) - v) <= 1e-9 * max(1.0, abs(v))


@pytest.mark.parametrize("z", [0.5, 1.5j, -2 + 3j])
def test_exponential_cross_check(z):
    # for |z| < 2 pi the correction series converges for e^{zx} as well
    x = 0.75 - 0.5j
    w = cmath.exp(z * x)
    total = (w - 1) / z + (w - 1) / 2
    for m in range(1, 40):
        total += float(bernoulli(2 * m)) / math.factorial(2 * m) * z ** (2 * m - 1) * (w - 1)
    assert abs(total - frac_sum(exponential(z), 1, x).value) <= 1e-10
