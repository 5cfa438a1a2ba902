from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from fracsums.errors import NoPrimitiveInCatalog
from fracsums.expr import (
    antiderivative, constant, exp_times_x, exponential, inverse_monomial,
    logarithm, monomial, reciprocal_pair,
)
from fracsums.parser import parse_expr
from fracsums.regularize import HashSum, classically_convergent, hash_sum
from fracsums.specfun import EULER_GAMMA, bernoulli, zeta_int
from fracsums.verify import Sampler


@pytest.mark.parametrize("src,want", [
    ("k", -1 / 12),
    ("1/k", EULER_GAMMA),
    ("(-1)^(k+1)", 0.5),
    ("(-1)^(k+1)*k", 0.25),
])
def test_known_values(src, want):
    r = hash_sum(parse_expr(src))
    assert isinstance(r, HashSum)
    assert abs(r.value - want) <= 1e-10


@pytest.mark.parametrize("f,want", [
    (inverse_monomial(2), math.pi ** 2 / 6),
    (reciprocal_pair(), 1.0),
    (exponential(-1), 1 / (math.e - 1)),
    (exp_times_x(-0.5), math.exp(-0.5) / (1 - math.exp(-0.5)) ** 2),
])
def test_convergent_series_keep_their_value(f, want):
    r = hash_sum(f)
    assert r.classically_convergent
    assert abs(r.value - want) <= 1e-12


def test_log_has_no_primitive():
    with pytest.raises(NoPrimitiveInCatalog):
        hash_sum(logarithm())


def test_primitive_is_reported():
    assert hash_sum(monomial(2)).primitive == antiderivative(monomial(2))
    assert complex(hash_sum(constant(1))) == pytest.approx(-0.5)


@pytest.mark.parametrize("a", range(1, 9))
def test_powers(a):
    v = hash_sum(monomial(a)).value
    assert abs(v + float(bernoulli(a + 1)) / (a + 1)) <= 1e-10
    # agreement with zeta regularization on this family
    assert abs(v - zeta_int(-a)) <= 1e-10


@pytest.mark.parametrize("f,expected", [
    (monomial(1), False),
    (constant(2), False),
    (inverse_monomial(1), False),
    (inverse_monomial(2), True),
    (reciprocal_pair(), True),
    (exponential(-0.1 + 3j), True),
    (exponential(math.pi * 1j), False),
    (exp_times_x(0.2), False),
    (inverse_monomial(3) + exponential(-1), True),
])
def test_convergence_heuristic(f, expected):
    assert classically_convergent(f) is expected


@given(st.integers(0, 10**6))
def test_linearity(seed):
    s = Sampler(seed)
    fams = ("constant", "monomial", "inverse", "exponential", "exp_times_x")
    f, g = s.expr(fams), s.expr(fams)
    lam, mu = s.coeff(), s.coeff()
    lhs = hash_sum(f.scale(lam) + g.scale(mu)).value
    rhs = lam * hash_sum(f).value + mu * hash_sum(g).value
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
