"""Gegenbauer and Wallis checks against closed forms and independent oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hspot.errors import CapacityError, DomainError
from hspot.quadrature import QuadratureSpec, integrate_interval
from hspot.special import (gegenbauer, gegenbauer_derivative, gegenbauer_max,
                           generating_sum_check, lipschitz_bound_check, wallis)


def taylor_coefficient(lam, k, t, terms=None):
    """Coefficient of r^k in (1 - 2 t r + r^2)^(-lam) by series multiplication."""
    # expand ((1 - r (2t - r)))^(-lam) = sum_j binom(lam+j-1, j) r^j (2t - r)^j
    coef = 0.0
    for j in range(k + 1):
        # contribution of (2t - r)^j to r^k needs r^(k-j) from the binomial
        i = k - j
        if i > j:
            continue
        c = 1.0
        for idx in range(j):
            c *= (lam + idx) / (idx + 1)
        binom = math.comb(j, i)
        coef += c * binom * (2.0 * t) ** (j - i) * (-1.0) ** i
    return coef


def test_degree_zero_is_one():
    assert gegenbauer(1.5, 0, 0.3) == 1.0


def test_degree_two_taylor_zero():
    # the order-2 coefficient 4 t^2 - 1 vanishes at t = 0.5
    assert gegenbauer(1.0, 2, 0.5) == pytest.approx(0.0, abs=1e-15)


def test_odd_degree_parity():
    for u in (0.1, 0.35, 0.9):
        assert gegenbauer(1.5, 3, -u) == pytest.approx(-gegenbauer(1.5, 3, u), rel=1e-14)


def test_recurrence_matches_taylor_coefficients():
    for lam in (0.5, 1.0, 1.75):
        for k in range(8):
            for t in (-0.8, -0.2, 0.4, 1.0):
                assert gegenbauer(lam, k, t) == pytest.approx(
                    taylor_coefficient(lam, k, t), rel=1e-10, abs=1e-12)


def test_max_examples():
    assert gegenbauer_max(0.7, 0) == 1.0
    assert gegenbauer_max(1.5, 2) == pytest.approx(6.0, rel=1e-15)
    assert gegenbauer_max(1.0, 5) == pytest.approx(6.0, rel=1e-15)


def test_derivative_examples():
    assert gegenbauer_derivative(1.0, 1, 0.0) == pytest.approx(2.0)
    assert gegenbauer_derivative(1.5, 2, 0.0) == pytest.approx(0.0, abs=1e-15)
    h = 1e-5
    fd = (gegenbauer(1.0, 3, 0.2 + h) - gegenbauer(1.0, 3, 0.2 - h)) / (2 * h)
    an = gegenbauer_derivative(1.0, 3, 0.2)
    assert an == pytest.approx(fd, rel=1e-6)


def test_derivative_matches_fd_sweep():
    rng = np.random.default_rng(0)
    for _ in range(200):
        lam = rng.uniform(0.5, 3.0)
        k = int(rng.integers(1, 9))
        t = rng.uniform(-0.95, 0.95)
        h = 1e-5
        fd = (gegenbauer(lam, k, t + h) - gegenbauer(lam, k, t - h)) / (2 * h)
        assert gegenbauer_derivative(lam, k, t) == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_generating_sum_examples():
    rep = generating_sum_check(1.0, 0.5, 60)
    assert rep.passed and rep.rhs == pytest.approx(4.0) and rep.abs_err <= 1e-8
    rep = generating_sum_check(1.5, 0.5, 60)
    assert rep.passed and rep.rhs == pytest.approx(8.0) and rep.abs_err <= 1e-8
    rep = generating_sum_check(1.0, 0.0, 0)
    assert rep.lhs == 1.0 and rep.rhs == 1.0


def test_generating_grid_invariant():
    for lam in (1.0, 1.5, 2.0, 2.5):
        for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
            acc = sum(gegenbauer(lam, k, t) * 0.5 ** k for k in range(61))
            closed = (1.0 - t + 0.25) ** (-lam)
            assert acc == pytest.approx(closed, abs=1e-8)


def test_bound_sweep_no_violations():
    rng = np.random.default_rng(1)
    for _ in range(10_000):
        lam = rng.uniform(1.0, 3.0)
        k = int(rng.integers(0, 21))
        t = rng.uniform(-1.0, 1.0)
        assert abs(gegenbauer(lam, k, t)) <= gegenbauer_max(lam, k) * (1 + 1e-12)


def test_lipschitz_examples():
    assert lipschitz_bound_check(3, 2, 0.4, 0.4).passed
    assert lipschitz_bound_check(3, 3, 1.0, -1.0).passed
    rng = np.random.default_rng(2)
    for _ in range(10_000):
        t, ts = rng.uniform(-1, 1, size=2)
        assert lipschitz_bound_check(4, 5, t, ts).passed


@settings(max_examples=200, deadline=None)
@given(st.floats(0.5, 3.0), st.integers(0, 16), st.floats(-1.0, 1.0))
def test_parity_property(lam, k, t):
    left = gegenbauer(lam, k, -t)
    right = (-1.0) ** k * gegenbauer(lam, k, t)
    assert left == pytest.approx(right, rel=1e-12, abs=1e-12)


def test_wallis_table():
    assert wallis(2) == pytest.approx(math.pi / 4.0, abs=1e-15)
    assert wallis(3) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert wallis(1) == 1.0
    assert wallis(0) == pytest.approx(math.pi / 2.0)


def test_wallis_matches_quadrature():
    for k in range(11):
        quad = integrate_interval(lambda th: math.sin(th) ** k, 0.0, math.pi / 2.0,
                                  QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)).value
        assert wallis(k) == pytest.approx(quad, abs=1e-10)


def test_domain_errors():
    with pytest.raises(CapacityError):
        gegenbauer(1.0, 65, 0.0)
    with pytest.raises(DomainError):
        gegenbauer(1.0, 2, 1.5)
    with pytest.raises(DomainError):
        gegenbauer(-1.0, 2, 0.0)
    with pytest.raises(DomainError):
        gegenbauer_derivative(1.0, 0, 0.0)
    with pytest.raises(DomainError):
        generating_sum_check(1.0, 1.0, 10)
    with pytest.raises(DomainError):
        wallis(-1)
