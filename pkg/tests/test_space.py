"""Half-space kernel values, the moment-integral factorization, and bounds."""

import math

import numpy as np
import pytest

from hspot import space
from hspot.dirichlet import laplacian_fd
from hspot.errors import DomainError, SingularityError


def test_constants():
    assert space.omega(3) == pytest.approx(4 * math.pi, rel=1e-15)
    assert space.omega(4) == pytest.approx(2 * math.pi ** 2, rel=1e-15)
    assert space.omega(5) == pytest.approx(8 * math.pi ** 2 / 3, rel=1e-14)
    assert space.fundamental_coefficient(3) == pytest.approx(1 / (4 * math.pi))
    c = space.SpaceConstants.make(4)
    assert c.omega == space.omega(4) and c.r == space.fundamental_coefficient(4)
    with pytest.raises(DomainError):
        space.omega(6)


def test_fundamental_examples():
    assert space.fundamental(3, [1, 0, 0]) == pytest.approx(-1 / (4 * math.pi))
    assert space.fundamental(4, [0, 1, 0, 0]) == pytest.approx(-space.fundamental_coefficient(4))
    assert space.fundamental(3, [0, 0, 2.0]) == pytest.approx(-1 / (8 * math.pi))
    with pytest.raises(SingularityError):
        space.fundamental(3, [0, 0, 0])


def test_green_examples():
    assert space.green(3, [0.3, -1.0, 1.0], [2.0, 0.5, 0.0]) == 0.0
    assert space.green(3, [0, 0, 1.0], [0, 0, 2.0]) == pytest.approx(-1 / (6 * math.pi))
    rng = np.random.default_rng(0)
    om = space.omega(3)
    for _ in range(500):
        x = np.append(rng.uniform(-3, 3, 2), rng.uniform(0.05, 3))
        y = np.append(rng.uniform(-3, 3, 2), rng.uniform(0.05, 3))
        if np.linalg.norm(x - y) < 1e-6:
            continue
        g = space.green(3, x, y)
        assert g == pytest.approx(space.green(3, y, x), rel=1e-12, abs=1e-15)
        assert abs(g) <= 2 * x[-1] * y[-1] / (om * np.linalg.norm(x - y) ** 3) * (1 + 1e-12)


def test_poisson_examples():
    assert space.poisson(3, [0, 0, 1.0], [0, 0]) == pytest.approx(1 / (2 * math.pi))
    rng = np.random.default_rng(1)
    for _ in range(100):
        x = np.append(rng.uniform(-2, 2, 2), rng.uniform(0.1, 2))
        yp = rng.uniform(-3, 3, 2)
        shift = rng.uniform(-2, 2, 2)
        moved_x = x.copy()
        moved_x[:2] += shift
        assert space.poisson(3, x, yp) == pytest.approx(
            space.poisson(3, moved_x, yp + shift), rel=1e-12)
        assert space.poisson(3, x, yp) > 0
    with pytest.raises(DomainError):
        space.poisson(3, [0, 0, -1.0], [0, 0])


def test_poisson_mod_branches():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = int(rng.integers(3, 6))
        x = np.append(rng.uniform(-2, 2, n - 1), rng.uniform(0.1, 2))
        yp_in = rng.uniform(-0.5, 0.5, n - 1)
        m = int(rng.integers(0, 7))
        assert space.poisson_mod(n, m, x, yp_in) == space.poisson(n, x, yp_in)
        yp_out = rng.uniform(-5, 5, n - 1)
        assert space.poisson_mod(n, 0, x, yp_out) == space.poisson(n, x, yp_out)


def test_poisson_mod_series_consistency():
    # the tail-summation path must agree with the literal subtraction in the
    # mild-cancellation band s in (0.3, 0.5)
    rng = np.random.default_rng(3)
    om = space.omega(3)
    for _ in range(300):
        m = int(rng.integers(1, 6))
        yp = rng.normal(size=2)
        yp *= math.exp(rng.uniform(0.2, 2.0)) / np.linalg.norm(yp)
        s = rng.uniform(0.3, 0.499)
        x = rng.normal(size=3)
        x[-1] = abs(x[-1]) + 0.05
        x *= s * np.linalg.norm(yp) / np.linalg.norm(x)
        ax, ny = np.linalg.norm(x), np.linalg.norm(yp)
        t = float(np.dot(x[:2], yp) / (ax * ny))
        from hspot._backend import core
        literal = space.poisson(3, x, yp) - sum(
            2 * x[-1] * ax ** k / (om * ny ** (3 + k)) * core.geg_eval(1.5, k, t)
            for k in range(m))
        val = space.poisson_mod(3, m, x, yp)
        assert val == pytest.approx(literal, rel=1e-9, abs=1e-14)


def test_green_mod_branches_and_oracle():
    x = np.array([0.4, -0.2, 1.1])
    y_in = np.array([0.2, 0.1, 0.3])
    for m in range(5):
        assert space.green_mod(3, m, x, y_in) == space.green(3, x, y_in)
    yb = np.array([3.0, 1.0, 0.0])
    assert space.green_mod(3, 2, x, yb) == pytest.approx(0.0, abs=1e-16)

    # hand-assembled order-2 corrected fundamental solution, n = 3, m = 1
    y = np.array([1.5, -2.0, 0.8])
    r3 = space.fundamental_coefficient(3)

    def e2(xx, yy):
        base = -r3 / np.linalg.norm(xx - yy)
        ay = np.linalg.norm(yy)
        if ay <= 1:
            return base
        ax = np.linalg.norm(xx)
        t = float(np.dot(xx, yy) / (ax * ay))
        return base + r3 * (1.0 / ay + ax * t / ay ** 2)
    ystar = y * np.array([1.0, 1.0, -1.0])
    expected = e2(x, y) - e2(x, ystar)
    assert space.green_mod(3, 1, x, y) == pytest.approx(expected, rel=1e-12)


def test_i_integral_examples():
    assert space.i_integral(2, 0, 0.7, 0.3) == pytest.approx(0.7, rel=1e-12)
    assert space.i_integral(4, 0, 2.0, 0.0) == pytest.approx(2 + 8 / 3, rel=1e-11)
    closed = (math.sqrt(2.0) + math.asinh(1.0)) / 2.0
    assert space.i_integral(3, 0, 1.0, 0.0) == pytest.approx(closed, rel=1e-11)
    values = [space.i_integral(3, 2, s, 0.4) for s in (0.5, 1.0, 2.0)]
    assert values[0] < values[1] < values[2]
    assert values[0] > 0
    with pytest.raises(DomainError):
        space.i_integral(3, 0, 1.0, 1.0)
    with pytest.raises(DomainError):
        space.i_integral(3, 0, -1.0, 0.0)


def test_factorization_agreement():
    rng = np.random.default_rng(5)
    for m in (1, 2, 3, 4):
        for _ in range(25):
            yp = rng.normal(size=2)
            yp *= math.exp(rng.uniform(0.05, 3.0)) / np.linalg.norm(yp)
            x = rng.normal(size=3)
            x[-1] = abs(x[-1]) + 1e-2
            x *= np.linalg.norm(yp) * rng.uniform(0.05, 0.9) / np.linalg.norm(x)
            a = space.poisson_mod(3, m, x, yp)
            b = space.poisson_mod_factored(3, m, x, yp)
            assert a == pytest.approx(b, rel=1e-8, abs=1e-300)


def test_factorization_order_zero_and_domain():
    x = np.array([0.1, 0.2, 0.5])
    yp = np.array([2.0, 1.0])
    assert space.poisson_mod_factored(3, 0, x, yp) == space.poisson(3, x, yp)
    with pytest.raises(DomainError):
        space.poisson_mod_factored(3, 1, x, np.array([0.3, 0.1]))


def test_factorization_collinear_clamp():
    # x parallel to (y', 0) hits |t'| = 1; the clamp keeps the moment
    # integrals finite and the agreement intact
    yp = np.array([3.0, 0.0])
    x = np.array([1.2, 0.0, 1e-9])
    a = space.poisson_mod(3, 2, x, yp)
    b = space.poisson_mod_factored(3, 2, x, yp)
    assert a == pytest.approx(b, rel=1e-6, abs=1e-18)


def test_harmonicity_fd():
    rng = np.random.default_rng(6)
    for n in (3, 4):
        for _ in range(10):
            x = np.append(rng.uniform(-1.5, 1.5, n - 1), rng.uniform(0.5, 2.0))
            m = int(rng.integers(0, 5))
            yp = rng.uniform(1.0, 3.0, n - 1)
            y = np.append(rng.uniform(2.0, 3.0, n - 1), rng.uniform(0.5, 2.0))
            h = 1e-3 * float(np.linalg.norm(x))
            assert abs(laplacian_fd(lambda q: space.poisson_mod(n, m, q, yp), x, h)) <= 1e-5
            assert abs(laplacian_fd(lambda q: space.green_mod(n, m, q, y), x, h)) <= 1e-5


def test_truncation_tail_control():
    # for |y'| >= 2|x| the kernel equals its expansion tail; the summed tail
    # must sit below the geometric majorant of the first dropped order
    rng = np.random.default_rng(7)
    from hspot._backend import core
    for _ in range(200):
        m = int(rng.integers(1, 6))
        yp = rng.normal(size=2)
        yp *= math.exp(rng.uniform(0.8, 3.0)) / np.linalg.norm(yp)
        x = rng.normal(size=3)
        x[-1] = abs(x[-1]) + 0.05
        s = rng.uniform(0.05, 0.5)
        x *= s * np.linalg.norm(yp) / np.linalg.norm(x)
        ax, ny = np.linalg.norm(x), np.linalg.norm(yp)
        val = abs(space.poisson_mod(3, m, x, yp))
        # geometric majorant sum_{k>=m} C_k(1) s^k <= C_m(1) s^m / (1 - q)
        q = s * (m + 3.0) / (m + 1.0)
        assert q < 1.0
        majorant = (2 * x[-1] / (space.omega(3) * ny ** 3)
                    * core.geg_one(1.5, m) * s ** m / (1 - q))
        assert val <= majorant * (1 + 1e-9)


def test_bound_families_pass():
    for fam in space.BOUND_FAMILIES:
        rep = space.space_bound_check(fam, 10_000, seed=11)
        assert rep.passed, f"{fam}: {rep.detail}"


def test_dimension_checks():
    with pytest.raises(DomainError):
        space.poisson(3, [0, 0, 1, 1], [0, 0])
    with pytest.raises(DomainError):
        space.green(3, [0, 0, 1], [0, 0, 1, 2])
