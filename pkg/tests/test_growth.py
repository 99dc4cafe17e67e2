"""Growth classes, maximal function, covers, probes."""

import math

import numpy as np
import pytest

from hspot.dirichlet import BoundaryFunction, DiscreteMeasure
from hspot.errors import DomainError, HspotError, PreconditionError, UsageError
from hspot.growth import (GrowthClassSpec, LowerBoundProbeSpec, class_membership,
                          default_lambda, exceptional_cover, growth_probe_p,
                          growth_probe_plane, growth_probe_space, lower_bound_probe,
                          maximal_function, probe_exponents, rho_admissible)

ONE = BoundaryFunction(lambda t: 1.0, growth=0.0)
ABS = BoundaryFunction(lambda t: abs(t), growth=1.0, breakpoints=(0.0,))


def test_class_membership_canonical_families():
    rep = class_membership(GrowthClassSpec("plane_m", m=0), ONE)
    assert rep.detail["verdict"] == "finite"
    assert rep.detail["value"] == pytest.approx(math.pi, abs=1e-6)
    assert class_membership(GrowthClassSpec("plane_m", m=1), ABS).detail["verdict"] == "finite"
    cubic = BoundaryFunction(lambda t: abs(t) ** 3, growth=3.0)
    rep = class_membership(GrowthClassSpec("plane_m", m=1), cubic)
    assert rep.detail["verdict"] == "infinite"
    assert not rep.passed


def test_class_membership_space():
    f = BoundaryFunction(lambda yp: 1.0, growth=0.0)
    rep = class_membership(GrowthClassSpec("space_m", m=0, n=3), f)
    assert rep.detail["verdict"] == "finite"
    # int over R^2 of (1+|y|^3)^-1 = 2 pi * 2 pi / (3 sqrt(3))
    assert rep.detail["value"] == pytest.approx(4 * math.pi ** 2 / (3 * math.sqrt(3)),
                                                rel=1e-6)


def test_class_membership_measures():
    mu = DiscreteMeasure([(1 + 2j, 1.5), (5j, 0.25)])
    rep = class_membership(GrowthClassSpec("plane_m", m=1), mu)
    expected = 1.5 * 2 / (1 + math.sqrt(5) ** 3) + 0.25 * 5 / (1 + 125.0)
    assert rep.detail["value"] == pytest.approx(expected, rel=1e-12)
    rep = class_membership(GrowthClassSpec("plane_pgamma", p=2.0, gamma=1.0), mu)
    assert rep.passed


def test_variable_exponent_class():
    spec = GrowthClassSpec("lv_alpha", alpha=0.5, rho=lambda r: 2.0)
    rep = class_membership(spec, ONE)
    assert rep.detail["verdict"] == "finite"


def test_rho_admissible():
    Rs = np.exp(np.linspace(1.0, 8.0, 60))
    assert rho_admissible([(R, 2.0) for R in Rs], 0.5).passed
    rep = rho_admissible([(R, math.sqrt(math.log(R))) for R in Rs], 0.5)
    assert rep.passed and rep.detail["estimate"] == pytest.approx(0.5, abs=0.01)
    rep = rho_admissible([(R, math.log(R)) for R in Rs], 0.5)
    assert not rep.passed and rep.detail["estimate"] == pytest.approx(1.0, abs=0.01)
    with pytest.raises(PreconditionError):
        rho_admissible([(1.0, 2.0), (2.0, 1.5), (3.0, 1.6)], 0.5)


def test_maximal_function():
    mu = DiscreteMeasure([(3 + 4j, 1.0)])
    assert maximal_function(mu, 0j, 1.0) == pytest.approx(0.2)
    assert maximal_function(DiscreteMeasure([]), 0j, 1.0) == 0.0
    assert maximal_function(mu, 1j, 0.0) == 1.0
    assert maximal_function(mu, 3 + 4j, 1.0) == math.inf
    # scaling in mass
    mu3 = mu.scaled(3.0)
    assert maximal_function(mu3, 0j, 1.5) == pytest.approx(
        3.0 * maximal_function(mu, 0j, 1.5))
    # multi-atom cumulative supremum
    mu2 = DiscreteMeasure([(1.0 + 0j, 1.0), (2.0 + 0j, 4.0)])
    got = maximal_function(mu2, 0j, 1.0)
    assert got == pytest.approx(max(1.0 / 1.0, 5.0 / 2.0))


def test_cover_empty_and_single():
    assert exceptional_cover(DiscreteMeasure([]), 1.0, 10.0).disks == []
    mu = DiscreteMeasure([(4 + 3j, 1.0)])
    lam = default_lambda(mu, 1.0)
    cov = exceptional_cover(mu, 1.0, lam)
    assert len(cov.disks) == 1
    assert cov.bound_sum() <= cov.mass_bound
    with pytest.raises(PreconditionError):
        exceptional_cover(mu, 1.0, 0.5 * mu.total_mass())


def test_cover_bound_and_audit():
    configs = [
        DiscreteMeasure([(4 + 3j, 1.0), (10 + 1j, 2.0), (0.5j, 0.5)]),
        DiscreteMeasure([(6 + 0.5j, 1.0), (6.2 + 0.6j, 1.0), (6.1 + 0.4j, 0.5)]),
        DiscreteMeasure([(complex(2 ** k, 0.3), 0.3) for k in range(1, 6)]),
    ]
    rng = np.random.default_rng(3)
    for mu in configs:
        for beta in (0.5, 1.0, 1.5):
            lam = default_lambda(mu, beta)
            cov = exceptional_cover(mu, beta, lam)
            assert cov.bound_sum() <= cov.mass_bound * (1 + 1e-12)
            for c, _ in cov.disks:
                assert abs(complex(c)) >= 2.0
            violations = 0
            for _ in range(1000):
                z = complex(rng.uniform(-40, 40), rng.uniform(0, 40))
                if abs(z) < 2.0 or cov.contains(z):
                    continue
                if maximal_function(mu, z, beta) > lam / abs(z) ** beta * (1 + 1e-9):
                    violations += 1
            assert violations == 0, f"beta={beta}: {violations} audit failures"


def test_cover_space_atoms():
    mu = DiscreteMeasure([(np.array([4.0, 1.0, 2.0]), 1.0)])
    cov = exceptional_cover(mu, 1.0, default_lambda(mu, 1.0))
    assert cov.bound_sum() <= cov.mass_bound
    rng = np.random.default_rng(4)
    for _ in range(300):
        x = np.append(rng.uniform(-20, 20, 2), rng.uniform(0, 20))
        if np.linalg.norm(x) < 2.0 or cov.contains(x):
            continue
        assert maximal_function(mu, x, 1.0) <= cov.lam / np.linalg.norm(x) * (1 + 1e-9)


def test_probe_zero_data():
    tab = growth_probe_plane(None, DiscreteMeasure([]), 0, 1.0, math.pi / 2,
                             [4.0, 16.0, 64.0])
    assert all(v == 0.0 for _, v in tab.clean_rows())


def test_probe_canonical_decay():
    for m in (0, 1):
        f = ONE if m == 0 else ABS
        tab = growth_probe_plane(f, None, m, 1.0, math.pi / 2,
                                 [2.0 ** k for k in range(2, 11)])
        assert tab.last_over_first() <= 0.1
        assert tab.monotone_fraction() == 1.0


def test_probe_atom_far_from_ray():
    mu = DiscreteMeasure([(100.0 + 0.5j, 2.0)])
    tab = growth_probe_plane(None, mu, 0, 1.0, math.pi / 2,
                             [4.0, 16.0, 64.0, 256.0, 1024.0])
    rows = tab.clean_rows()
    assert rows[-1][1] <= rows[0][1]


def test_probe_skips_covered_points():
    mu = DiscreteMeasure([(complex(0.0, 16.0), 1.0)])
    cov = exceptional_cover(mu, 1.0, default_lambda(mu, 1.0))
    tab = growth_probe_plane(None, mu, 0, 1.0, math.pi / 2,
                             [4.0, 16.0, 64.0], cover=cov)
    covered = [R for R, v in tab.rows if v is None]
    if covered:
        assert 16.0 in covered


def test_probe_space():
    f = BoundaryFunction(lambda yp: 1.0, growth=0.0)
    tab = growth_probe_space(3, f, None, 0, 1.0, (math.pi / 2, math.pi / 2),
                             [4.0, 16.0, 64.0])
    assert tab.last_over_first() < 1.0


def test_probe_exponent_reduction():
    # p = 1, gamma = 2 + m collapses to the order-m envelope exponents
    for m in (0, 1, 2):
        h, r, logf = probe_exponents("plane", 1.0, 2.0 + m, 1.0, m)
        assert (h, r, logf) == (0.0, m + 1.0, 0.0)
    h, r, logf = probe_exponents("space", 1.0, 3.0 + 1.0, 1.0, 1, n=3)
    assert (h, r, logf) == (0.0, 2.0, 0.0)


def test_probe_log_boundary_case():
    h, r, logf = probe_exponents("plane", 2.0, 1.0 + 1.0 * 2.0, 1.0, 1)
    assert logf == pytest.approx(0.5)
    h2, r2, logf2 = probe_exponents("plane", 2.0, 1.0 + 1.0 * 2.0 + 0.5, 1.0, 1)
    assert logf2 == 0.0


def test_probe_window_validation():
    with pytest.raises(UsageError):
        probe_exponents("plane", 1.0, 3.5, 1.0, None)     # p=1 needs gamma <= 2
    with pytest.raises(UsageError):
        probe_exponents("plane", 2.0, 4.0, 1.0, None)     # gamma < 1 + p fails
    with pytest.raises(UsageError):
        probe_exponents("space", 1.0, 5.0, 1.0, None, n=3)
    with pytest.raises(UsageError):
        probe_exponents("sphere", 1.0, 1.0, 1.0, None)


def test_probe_p_runs():
    f = BoundaryFunction(lambda t: (1.0 + abs(t)) ** -1.0, growth=-1.0)
    tab = growth_probe_p("plane", f, None, 2.0, 1.0, 1.0, None, math.pi / 2,
                         [4.0, 16.0, 64.0, 256.0])
    rows = tab.clean_rows()
    assert rows[-1][1] <= rows[0][1]


def test_lower_bound_probe():
    rho = lambda R: R / math.log(R)
    u = lambda z: math.exp(z.imag) * math.cos(z.real)
    grid = tuple((R, th) for R in (2.0, 4.0, 8.0, 16.0)
                 for th in (0.3, 0.8, 1.2, math.pi / 2))
    rows, c = lower_bound_probe(LowerBoundProbeSpec(1.0, rho, grid), u, 2)
    assert math.isfinite(c)
    dense = tuple((R, th) for R in (2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0)
                  for th in np.linspace(0.15, math.pi / 2, 9))
    _, c2 = lower_bound_probe(LowerBoundProbeSpec(1.0, rho, dense), u, 2)
    assert abs(c2 - c) <= 0.1 * abs(c)
    # pointwise envelope of the example: exp(R) <= 1 + (2R)^(R/log R)
    for R in (2.0, 4.0, 8.0):
        assert math.exp(R) <= 1.0 + (2.0 * R) ** rho(R)
    _, c_nonneg = lower_bound_probe(LowerBoundProbeSpec(1.0, rho, grid),
                                    lambda z: 1.0, 2)
    assert c_nonneg <= 0.0


def test_lower_bound_validation():
    with pytest.raises(DomainError):
        LowerBoundProbeSpec(-1.0, lambda R: 2.0, ((2.0, 0.3),))
    spec = LowerBoundProbeSpec(1.0, lambda R: 2.0, ((2.0, 0.0),))
    with pytest.raises(DomainError):
        lower_bound_probe(spec, lambda z: 0.0, 2)
