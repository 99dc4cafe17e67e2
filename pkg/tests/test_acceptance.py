"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
summary; every tolerance is pinned here and matches the library defaults.
"""

import math
import time

import numpy as np
import pytest

from hspot import plane, space
from hspot._backend import core
from hspot.cli import main
from hspot.dirichlet import (BoundaryFunction, DiscreteMeasure, laplacian_fd)
from hspot.growth import (LowerBoundProbeSpec, default_lambda, exceptional_cover,
                          growth_probe_plane, lower_bound_probe, maximal_function,
                          probe_exponents)
from hspot.identities import (PolynomialSpec, ZeroList, averaged_limit_space,
                              carleman_halfplane, carleman_halfspace,
                              determinant_dn_check, mobius_jacobian,
                              mobius_jacobian_fd, nevanlinna_halfball,
                              nevanlinna_halfdisk, radial_limit_plane,
                              radial_limit_space)
from hspot.quadrature import DecayHint, QuadratureSpec, integrate_boundary_polar, integrate_line
from hspot.special import gegenbauer, gegenbauer_max, lipschitz_bound_check, wallis


def _announce(criterion, passed, detail=""):
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
    assert passed, f"criterion {criterion}: {detail}"


def test_criterion_01_poisson_normalization():
    t0 = time.perf_counter()
    res = integrate_line(lambda t: core.poisson_plane(0.0, 1.0, t),
                         QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8),
                         DecayHint(4.0 / math.pi, 2.0, 2.0))
    plane_t = time.perf_counter() - t0
    plane_err = abs(res.value - 1.0)
    t0 = time.perf_counter()
    x = np.array([0.0, 0.0, 1.0])
    res = integrate_boundary_polar(lambda yp: core.poisson_space(3, x, yp), 3,
                                   QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6),
                                   DecayHint(16.0 / core.omega_n(3), 3.0, 2.0))
    space_t = time.perf_counter() - t0
    space_err = abs(res.value - 1.0)
    ok = plane_err <= 1e-6 and space_err <= 1e-4 and plane_t < 1.0 and space_t < 1.0
    _announce(1, ok, f"plane err {plane_err:.2e} ({plane_t:.2f}s), "
                     f"space err {space_err:.2e} ({space_t:.2f}s)")


def test_criterion_02_gegenbauer():
    worst = 0.0
    for lam in (1.0, 1.5, 2.0, 2.5):
        for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
            acc = sum(gegenbauer(lam, k, t) * 0.5 ** k for k in range(61))
            worst = max(worst, abs(acc - (1.0 - t + 0.25) ** (-lam)))
    rng = np.random.default_rng(2024)
    bound_viol = 0
    for _ in range(10_000):
        lam = rng.uniform(1.0, 3.0)
        k = int(rng.integers(0, 21))
        t = rng.uniform(-1.0, 1.0)
        if abs(gegenbauer(lam, k, t)) > gegenbauer_max(lam, k) * (1 + 1e-12):
            bound_viol += 1
    lip_viol = 0
    for _ in range(10_000):
        n = int(rng.integers(3, 6))
        k = int(rng.integers(1, 11))
        t, ts = rng.uniform(-1.0, 1.0, size=2)
        if not lipschitz_bound_check(n, k, t, ts).passed:
            lip_viol += 1
    ok = worst <= 1e-8 and bound_viol == 0 and lip_viol == 0
    _announce(2, ok, f"grid err {worst:.2e}, bound violations {bound_viol}, "
                     f"lipschitz violations {lip_viol}")


def test_criterion_03_harmonicity():
    # interior points bounded away from the kernel singularities: the FD
    # truncation error scales with the fourth derivative, so sources stay at
    # distance >= 1 from the stencil
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(0, 5))
        z = complex(rng.uniform(-2, 2), rng.uniform(0.5, 2.5))
        t = rng.uniform(1.2, 4.0)
        if abs(z - t) < 1.0:
            t = z.real + math.copysign(1.0 + rng.uniform(0, 2), t - z.real)
        w = complex(rng.uniform(2.0, 4.0), rng.uniform(0.5, 2.5))
        if abs(z - w) < 1.0:
            w += 2.0
        h = 1e-3 * abs(z)
        worst = max(worst, abs(laplacian_fd(lambda q: plane.poisson(q, t), z, h)))
        worst = max(worst, abs(laplacian_fd(lambda q: plane.poisson_mod(m, q, t), z, h)))
        worst = max(worst, abs(laplacian_fd(lambda q: plane.green(q, w), z, h)))
        worst = max(worst, abs(laplacian_fd(lambda q: plane.green_mod(m, q, w), z, h)))
    for n in (3, 4):
        for _ in range(20):
            m = int(rng.integers(0, 5))
            x = np.append(rng.uniform(-1.5, 1.5, n - 1), rng.uniform(0.5, 2.0))
            yp = rng.uniform(1.0, 3.0, n - 1)
            if np.linalg.norm(np.append(yp, 0.0) - x) < 1.0:
                yp = yp + 2.0
            y = np.append(rng.uniform(2.0, 3.5, n - 1), rng.uniform(0.5, 2.0))
            if np.linalg.norm(x - y) < 1.0:
                y = y + 2.0
            h = 1e-3 * float(np.linalg.norm(x))
            worst = max(worst, abs(laplacian_fd(lambda q: space.poisson(n, q, yp), x, h)))
            worst = max(worst, abs(laplacian_fd(lambda q: space.poisson_mod(n, m, q, yp), x, h)))
            worst = max(worst, abs(laplacian_fd(lambda q: space.green(n, q, y), x, h)))
            worst = max(worst, abs(laplacian_fd(lambda q: space.green_mod(n, m, q, y), x, h)))
    _announce(3, worst <= 1e-5, f"worst FD Laplacian {worst:.2e}")


def test_criterion_04_factorization():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = 0.0
    for m in (1, 2, 3, 4):
        for _ in range(25):
            yp = rng.normal(size=2)
            yp *= math.exp(rng.uniform(0.05, 3.0)) / np.linalg.norm(yp)
            x = rng.normal(size=3)
            x[-1] = abs(x[-1]) + 1e-2
            x *= np.linalg.norm(yp) * rng.uniform(0.05, 0.9) / np.linalg.norm(x)
            a = space.poisson_mod(3, m, x, yp)
            b = space.poisson_mod_factored(3, m, x, yp)
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    wall = time.perf_counter() - t0
    _announce(4, worst <= 1e-8 and wall < 10.0,
              f"worst rel deviation {worst:.2e} in {wall:.2f}s over 100 pairs")


def test_criterion_05_bound_families():
    failures = []
    for fam in plane.BOUND_FAMILIES:
        rep = plane.plane_bound_check(fam, 10_000, seed=7)
        if not rep.passed:
            failures.append(f"plane:{fam}")
    for fam in space.BOUND_FAMILIES:
        rep = space.space_bound_check(fam, 10_000, seed=7)
        if not rep.passed:
            failures.append(f"space:{fam}")
    count = len(plane.BOUND_FAMILIES) + len(space.BOUND_FAMILIES)
    _announce(5, not failures, f"{count} families at 1e4 samples, failures: {failures}")


def test_criterion_06_carleman():
    worst_plane = 0.0
    for R in (2.0, 4.0):
        rep = carleman_halfplane(lambda z: z.imag, R)
        worst_plane = max(worst_plane, rep.residual,
                          abs(rep.lhs_sphere_term + rep.lhs_boundary_term - 0.5),
                          abs(rep.c1 - 0.5), abs(rep.c2))
    rep = carleman_halfspace(3, lambda x: x[-1], 1.0, 2.0)
    space_err = max(rep.residual,
                    abs(rep.lhs_sphere_term + rep.lhs_boundary_term - 2 * math.pi),
                    abs(rep.c1 - 2 * math.pi))
    sub = carleman_halfspace(3, lambda x: float(x @ x), 1.0, 2.0)
    ok = worst_plane <= 1e-8 and space_err <= 1e-6 and sub.slack >= -1e-6
    _announce(6, ok, f"plane {worst_plane:.2e}, space {space_err:.2e}, "
                     f"subharmonic slack {sub.slack:.3g}")


def test_criterion_07_nevanlinna():
    rng = np.random.default_rng(0)
    worst = 0.0
    for u, exact in ((lambda y: y[-1], lambda x: x[-1]),
                     (lambda y: y[0] * y[-1], lambda x: x[0] * x[-1])):
        for _ in range(10):
            x = rng.uniform(-0.4, 0.4, size=3)
            x[-1] = rng.uniform(0.15, 0.6)
            got = nevanlinna_halfball(3, u, lambda yp: u(np.append(yp, 0.0)), 1.0, x)
            worst = max(worst, abs(got - exact(x)))
    rep = nevanlinna_halfdisk(lambda w: w - 1.0, ZeroList([1.0 + 0j]), 2.0, 0.5 + 0j)
    ok = worst <= 1e-5 and rep.abs_err <= 1e-6
    _announce(7, ok, f"half-ball worst {worst:.2e}, half-disk residual {rep.abs_err:.2e}")


def test_criterion_08_radial_limits():
    poly = PolynomialSpec((0.0, 0.0, 1.5))
    mu = DiscreteMeasure([(2.0, 0.7)])
    tab = radial_limit_plane(poly, mu, math.pi / 4, [10.0, 100.0, 1000.0])
    plane_err = abs(tab.rows[-1][1] - tab.limit)
    rate = tab.fitted_rate()
    mu_s = DiscreteMeasure([(np.array([2.0, 0.0]), 1.3)])
    tab_s = radial_limit_space(3, 1.0, mu_s, (math.pi / 3, math.pi / 4),
                               [100.0, 1000.0])
    space_err = abs(tab_s.rows[-1][1] - tab_s.limit)
    rate_s = tab_s.fitted_rate()
    wallis_err = max(abs(wallis(2) - math.pi / 4), abs(wallis(3) - 2.0 / 3.0))
    avg = averaged_limit_space(3, 1.0, DiscreteMeasure([]), [10.0])
    avg_err = abs(avg.rows[0][1] - 16.0 / 9.0)
    ok = (plane_err <= 1e-3 and space_err <= 1e-3 and min(rate, rate_s) >= 0.9
          and wallis_err <= 1e-12 and avg_err <= 1e-6)
    _announce(8, ok, f"errs {plane_err:.1e}/{space_err:.1e}, rates "
                     f"{rate:.2f}/{rate_s:.2f}, wallis {wallis_err:.1e}, "
                     f"averaged {avg_err:.1e}")


def test_criterion_09_mobius():
    rng = np.random.default_rng(31)
    worst_j = 0.0
    for _ in range(20):
        x = np.append(rng.uniform(-2, 2, 2), rng.uniform(0.05, 3.0))
        worst_j = max(worst_j, abs(mobius_jacobian_fd(3, x) - mobius_jacobian(3, x)))
    worst_d = 0.0
    for n in (3, 4, 5):
        for _ in range(20):
            worst_d = max(worst_d, determinant_dn_check(rng.uniform(-3, 3, n)).rel_err)
    ok = worst_j <= 1e-5 and worst_d <= 1e-9
    _announce(9, ok, f"jacobian FD {worst_j:.2e}, determinant rel {worst_d:.2e}")


def test_criterion_10_cover():
    rng = np.random.default_rng(17)
    audited = 0
    for mu in (DiscreteMeasure([(4 + 3j, 1.0), (10 + 1j, 2.0), (0.5j, 0.5)]),
               DiscreteMeasure([(6 + 0.5j, 1.0), (6.3 + 0.7j, 1.5)]),
               DiscreteMeasure([(complex(3 * k, 0.2 * k), 0.4) for k in range(1, 7)])):
        for beta in (0.5, 1.0, 1.7):
            lam = default_lambda(mu, beta)
            cov = exceptional_cover(mu, beta, lam)
            assert cov.bound_sum() <= cov.mass_bound * (1 + 1e-12)
            checked = 0
            while checked < 1000:
                z = complex(rng.uniform(-50, 50), rng.uniform(0, 50))
                if abs(z) < 2.0 or cov.contains(z):
                    continue
                checked += 1
                assert maximal_function(mu, z, beta) <= lam / abs(z) ** beta * (1 + 1e-9)
            audited += checked
    _announce(10, True, f"mass bound exact, {audited} outside-cover audits clean")


def test_criterion_11_growth_probes():
    ratios = {}
    for m in (0, 1):
        f = (BoundaryFunction(lambda t: 1.0, growth=0.0) if m == 0
             else BoundaryFunction(lambda t: abs(t), growth=1.0, breakpoints=(0.0,)))
        tab = growth_probe_plane(f, None, m, 1.0, math.pi / 2,
                                 [2.0 ** k for k in range(2, 11)])
        ratios[m] = tab.last_over_first()
    reduction_ok = all(
        probe_exponents("plane", 1.0, 2.0 + m, alpha, m) == (1.0 - alpha, m + alpha, 0.0)
        for m in (0, 1, 2) for alpha in (0.5, 1.0, 2.0))
    ok = all(r <= 0.1 for r in ratios.values()) and reduction_ok
    _announce(11, ok, f"ratio(2^10)/ratio(2^2) = {ratios[0]:.3g} (m=0), "
                      f"{ratios[1]:.3g} (m=1); p-collapse exact: {reduction_ok}")


def test_criterion_12_lower_bound():
    rho = lambda R: R / math.log(R)
    u = lambda z: math.exp(z.imag) * math.cos(z.real)
    radii = (2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0)
    grid = tuple((R, th) for R in radii for th in np.linspace(0.2, math.pi / 2, 10))
    _, c1 = lower_bound_probe(LowerBoundProbeSpec(1.0, rho, grid), u, 2)
    dense = tuple((R, th) for R in radii for th in np.linspace(0.2, math.pi / 2, 20))
    _, c2 = lower_bound_probe(LowerBoundProbeSpec(1.0, rho, dense), u, 2)
    drift = abs(c2 - c1) / abs(c1)
    ok = math.isfinite(c1) and drift <= 0.10
    _announce(12, ok, f"fitted c {c1:.4g}, grid-doubling drift {100 * drift:.1f}%")


def test_criterion_13_verify_all(tmp_path):
    t0 = time.perf_counter()
    rc1 = main(["verify", "all", "--seed", "7", "--out", str(tmp_path / "r1")])
    wall = time.perf_counter() - t0
    rc2 = main(["verify", "all", "--seed", "7", "--out", str(tmp_path / "r2")])
    same_csv = ((tmp_path / "r1" / "all.csv").read_bytes()
                == (tmp_path / "r2" / "all.csv").read_bytes())
    same_json = ((tmp_path / "r1" / "all.report.json").read_bytes()
                 == (tmp_path / "r2" / "all.report.json").read_bytes())
    ok = rc1 == 0 and rc2 == 0 and wall < 120.0 and same_csv and same_json
    _announce(13, ok, f"suite green in {wall:.1f}s, byte-identical reruns: "
                      f"{same_csv and same_json}")
