"""Named verification suites driven by the command-line harness.

Each suite is a list of (check_name, thunk) pairs; thunks return a
VerificationReport.  All randomness flows from the seed argument, so a
fixed seed reproduces every number bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np

from . import plane, space, special
from ._backend import core
from .dirichlet import BoundaryFunction, DiscreteMeasure, laplacian_fd
from .identities import (PolynomialSpec, ZeroList, averaged_limit_plane,
                         averaged_limit_space, carleman_halfplane,
                         carleman_halfspace, determinant_dn_check,
                         majorant_identity_checks, majorant_slice_space,
                         mobius_jacobian, mobius_jacobian_fd, mobius_to_ball,
                         nevanlinna_halfball, nevanlinna_halfdisk,
                         radial_limit_plane, radial_limit_space,
                         zero_sum_diagnostic)
from .quadrature import DecayHint, QuadratureSpec, integrate_boundary_polar, integrate_line, integrate_interval
from .report import VerificationReport, bounded, compare


def _report_from_bool(name, passed, lhs, rhs, anchor, **detail):
    err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    return VerificationReport(name, lhs, rhs, err, err / scale if scale else 0.0,
                              passed, anchor=anchor, detail=detail)


# ----------------------------------------------------------------------
# kernels

def _kernels_suite(seed: int, tol: float | None):
    checks = []

    def plane_normalization():
        res = integrate_line(lambda t: core.poisson_plane(0.0, 1.0, t),
                             QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8),
                             DecayHint(4.0 / math.pi, 2.0, 2.0))
        return compare("plane-normalization", res.value, 1.0, tol or 1e-6,
                       anchor="kernels.plane-normalization")
    checks.append(("plane-normalization", plane_normalization))

    def space_normalization():
        x = np.array([0.0, 0.0, 1.0])
        res = integrate_boundary_polar(lambda yp: core.poisson_space(3, x, yp), 3,
                                       QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6),
                                       DecayHint(2.0 * 8.0 / core.omega_n(3), 3.0, 2.0))
        return compare("space-normalization", res.value, 1.0, tol or 1e-4,
                       anchor="kernels.space-normalization")
    checks.append(("space-normalization", space_normalization))

    def spot_values():
        vals = [
            (plane.poisson(1j, 0.0), 1.0 / math.pi),
            (plane.poisson(1j, 1.0), 1.0 / (2.0 * math.pi)),
            (plane.green(1j, 2j), -math.log(3.0) / (2.0 * math.pi)),
            (space.poisson(3, [0.0, 0.0, 1.0], [0.0, 0.0]), 1.0 / (2.0 * math.pi)),
            (space.green(3, [0, 0, 1.0], [0, 0, 2.0]), -1.0 / (6.0 * math.pi)),
            (space.fundamental(3, [1.0, 0, 0]), -1.0 / (4.0 * math.pi)),
        ]
        worst = max(abs(a - b) for a, b in vals)
        return _report_from_bool("spot-values", worst <= 1e-13, worst, 0.0,
                                 "kernels.spot-values", count=len(vals))
    checks.append(("spot-values", spot_values))

    def branch_rule():
        # inside the unit boundary interval the modified kernels equal the
        # classical ones bit for bit
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(200):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3.0))
            t = rng.uniform(-1.0, 1.0)
            m = int(rng.integers(0, 6))
            worst = max(worst, abs(plane.poisson_mod(m, z, t) - plane.poisson(z, t)))
            x = np.append(rng.uniform(-2, 2, size=2), rng.uniform(0.1, 2.0))
            yp = rng.uniform(-0.7, 0.7, size=2)
            worst = max(worst, abs(space.poisson_mod(3, m, x, yp) - space.poisson(3, x, yp)))
        return _report_from_bool("branch-rule", worst == 0.0, worst, 0.0,
                                 "kernels.branch-rule")
    checks.append(("branch-rule", branch_rule))

    def harmonicity():
        rng = np.random.default_rng(seed + 1)
        worst = 0.0
        for _ in range(5):
            z = complex(rng.uniform(-2, 2), rng.uniform(0.5, 2.5))
            t = rng.uniform(1.5, 4.0)
            if abs(z - t) < 1.0:
                t += 2.0
            w = complex(rng.uniform(-2, 2), rng.uniform(0.5, 2.5))
            if abs(z - w) < 1.0:
                w += 2.0 + 1.0j
            m = int(rng.integers(0, 5))
            h = 1e-3 * abs(z)
            worst = max(worst, abs(laplacian_fd(lambda q: plane.poisson_mod(m, q, t), z, h)))
            worst = max(worst, abs(laplacian_fd(lambda q: plane.green_mod(m, q, w), z, h)))
            x = np.append(rng.uniform(-1.5, 1.5, size=2), rng.uniform(0.5, 2.0))
            yp = rng.uniform(1.0, 3.0, size=2)
            if np.linalg.norm(np.append(yp, 0.0) - x) < 1.0:
                yp = yp + 2.0
            y = np.append(rng.uniform(-1.5, 1.5, size=2), rng.uniform(0.5, 2.0))
            if np.linalg.norm(x - y) < 1.0:
                y = y + 2.0
            hx = 1e-3 * float(np.linalg.norm(x))
            worst = max(worst, abs(laplacian_fd(lambda q: space.poisson_mod(3, m, q, yp), x, hx)))
            worst = max(worst, abs(laplacian_fd(lambda q: space.green_mod(3, m, q, y), x, hx)))
        return _report_from_bool("harmonicity", worst <= (tol or 1e-5), worst, 0.0,
                                 "kernels.harmonicity", points=5)
    checks.append(("harmonicity", harmonicity))

    def factorization():
        rng = np.random.default_rng(seed + 2)
        worst = 0.0
        for m in (1, 2, 3, 4):
            for _ in range(25):
                yp = rng.normal(size=2)
                yp *= math.exp(rng.uniform(0.05, 3.0)) / np.linalg.norm(yp)
                x = rng.normal(size=3)
                x[-1] = abs(x[-1]) + 1e-2
                x *= float(np.linalg.norm(yp)) * rng.uniform(0.05, 0.9) / np.linalg.norm(x)
                a = space.poisson_mod(3, m, x, yp)
                b = space.poisson_mod_factored(3, m, x, yp)
                worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
        return _report_from_bool("factorization", worst <= (tol or 1e-8), worst, 0.0,
                                 "kernels.factorization", pairs=100)
    checks.append(("factorization", factorization))

    for fam in plane.BOUND_FAMILIES:
        def make(f=fam):
            return plane.plane_bound_check(f, 10_000, seed)
        checks.append((f"plane-bound-{fam}", make))
    for fam in space.BOUND_FAMILIES:
        def make(f=fam):
            return space.space_bound_check(f, 10_000, seed)
        checks.append((f"space-bound-{fam}", make))
    return checks


# ----------------------------------------------------------------------
# gegenbauer

def _gegenbauer_suite(seed: int, tol: float | None):
    checks = []

    def generating_grid():
        worst = 0.0
        for lam in (1.0, 1.5, 2.0, 2.5):
            for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
                acc = sum(core.geg_eval(lam, k, t) * 0.5 ** k for k in range(61))
                closed = (1.0 - 2.0 * t * 0.5 + 0.25) ** (-lam)
                worst = max(worst, abs(acc - closed))
        return _report_from_bool("generating-grid", worst <= (tol or 1e-8), worst, 0.0,
                                 "gegenbauer.generating-grid")
    checks.append(("generating-grid", generating_grid))

    def generating_sum():
        rep = special.generating_sum_check(1.0, 0.5, 60)
        ok = rep.passed and abs(rep.rhs - 4.0) < 1e-14 and rep.abs_err <= 1e-8
        return _report_from_bool("generating-sum", ok, rep.lhs, rep.rhs,
                                 "gegenbauer.generating-sum")
    checks.append(("generating-sum", generating_sum))

    def bound_sweep():
        rng = np.random.default_rng(seed)
        violations = 0
        for _ in range(10_000):
            lam = rng.uniform(1.0, 3.0)
            k = int(rng.integers(0, 21))
            t = rng.uniform(-1.0, 1.0)
            if abs(core.geg_eval(lam, k, t)) > core.geg_one(lam, k) * (1 + 1e-12):
                violations += 1
        return _report_from_bool("max-bound-sweep", violations == 0,
                                 float(violations), 0.0, "gegenbauer.max-bound")
    checks.append(("max-bound-sweep", bound_sweep))

    def lipschitz_sweep():
        rng = np.random.default_rng(seed + 1)
        violations = 0
        for _ in range(10_000):
            n = int(rng.integers(3, 6))
            k = int(rng.integers(1, 11))
            t, ts = rng.uniform(-1.0, 1.0, size=2)
            if not special.lipschitz_bound_check(n, k, t, ts).passed:
                violations += 1
        return _report_from_bool("lipschitz-sweep", violations == 0,
                                 float(violations), 0.0, "gegenbauer.lipschitz")
    checks.append(("lipschitz-sweep", lipschitz_sweep))

    def derivative_fd():
        rng = np.random.default_rng(seed + 2)
        worst = 0.0
        for _ in range(300):
            lam = rng.uniform(0.5, 3.0)
            k = int(rng.integers(1, 9))
            t = rng.uniform(-0.95, 0.95)
            h = 1e-5
            fd = (core.geg_eval(lam, k, t + h) - core.geg_eval(lam, k, t - h)) / (2 * h)
            an = core.geg_deriv(lam, k, t)
            worst = max(worst, abs(fd - an) / max(1.0, abs(an)))
        return _report_from_bool("derivative-fd", worst <= (tol or 1e-6), worst, 0.0,
                                 "gegenbauer.derivative")
    checks.append(("derivative-fd", derivative_fd))

    def wallis_values():
        ok = (abs(special.wallis(2) - math.pi / 4.0) < 1e-15
              and abs(special.wallis(3) - 2.0 / 3.0) < 1e-15
              and abs(special.wallis(1) - 1.0) < 1e-15)
        worst = 0.0
        for k in range(0, 11):
            quad = integrate_interval(lambda th: math.sin(th) ** k, 0.0, math.pi / 2.0,
                                      QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)).value
            worst = max(worst, abs(quad - special.wallis(k)))
        return _report_from_bool("wallis", ok and worst <= 1e-10, worst, 0.0,
                                 "gegenbauer.wallis")
    checks.append(("wallis", wallis_values))
    return checks


# ----------------------------------------------------------------------
# carleman

def _carleman_suite(seed: int, tol: float | None):
    checks = []
    plane_tol = tol or 1e-8
    space_tol = tol or 1e-6

    for name, u in (("y", lambda z: z.imag), ("x", lambda z: z.real),
                    ("re-z2", lambda z: (z * z).real)):
        for R in (2.0, 4.0):
            def make(u=u, R=R, name=name):
                rep = carleman_halfplane(u, R)
                return compare(f"plane-{name}-R{R:g}", rep.lhs_sphere_term + rep.lhs_boundary_term,
                               rep.c1 + rep.c2 / R ** 2, plane_tol,
                               anchor="carleman.plane", c1=rep.c1, c2=rep.c2)
            checks.append((f"plane-{name}-R{R:g}", make))

    def plane_linear_values():
        rep = carleman_halfplane(lambda z: z.imag, 2.0)
        ok = (abs(rep.lhs_sphere_term + rep.lhs_boundary_term - 0.5) <= plane_tol
              and abs(rep.c1 - 0.5) <= plane_tol and abs(rep.c2) <= plane_tol)
        return _report_from_bool("plane-y-closed-form", ok, rep.c1, 0.5,
                                 "carleman.plane-closed-form", c2=rep.c2)
    checks.append(("plane-y-closed-form", plane_linear_values))

    for name, u in (("xn", lambda x: x[-1]), ("x1xn", lambda x: x[0] * x[-1])):
        for R in (2.0, 4.0):
            def make(u=u, R=R, name=name):
                rep = carleman_halfspace(3, u, 1.0, R)
                return compare(f"space-{name}-R{R:g}", rep.lhs_sphere_term + rep.lhs_boundary_term,
                               rep.c1 + rep.c2 / R ** 3, space_tol,
                               anchor="carleman.space", c1=rep.c1, c2=rep.c2)
            checks.append((f"space-{name}-R{R:g}", make))

    def space_xn_closed_form():
        rep = carleman_halfspace(3, lambda x: x[-1], 1.0, 2.0)
        lhs = rep.lhs_sphere_term + rep.lhs_boundary_term
        ok = abs(lhs - 2.0 * math.pi) <= space_tol and abs(rep.c1 - 2.0 * math.pi) <= space_tol
        return _report_from_bool("space-xn-closed-form", ok, lhs, 2.0 * math.pi,
                                 "carleman.space-closed-form", c1=rep.c1, c2=rep.c2)
    checks.append(("space-xn-closed-form", space_xn_closed_form))

    def subharmonic_direction():
        rep = carleman_halfspace(3, lambda x: float(x @ x), 1.0, 2.0)
        return bounded("subharmonic-slack", 0.0, rep.slack, slack=space_tol,
                       anchor="carleman.subharmonic", measured_slack=rep.slack)
    checks.append(("subharmonic-slack", subharmonic_direction))
    return checks


# ----------------------------------------------------------------------
# nevanlinna

def _nevanlinna_suite(seed: int, tol: float | None):
    checks = []
    ball_tol = tol or 1e-5

    def halfball(name, u_vol, expected_of):
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(10):
            x = rng.uniform(-0.5, 0.5, size=3)
            x[-1] = rng.uniform(0.15, 0.7)
            if np.linalg.norm(x) >= 0.85 or np.linalg.norm(x) < 0.05:
                x *= 0.5 / np.linalg.norm(x)
            got = nevanlinna_halfball(3, u_vol, lambda yp: u_vol(np.append(yp, 0.0)),
                                      1.0, x)
            worst = max(worst, abs(got - expected_of(x)))
        return _report_from_bool(name, worst <= ball_tol, worst, 0.0,
                                 "nevanlinna.halfball", points=10)

    checks.append(("halfball-xn", lambda: halfball("halfball-xn", lambda y: y[-1],
                                                   lambda x: x[-1])))
    checks.append(("halfball-x1xn", lambda: halfball("halfball-x1xn",
                                                     lambda y: y[0] * y[-1],
                                                     lambda x: x[0] * x[-1])))

    def halfdisk_linear():
        rep = nevanlinna_halfdisk(lambda w: w - 1.0, ZeroList([1.0 + 0j]), 2.0, 0.5 + 0j)
        return compare("halfdisk-linear", rep.lhs, rep.rhs, tol or 1e-6,
                       anchor="nevanlinna.halfdisk", **rep.detail)
    checks.append(("halfdisk-linear", halfdisk_linear))

    def halfdisk_constant():
        rep = nevanlinna_halfdisk(lambda w: 2.5 + 0j, ZeroList(), 2.0, 0.7 + 0j)
        return compare("halfdisk-constant", rep.lhs, rep.rhs, tol or 1e-8,
                       anchor="nevanlinna.halfdisk")
    checks.append(("halfdisk-constant", halfdisk_constant))

    def halfdisk_two_radii():
        f = lambda w: (w - 0.5 - 0.4j) * (w + 0.5 - 0.4j)  # zero pair, one inside
        zl = ZeroList([0.5 + 0.4j])
        r1 = nevanlinna_halfdisk(f, zl, 2.0, 0.9 + 0.2j)
        r2 = nevanlinna_halfdisk(f, zl, 3.0, 0.9 + 0.2j)
        worst = max(r1.abs_err, r2.abs_err)
        return _report_from_bool("halfdisk-two-radii", worst <= 2.0 * (tol or 1e-6),
                                 worst, 0.0, "nevanlinna.halfdisk-consistency")
    checks.append(("halfdisk-two-radii", halfdisk_two_radii))

    def zero_sum():
        zl = ZeroList([complex(k, 0.0) for k in range(1, 201)])
        partial = zero_sum_diagnostic(zl, 2.0)
        inc = zero_sum_diagnostic(ZeroList([complex(200, 0.0)]), 2.0)
        single = zero_sum_diagnostic(ZeroList([1.0 + 0j]), 2.0)
        ok = abs(single - 0.5) < 1e-15 and inc < 1e-4 and partial < math.inf
        return _report_from_bool("zero-sum-diagnostic", ok, partial, partial,
                                 "nevanlinna.zero-sum", last_increment=inc)
    checks.append(("zero-sum-diagnostic", zero_sum))
    return checks


# ----------------------------------------------------------------------
# limits

def _limits_suite(seed: int, tol: float | None):
    checks = []
    lim_tol = tol or 1e-3

    def wallis_exact():
        ok = (abs(special.wallis(2) - math.pi / 4.0) <= 1e-12
              and abs(special.wallis(3) - 2.0 / 3.0) <= 1e-12)
        return _report_from_bool("wallis-exact", ok, special.wallis(2), math.pi / 4.0,
                                 "limits.wallis")
    checks.append(("wallis-exact", wallis_exact))

    def radial_plane():
        poly = PolynomialSpec((0.0, 0.0, 1.5))
        mu = DiscreteMeasure([(2.0, 0.7)])
        tab = radial_limit_plane(poly, mu, math.pi / 4.0, [10.0, 100.0, 1000.0])
        err = abs(tab.rows[-1][1] - tab.limit)
        rate = tab.fitted_rate()
        errs = [e for _, e in tab.errors()]
        mono = all(b <= a * (1 + 1e-9) for a, b in zip(errs, errs[1:]))
        return _report_from_bool("radial-plane", err <= lim_tol and rate >= 0.9 and mono,
                                 err, 0.0, "limits.radial-plane", rate=rate)
    checks.append(("radial-plane", radial_plane))

    def radial_plane_monomial():
        poly = PolynomialSpec((0.0, 0.0, 1.5))
        tab = radial_limit_plane(poly, DiscreteMeasure([]), math.pi / 4.0, [10.0, 100.0])
        worst = max(abs(v - tab.limit) for _, v in tab.rows)
        return _report_from_bool("radial-plane-monomial", worst <= 1e-12, worst, 0.0,
                                 "limits.radial-plane-exact")
    checks.append(("radial-plane-monomial", radial_plane_monomial))

    def averaged_plane():
        poly = PolynomialSpec((0.0, 0.0, 1.5))
        mu = DiscreteMeasure([(2.0, 0.7), (-3.0, 0.4)])
        tab = averaged_limit_plane(poly, mu, [10.0, 100.0, 1000.0])
        err = abs(tab.rows[-1][1] - tab.limit)
        return _report_from_bool("averaged-plane", err <= lim_tol, err, 0.0,
                                 "limits.averaged-plane", limit=tab.limit)
    checks.append(("averaged-plane", averaged_plane))

    def sign_flip():
        # the limit correction is (1/pi) sum mass/t^(p+1): moving an atom to
        # t < -1 flips its sign exactly when p+1 is odd, i.e. for even p
        poly2 = PolynomialSpec((0.0, 0.0, 1.0))
        pos2 = radial_limit_plane(poly2, DiscreteMeasure([(2.0, 1.0)]), math.pi / 4, [10.0])
        neg2 = radial_limit_plane(poly2, DiscreteMeasure([(-2.0, 1.0)]), math.pi / 4, [10.0])
        poly1 = PolynomialSpec((0.0, 1.0))
        pos1 = radial_limit_plane(poly1, DiscreteMeasure([(2.0, 1.0)]), math.pi / 2, [10.0])
        neg1 = radial_limit_plane(poly1, DiscreteMeasure([(-2.0, 1.0)]), math.pi / 2, [10.0])
        flip_even = (pos2.limit - math.sin(math.pi / 2)) * (neg2.limit - math.sin(math.pi / 2)) < 0
        same_odd = abs(pos1.limit - neg1.limit) < 1e-15
        return _report_from_bool("correction-sign", flip_even and same_odd,
                                 pos2.limit, neg2.limit, "limits.sign")
    checks.append(("correction-sign", sign_flip))

    def radial_space():
        mu = DiscreteMeasure([(np.array([2.0, 0.0]), 1.3)])
        tab = radial_limit_space(3, 1.0, mu, (math.pi / 3, math.pi / 4), [100.0, 1000.0])
        err = abs(tab.rows[-1][1] - tab.limit)
        rate = tab.fitted_rate()
        return _report_from_bool("radial-space", err <= lim_tol and rate >= 0.9,
                                 err, 0.0, "limits.radial-space", rate=rate)
    checks.append(("radial-space", radial_space))

    def averaged_space_exact():
        tab = averaged_limit_space(3, 1.0, DiscreteMeasure([]), [10.0])
        err = abs(tab.rows[0][1] - tab.limit)
        ok = err <= 1e-6 and abs(tab.limit - 16.0 / 9.0) <= 1e-14
        return _report_from_bool("averaged-space-exact", ok, tab.rows[0][1],
                                 tab.limit, "limits.averaged-space")
    checks.append(("averaged-space-exact", averaged_space_exact))
    return checks


# ----------------------------------------------------------------------
# majorant

def _majorant_suite(seed: int, tol: float | None):
    checks = []
    for rep in majorant_identity_checks(3):
        checks.append((rep.name, lambda rep=rep: rep))

    def constant_slice_sup():
        rows, sup = majorant_slice_space(lambda x: 1.0, 3, [0.5, 1.0, 2.0],
                                         DecayHint(1.0, 0.0))
        targets = [core.omega_n(3) / (2.0 * (xn + 1.0)) for xn, _ in rows]
        worst = max(abs(v - t) for (_, v), t in zip(rows, targets))
        at_one = [v for xn, v in rows if xn == 1.0][0]
        ok = worst <= (tol or 1e-4) and abs(at_one - math.pi) <= (tol or 1e-4)
        return _report_from_bool("constant-slice-sup", ok, at_one, math.pi,
                                 "majorant.constant-slice", sup=sup)
    checks.append(("constant-slice-sup", constant_slice_sup))

    def single_atom_criterion():
        # Poisson field of one boundary atom: the slice sup is controlled by
        # (c=0) the weighted mass 2 * mass / (1+|t0|^2)^{n/2}
        t0 = np.array([1.0, 0.5])
        mass = 0.8
        def G(x):
            return mass * core.poisson_space(3, x, t0)
        rows, sup = majorant_slice_space(G, 3, [0.25, 0.5, 1.0, 2.0],
                                         DecayHint(mass * 16.0 / core.omega_n(3), 3.0, 4.0))
        bound = 2.0 * mass / (1.0 + float(t0 @ t0)) ** 1.5
        return bounded("single-atom-criterion", sup, bound, slack=1e-6,
                       anchor="majorant.single-atom", sup=sup, bound=bound)
    checks.append(("single-atom-criterion", single_atom_criterion))
    return checks


# ----------------------------------------------------------------------
# mobius

def _mobius_suite(seed: int, tol: float | None):
    checks = []

    def jacobian_fd():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(20):
            x = np.append(rng.uniform(-2, 2, size=2), rng.uniform(0.05, 3.0))
            worst = max(worst, abs(mobius_jacobian_fd(3, x) - mobius_jacobian(3, x)))
        return _report_from_bool("jacobian-fd", worst <= (tol or 1e-5), worst, 0.0,
                                 "mobius.jacobian")
    checks.append(("jacobian-fd", jacobian_fd))

    def image_inside():
        rng = np.random.default_rng(seed + 1)
        worst = 0.0
        neg = True
        for _ in range(500):
            x = np.append(rng.uniform(-4, 4, size=2), rng.uniform(1e-3, 5.0))
            worst = max(worst, float(np.linalg.norm(mobius_to_ball(3, x))))
            neg = neg and mobius_jacobian(3, x) < 0
        return _report_from_bool("image-inside-ball", worst < 1.0 and neg, worst, 1.0,
                                 "mobius.image")
    checks.append(("image-inside-ball", image_inside))

    def image_spots():
        a = mobius_to_ball(3, np.array([0.0, 0.0, 1.0]))
        b = mobius_to_ball(3, np.zeros(3))
        ja = mobius_jacobian(3, np.array([0.0, 0.0, 1.0]))
        ok = (np.linalg.norm(a) <= 1e-15 and abs(b[-1] - 1.0) <= 1e-15
              and abs(ja + 2.0 ** -3) <= 1e-15)
        return _report_from_bool("image-spots", ok, float(np.linalg.norm(a)), 0.0,
                                 "mobius.spots")
    checks.append(("image-spots", image_spots))

    def determinant():
        rng = np.random.default_rng(seed + 2)
        worst = 0.0
        for n in (3, 4, 5):
            for _ in range(20):
                x = rng.uniform(-3, 3, size=n)
                rep = determinant_dn_check(x)
                worst = max(worst, rep.rel_err)
        spot = determinant_dn_check(np.array([1.0, 2.0, 2.0]))
        ok = worst <= (tol or 1e-9) and abs(spot.lhs + 729.0) <= 1e-9
        return _report_from_bool("determinant-identity", ok, worst, 0.0,
                                 "mobius.determinant")
    checks.append(("determinant-identity", determinant))
    return checks


SUITES = {
    "kernels": _kernels_suite,
    "gegenbauer": _gegenbauer_suite,
    "carleman": _carleman_suite,
    "nevanlinna": _nevanlinna_suite,
    "limits": _limits_suite,
    "majorant": _majorant_suite,
    "mobius": _mobius_suite,
}


def build_suite(name: str, seed: int, tol: float | None):
    """Checks of one suite, or of every suite for name == "all"."""
    if name == "all":
        out = []
        for suite_name in SUITES:
            for check_name, thunk in SUITES[suite_name](seed, tol):
                out.append((f"{suite_name}.{check_name}", thunk))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed, tol)
