"""Numerical verification of the integral identities.

Carleman half-annulus identities (plane and space), Nevanlinna
reconstructions on the half-ball and the right half-disk, radial limit
tables for kernel-represented harmonic functions, the ball Moebius map with
its closed-form Jacobian, and the weighted boundary-slice integrals of the
harmonic-majorant criterion.

Sign conventions: all normal derivatives point into the integration domain
(radially outward on an inner sphere), validated against the closed-form
linear test functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import core
from .dirichlet import BoundaryFunction, DiscreteMeasure
from .errors import DomainError, PreconditionError, UsageError
from .quadrature import (DecayHint, QuadratureSpec, integrate_boundary_polar,
                         integrate_hemisphere, integrate_interval, integrate_line)
from .quadrature import _angular_integral
from .report import VerificationReport, compare


# ----------------------------------------------------------------------
# Carleman identities

@dataclass
class CarlemanReport:
    """Both sides of one Carleman identity evaluation.

    ``residual`` is |LHS - (c1 + c2/R^n)|; ``slack`` is the signed
    difference LHS - (c1 + c2/R^n), nonnegative (up to tolerance) for
    subharmonic data.
    """

    lhs_sphere_term: float
    lhs_boundary_term: float
    c1: float
    c2: float
    residual: float
    slack: float
    radius: float


def _radial_derivative(u, point, r, du_dr, space: bool):
    if du_dr is not None:
        return du_dr(point)
    h = 1e-4 * r
    if space:
        unit = point / np.linalg.norm(point)
        return (u(point + h * unit) - u(point - h * unit)) / (2.0 * h)
    unit = point / abs(point)
    return (u(point + h * unit) - u(point - h * unit)) / (2.0 * h)


def carleman_halfplane(u, R: float, spec: QuadratureSpec | None = None,
                       du_dr=None) -> CarlemanReport:
    """Half-plane Carleman identity over the half-annulus 1 < |z| < R.

    LHS: (1/(pi R)) int_0^pi u(R e^{i t}) sin t dt plus
    (1/(2 pi)) int_{1<|x|<R} u(x) (x^{-2} - R^{-2}) dx; RHS constants are
    determined on the unit half-circle with the radial derivative taken
    outward (into the annulus).
    """
    if R <= 1.0:
        raise UsageError("outer radius must exceed the inner radius 1")
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10)

    def on_circle(radius):
        def f(theta):
            return u(radius * complex(math.cos(theta), math.sin(theta))) * math.sin(theta)
        return integrate_interval(f, 0.0, math.pi, spec).value

    sphere_term = on_circle(R) / (math.pi * R)

    def flat(x):
        return (u(complex(x, 0.0)) + u(complex(-x, 0.0))) * (1.0 / (x * x) - 1.0 / (R * R))
    flat_term = integrate_interval(flat, 1.0, R, spec).value / (2.0 * math.pi)

    def ring(theta, sign):
        z = complex(math.cos(theta), math.sin(theta))
        du = _radial_derivative(u, z, 1.0, du_dr, space=False)
        return (u(z) + sign * du) * math.sin(theta)

    c1 = integrate_interval(lambda t: ring(t, +1.0), 0.0, math.pi, spec).value / (2.0 * math.pi)
    c2 = integrate_interval(lambda t: ring(t, -1.0), 0.0, math.pi, spec).value / (2.0 * math.pi)
    lhs = sphere_term + flat_term
    rhs = c1 + c2 / (R * R)
    return CarlemanReport(sphere_term, flat_term, c1, c2, abs(lhs - rhs), lhs - rhs, R)


def _annulus_flat_integral(g, n, r_lo, r_hi, spec):
    """int over {r_lo < |x'| < r_hi} in R^(n-1) of g(x') dx'."""
    dim = n - 1

    def radial(r):
        def on_sphere(unit):
            return g(r * unit)
        return r ** (dim - 1) * _angular_integral(on_sphere, dim, spec.child(0.05))
    return integrate_interval(radial, r_lo, r_hi, spec).value


def carleman_halfspace(n: int, u, r: float, R: float,
                       spec: QuadratureSpec | None = None,
                       du_dr=None) -> CarlemanReport:
    """Half-space Carleman identity over the half-annulus r < |x| < R.

    Equality holds for harmonic u; subharmonic u gives LHS >= c1 + c2/R^n
    (``slack`` >= 0).  The inner-sphere constants use the general-radius
    weights ((n-1) x_n / r^{n+1}) and (x_n / r^n).
    """
    if not 0 < r < R:
        raise UsageError("need 0 < r < R")
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)

    sphere_term = integrate_hemisphere(
        lambda x: u(x) * n * x[-1] / R ** (n + 1), n, R, spec).value

    def flat(xp):
        x = np.append(xp, 0.0)
        return u(x) * (1.0 / np.linalg.norm(xp) ** n - 1.0 / R ** n)
    flat_term = _annulus_flat_integral(flat, n, r, R, spec)

    def ring(sign):
        def f(x):
            du = _radial_derivative(u, x, r, du_dr, space=True)
            if sign > 0:
                return ((n - 1) * x[-1] / r ** (n + 1)) * u(x) + (x[-1] / r ** n) * du
            return (x[-1] / r) * u(x) - x[-1] * du
        return integrate_hemisphere(f, n, r, spec).value

    c1 = ring(+1)
    c2 = ring(-1)
    lhs = sphere_term + flat_term
    rhs = c1 + c2 / R ** n
    return CarlemanReport(sphere_term, flat_term, c1, c2, abs(lhs - rhs), lhs - rhs, R)


# ----------------------------------------------------------------------
# Nevanlinna reconstructions

def nevanlinna_halfball(n: int, u_sphere, u_flat, R: float, x,
                        spec: QuadratureSpec | None = None) -> float:
    """Reconstruct a harmonic function at x from its half-ball boundary data.

    ``u_sphere`` is evaluated on the hemisphere |y| = R, ``u_flat`` on the
    flat disk |y'| < R of the boundary hyperplane.  The reflected pole sits
    at R^2 x / |x|^2, so x = 0 is rejected.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    ax = float(np.linalg.norm(x))
    if not x[-1] > 0:
        raise DomainError("evaluation point must be interior (x_n > 0)")
    if ax >= R:
        raise DomainError("evaluation point must lie inside the half-ball")
    if ax == 0.0:
        raise DomainError("the reflected pole is undefined at the origin")
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)
    om = core.omega_n(n)
    xstar = x.copy()
    xstar[-1] = -xstar[-1]
    xtilde = R * R * x / (ax * ax)

    def sphere_kernel(y):
        return ((R * R - ax * ax) / (om * R)
                * (1.0 / np.linalg.norm(y - x) ** n
                   - 1.0 / np.linalg.norm(y - xstar) ** n) * u_sphere(y))
    sphere_term = integrate_hemisphere(sphere_kernel, n, R, spec).value

    dim = n - 1

    def flat_radial(r):
        def on_sphere(unit):
            yp = r * unit
            y = np.append(yp, 0.0)
            return ((1.0 / np.linalg.norm(y - x) ** n
                     - (R ** n / ax ** n) / np.linalg.norm(y - xtilde) ** n)
                    * u_flat(yp))
        return r ** (dim - 1) * _angular_integral(on_sphere, dim, spec.child(0.05))
    flat_term = (2.0 * x[-1] / om) * integrate_interval(flat_radial, 0.0, R, spec).value
    return sphere_term + flat_term


@dataclass
class ZeroList:
    """Zeros (and optional poles) of an analytic function on the right half-disk."""

    zeros: list = field(default_factory=list)
    poles: list = field(default_factory=list)

    def validate_interior(self, R: float, margin: float = 1e-9) -> None:
        for group, name in ((self.zeros, "zero"), (self.poles, "pole")):
            for lam in group:
                lam = complex(lam)
                if lam.real <= 0:
                    raise PreconditionError(f"{name} {lam} not in the open right half-plane")
                if abs(lam) >= R * (1.0 - margin):
                    raise PreconditionError(f"{name} {lam} not strictly inside radius {R}")


def _blaschke_halfdisk(z: complex, lam: complex, R: float) -> float:
    return math.log(abs((z - lam) / (R * R - lam.conjugate() * z)
                        * (R * R + lam * z) / (z + lam.conjugate())))


def nevanlinna_halfdisk(F, zero_list: ZeroList, R: float, z: complex,
                        spec: QuadratureSpec | None = None,
                        eps: float = 0.0) -> VerificationReport:
    """Verify the right-half-disk representation of log|F(z)|.

    log|F_eps(z)| must equal the half-circle term plus the imaginary-axis
    segment term plus the zero sum (poles with negative sign), where
    F_eps(w) = F(w + eps); eps = 0 is allowed when F has no boundary zeros.
    """
    z = complex(z)
    if z.real <= 0 or abs(z) >= R:
        raise DomainError("evaluation point must lie in the open right half-disk")
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)
    zero_list.validate_interior(R)

    def feps(w):
        return F(w + eps)

    az2 = abs(z) ** 2

    def arc(theta):
        w = R * complex(math.cos(theta), math.sin(theta))
        k = ((R * R - az2) / abs(w - z) ** 2
             - (R * R - az2) / abs(w.conjugate() + z) ** 2)
        return k * math.log(abs(feps(w)))
    arc_term = integrate_interval(arc, -math.pi / 2.0, math.pi / 2.0,
                                  spec).value / (2.0 * math.pi)

    def seg(t):
        w = complex(0.0, t)
        k = z.real / abs(w - z) ** 2 - R * R * z.real / abs(R * R + w * z) ** 2
        return k * math.log(abs(feps(w)))
    seg_term = integrate_interval(seg, -R, R, spec).value / math.pi

    zsum = sum(_blaschke_halfdisk(z, complex(lam) - eps, R) for lam in zero_list.zeros)
    zsum -= sum(_blaschke_halfdisk(z, complex(lam) - eps, R) for lam in zero_list.poles)

    lhs = math.log(abs(feps(z)))
    rhs = arc_term + seg_term + zsum
    return compare("halfdisk-representation", lhs, rhs,
                   tol=max(spec.abs_tol * 100.0, 1e-6),
                   anchor="nevanlinna.halfdisk",
                   arc_term=arc_term, segment_term=seg_term, zero_sum=zsum)


def zero_sum_diagnostic(zero_list: ZeroList, rho: float) -> float:
    """Finite partial sum of Re(lambda) / (1 + |lambda|^(rho+1)) over the zeros."""
    if rho <= 1.0:
        raise DomainError("the diagnostic weight requires rho > 1")
    return float(sum(complex(lam).real / (1.0 + abs(complex(lam)) ** (rho + 1.0))
                     for lam in zero_list.zeros))


# ----------------------------------------------------------------------
# Radial limits

@dataclass(frozen=True)
class PolynomialSpec:
    """Real-coefficient polynomial sum a_k z^k defining the smooth part."""

    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise DomainError("need at least the constant coefficient")
        if len(self.coefficients) > 17:
            raise DomainError("polynomial order capped at 16")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z: complex) -> complex:
        acc = complex(0.0)
        for a in reversed(self.coefficients):
            acc = acc * z + a
        return acc


@dataclass
class LimitTable:
    rows: list            # (R, value) pairs, R ascending
    limit: float

    def errors(self):
        return [(R, abs(v - self.limit)) for R, v in self.rows]

    def fitted_rate(self) -> float:
        """Convergence exponent from the first and last rows."""
        (r1, e1), (r2, e2) = self.errors()[0], self.errors()[-1]
        if e1 == 0.0 or e2 == 0.0:
            return math.inf
        return math.log(e1 / e2) / math.log(r2 / r1)


def _plane_field(poly: PolynomialSpec, mu: DiscreteMeasure):
    p = poly.order

    def H(z: complex) -> float:
        acc = poly(z).imag
        for t, mass in mu.atoms:
            acc += mass * core.cauchy_mod_plane(p, z.real, z.imag, float(t)).imag
        return acc
    return H, p


def _plane_limit_constant(poly: PolynomialSpec, mu: DiscreteMeasure) -> float:
    p = poly.order
    corr = sum(mass / float(t) ** (p + 1) for t, mass in mu.atoms if abs(t) > 1.0)
    return poly.coefficients[p] - corr / math.pi


def radial_limit_plane(poly: PolynomialSpec, mu: DiscreteMeasure, theta: float,
                       R_values) -> LimitTable:
    """Table of R^{-p} H(R e^{i theta}) against the closed-form limit.

    H combines the polynomial imaginary part with the order-p modified
    Cauchy kernel of the boundary measure; the limit is
    (a_p - (1/pi) sum_{|t|>1} mass/t^{p+1}) sin(p theta).
    """
    if not 0.0 < theta < math.pi:
        raise DomainError("theta must lie in (0, pi)")
    H, p = _plane_field(poly, mu)
    rows = []
    for R in sorted(R_values):
        z = R * complex(math.cos(theta), math.sin(theta))
        rows.append((R, H(z) / R ** p))
    limit = _plane_limit_constant(poly, mu) * math.sin(p * theta)
    return LimitTable(rows, limit)


def averaged_limit_plane(poly: PolynomialSpec, mu: DiscreteMeasure,
                         R_values, spec: QuadratureSpec | None = None) -> LimitTable:
    """Table of (2/(pi R^p)) int_0^pi H(R e^{i t}) sin(p t) dt against its limit."""
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)
    H, p = _plane_field(poly, mu)
    rows = []
    for R in sorted(R_values):
        def f(t):
            return H(R * complex(math.cos(t), math.sin(t))) * math.sin(p * t)
        val = integrate_interval(f, 0.0, math.pi, spec).value * 2.0 / (math.pi * R ** p)
        rows.append((R, val))
    return LimitTable(rows, _plane_limit_constant(poly, mu))


def _angles_point(n: int, R: float, angles) -> np.ndarray:
    x = np.empty(n)
    sprod = 1.0
    for j in range(n - 1):
        x[j] = R * sprod * math.cos(angles[j])
        sprod *= math.sin(angles[j])
    x[n - 1] = R * sprod
    return x


def radial_limit_space(n: int, c: float, mu: DiscreteMeasure, angles,
                       R_values) -> LimitTable:
    """Table of H(x)/R along the fixed-angle ray against c * prod sin(theta_j).

    H(x) = c x_n + sum of Poisson kernel values against the boundary atoms.
    """
    angles = tuple(float(a) for a in angles)
    if len(angles) != n - 1:
        raise DomainError(f"need {n - 1} angles for dimension {n}")
    if not all(0.0 < a < math.pi for a in angles):
        raise DomainError("all angles must lie in (0, pi)")

    def H(x):
        acc = c * x[-1]
        for yp, mass in mu.atoms:
            acc += mass * core.poisson_space(n, x, np.asarray(yp, dtype=np.float64))
        return acc

    rows = []
    for R in sorted(R_values):
        x = _angles_point(n, R, angles)
        rows.append((R, H(x) / R))
    eta = math.prod(math.sin(a) for a in angles)
    return LimitTable(rows, c * eta)


def averaged_limit_space(n: int, c: float, mu: DiscreteMeasure, R_values,
                         spec: QuadratureSpec | None = None) -> LimitTable:
    """Angle-box average of H(x) eta^{n-1} / R against 2^{n-1} I_n^{n-1} c.

    The average is the plain d(theta) integral over (0, pi)^{n-1} of
    H(x(theta)) * (prod sin theta_j)^{n-1}, no surface weight.
    """
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)

    def H(x):
        acc = c * x[-1]
        for yp, mass in mu.atoms:
            acc += mass * core.poisson_space(n, x, np.asarray(yp, dtype=np.float64))
        return acc

    def nested(R, prefix, spec_level):
        j = len(prefix)

        def integrand(theta):
            if j == n - 2:
                x = _angles_point(n, R, prefix + (theta,))
                eta = x[-1] / R
                return H(x) * eta ** (n - 1)
            return nested(R, prefix + (theta,), spec_level.child(0.25))
        return integrate_interval(integrand, 0.0, math.pi, spec_level).value

    rows = []
    for R in sorted(R_values):
        rows.append((R, nested(R, (), spec) / R))
    from .special import wallis
    limit = 2.0 ** (n - 1) * wallis(n) ** (n - 1) * c
    return LimitTable(rows, limit)


# ----------------------------------------------------------------------
# Moebius map to the unit ball and determinant identity

def mobius_to_ball(n: int, x) -> np.ndarray:
    """Image of the half-space point x in the unit ball.

    (2x', 1 - |x'|^2 - x_n^2) / (|x'|^2 + (x_n+1)^2); the boundary origin
    maps to the ball's north pole and the pole of the map is (0', -1).
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise DomainError(f"point must have {n} coordinates")
    denom = float(np.dot(x[:-1], x[:-1]) + (x[-1] + 1.0) ** 2)
    if denom <= 1e-24:
        raise DomainError("Moebius map evaluated at its pole (0', -1)")
    out = np.empty(n)
    out[:-1] = 2.0 * x[:-1] / denom
    out[-1] = (1.0 - float(np.dot(x, x))) / denom
    return out


def mobius_jacobian(n: int, x) -> float:
    """Closed-form Jacobian determinant -2^n / (|x'|^2 + (x_n+1)^2)^n."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise DomainError(f"point must have {n} coordinates")
    denom = float(np.dot(x[:-1], x[:-1]) + (x[-1] + 1.0) ** 2)
    if denom <= 1e-24:
        raise DomainError("Moebius map evaluated at its pole (0', -1)")
    return -(2.0 ** n) / denom ** n


def mobius_jacobian_fd(n: int, x, h: float = 1e-6) -> float:
    """Finite-difference Jacobian determinant of the ball map (oracle)."""
    x = np.asarray(x, dtype=np.float64)
    J = np.empty((n, n))
    for j in range(n):
        step = np.zeros(n)
        step[j] = h
        J[:, j] = (mobius_to_ball(n, x + step) - mobius_to_ball(n, x - step)) / (2.0 * h)
    return float(np.linalg.det(J))


def determinant_dn_check(x) -> VerificationReport:
    """Check det(|x|^2 I - 2 x x^T) against -|x|^(2n)."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    ax2 = float(np.dot(x, x))
    if ax2 == 0.0:
        raise DomainError("determinant identity needs x != 0")
    mat = ax2 * np.eye(n) - 2.0 * np.outer(x, x)
    det = float(np.linalg.det(mat))
    return compare("determinant-reflection", det, -ax2 ** n, tol=1e-9, rel=True,
                   anchor="mobius.determinant", n=n)


# ----------------------------------------------------------------------
# Harmonic-majorant criterion integrals

def majorant_slice_space(G, n: int, xn_values, decay: DecayHint,
                         spec: QuadratureSpec | None = None):
    """Weighted boundary-slice integrals of G per height x_n, and their sup.

    Each slice is int over R^{n-1} of G((x', x_n)) / (|x'|^2+(x_n+1)^2)^{n/2};
    the returned pair is (rows, sup) with rows of (x_n, value).
    """
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-6, rel_tol=1e-6)
    rows = []
    for xn in xn_values:
        if xn <= 0:
            raise DomainError("slice heights must be positive")

        def f(xp):
            x = np.append(xp, xn)
            w = (float(np.dot(xp, xp)) + (xn + 1.0) ** 2) ** (n / 2.0)
            return G(x) / w
        hint = DecayHint(decay.coefficient, decay.power + n, decay.radius)
        rows.append((xn, integrate_boundary_polar(f, n, spec, hint).value))
    return rows, max(v for _, v in rows)


def majorant_slice_plane(G, p: int, y_values, decay: DecayHint,
                         spec: QuadratureSpec | None = None):
    """Plane analog: int of G(x+iy) / (x^2+(y+1)^2)^((p+1)/2) dx per height y."""
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)
    rows = []
    for y in y_values:
        if y <= 0:
            raise DomainError("slice heights must be positive")

        def f(x):
            w = (x * x + (y + 1.0) ** 2) ** ((p + 1) / 2.0)
            return G(complex(x, y)) / w
        hint = DecayHint(decay.coefficient, decay.power + p + 1, decay.radius)
        rows.append((y, integrate_line(f, spec, hint).value))
    return rows, max(v for _, v in rows)


def majorant_identity_checks(n: int = 3,
                             spec: QuadratureSpec | None = None) -> list[VerificationReport]:
    """Verify the explicit reproducing identities behind the majorant criterion.

    Covers: the Poisson normalization of the slice weight, the reproduction
    of the shifted-pole harmonic kernel, its once-iterated form, the
    closed-form constant slice, and the plane product-convolution identity.
    """
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-6, rel_tol=1e-7)
    reports = []
    om = core.omega_n(n)

    # slice of the constant function: omega_n / (2 (x_n + 1))
    xn = 1.0

    def const_slice(xp):
        return 1.0 / (float(np.dot(xp, xp)) + (xn + 1.0) ** 2) ** (n / 2.0)
    val = integrate_boundary_polar(const_slice, n, spec, DecayHint(1.0, float(n))).value
    reports.append(compare("majorant-constant-slice", val, om / (2.0 * (xn + 1.0)),
                           tol=1e-4, anchor="majorant.constant-slice", n=n, xn=xn))

    # reproduction of the shifted-pole kernel at x = (0,...,0,1), a = x_n + 1
    x = np.zeros(n)
    x[-1] = 1.0
    a = x[-1] + 1.0

    def shifted(yp):
        k = core.poisson_space(n, x, yp)
        return k * a / (float(np.dot(yp, yp)) + a * a) ** (n / 2.0)
    val = integrate_boundary_polar(shifted, n, spec, DecayHint(2.0 ** (n + 1) / om * a, 2.0 * n - 1.0, 2.0)).value
    target = (x[-1] + a) / (0.0 + (x[-1] + a) ** 2) ** (n / 2.0)
    reports.append(compare("majorant-shifted-pole", val, target, tol=1e-4,
                           anchor="majorant.shifted-pole", n=n, a=a))

    # once-iterated identity: weight the kernel by the standard slice weight
    xn = 0.7

    def iterated(xp):
        x_here = np.append(xp, xn)
        w = (float(np.dot(xp, xp)) + (xn + 1.0) ** 2) ** (n / 2.0)
        yp_target = np.zeros(n - 1)
        yp_target[0] = 0.4
        return core.poisson_space(n, x_here, yp_target) * (xn + 1.0) / w
    val = integrate_boundary_polar(iterated, n, spec, DecayHint(4.0, 2.0 * n, 2.0)).value
    ypt = np.zeros(n - 1)
    ypt[0] = 0.4
    target = (2.0 * xn + 1.0) / (float(np.dot(ypt, ypt)) + (2.0 * xn + 1.0) ** 2) ** (n / 2.0)
    reports.append(compare("majorant-iterated-pole", val, target, tol=1e-4,
                           anchor="majorant.iterated-pole", n=n, xn=xn))

    # plane product-convolution: P(., y) against the height-(y+1) slice weight
    y, t = 0.8, 1.3

    def plane_prod(s):
        return (y / math.pi / ((t - s) ** 2 + y * y)
                * (y + 1.0) / (s * s + (y + 1.0) ** 2))
    val = integrate_line(plane_prod, spec, DecayHint(2.0, 3.0, max(4.0 * t, 4.0))).value
    target = (2.0 * y + 1.0) / (t * t + (2.0 * y + 1.0) ** 2)
    reports.append(compare("majorant-plane-product", val, target, tol=1e-7,
                           anchor="majorant.plane-product", y=y, t=t))
    return reports
