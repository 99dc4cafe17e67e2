"""Harmonic and subharmonic functions assembled from boundary data and measures.

Poisson integrals (classical, modified, variable-order) are evaluated by the
adaptive quadrature engine with truncation radii derived from the proved
far-field kernel bounds; Green potentials of finite atomic measures are exact
finite sums.  ``laplacian_fd`` is the shared five/seven-point harmonicity
probe used across the verification suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._backend import core
from .errors import DomainError, PreconditionError, SingularityError, ToleranceNotMet
from .quadrature import (DecayHint, QuadratureSpec, integrate_boundary_polar,
                         integrate_interval, integrate_line)


@dataclass
class BoundaryFunction:
    """Boundary data with a certified growth envelope.

    ``evaluator`` must be total on the boundary (R for the plane, R^{n-1}
    for the space); the envelope promises |f| <= coefficient * |t|^growth
    for |t| >= radius and is what the integrators use to truncate.
    """

    evaluator: Callable
    growth: float = 0.0
    coefficient: float = 1.0
    radius: float = 1.0
    label: str = ""
    breakpoints: tuple = ()

    def __call__(self, t):
        return self.evaluator(t)


@dataclass
class DiscreteMeasure:
    """Finite atomic measure: a list of (location, mass >= 0) pairs.

    Locations may be complex numbers (half-plane interior), floats (real
    boundary) or arrays (half-space interior/boundary); one measure keeps a
    single location kind.
    """

    atoms: list = field(default_factory=list)

    def __post_init__(self):
        for loc, mass in self.atoms:
            if mass < 0:
                raise DomainError(f"atom at {loc} has negative mass {mass}")

    def __len__(self):
        return len(self.atoms)

    def total_mass(self) -> float:
        return float(sum(m for _, m in self.atoms))

    def scaled(self, s: float) -> "DiscreteMeasure":
        if s < 0:
            raise DomainError("scale factor must be nonnegative")
        return DiscreteMeasure([(loc, m * s) for loc, m in self.atoms])


@dataclass(frozen=True)
class VariableOrderSpec:
    """Nondecreasing order profile rho(R) >= 1 plus the shift alpha > 0.

    The kernel order used at boundary radius R is floor(rho(R) + alpha).
    """

    rho: Callable[[float], float]
    alpha: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")

    def order_at(self, radius: float) -> int:
        rho = self.rho(radius)
        if rho < 1.0:
            raise DomainError(f"rho({radius}) = {rho} violates rho >= 1")
        return int(math.floor(rho + self.alpha))


# ----------------------------------------------------------------------
# Poisson integrals

def _plane_hint(f: BoundaryFunction, z: complex, m: int | None) -> DecayHint:
    """Far-field envelope of |P_m(z, t) f(t)| from the proved kernel bounds."""
    az = abs(z)
    if m is None:
        coef_k = 4.0 * z.imag / math.pi
        power_k = 2.0
        radius = max(2.0 * az, f.radius, 1.0)
    else:
        coef_k = 2.0 ** (m + 1) * z.imag * az ** m / math.pi
        power_k = m + 2.0
        radius = max(4.0 * az, f.radius, 1.0)
    power = power_k - f.growth
    if power <= 1.0:
        raise PreconditionError(
            f"boundary growth {f.growth} too strong for kernel decay {power_k}")
    coef = coef_k * f.coefficient
    return DecayHint(coef, power, radius)


def poisson_integral_plane(f: BoundaryFunction, z: complex,
                           spec: QuadratureSpec = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)) -> float:
    """The half-plane Poisson integral of f at z."""
    z = complex(z)
    if not z.imag > 0:
        raise DomainError("evaluation point must be interior (Im z > 0)")
    hint = _plane_hint(f, z, None)
    return integrate_line(lambda t: core.poisson_plane(z.real, z.imag, t) * f(t),
                          spec, hint, breakpoints=f.breakpoints).value


def poisson_integral_plane_mod(m: int, f: BoundaryFunction, z: complex,
                               spec: QuadratureSpec = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8)) -> float:
    """The order-m modified Poisson integral of f at z."""
    z = complex(z)
    if not z.imag > 0:
        raise DomainError("evaluation point must be interior (Im z > 0)")
    hint = _plane_hint(f, z, m)
    cuts = tuple(sorted(set(f.breakpoints) | {-1.0, 1.0}))
    return integrate_line(lambda t: core.poisson_mod_plane(m, z.real, z.imag, t) * f(t),
                          spec, hint, breakpoints=cuts).value


def _space_hint(f: BoundaryFunction, n: int, x: np.ndarray, m: int | None) -> DecayHint:
    ax = float(np.linalg.norm(x))
    xn = float(x[-1])
    if m is None:
        coef_k = 2.0 ** (n + 1) * xn / core.omega_n(n)
        power_k = float(n)
        radius = max(2.0 * ax, f.radius, 1.0)
    else:
        coef_k = 2.0 ** (m + n + 1) * xn * ax ** m / core.omega_n(n)
        power_k = float(n + m)
        radius = max(2.0 * ax, f.radius, 1.0)
    power = power_k - f.growth
    if power <= n - 1.0:
        raise PreconditionError(
            f"boundary growth {f.growth} too strong for kernel decay {power_k}")
    return DecayHint(coef_k * f.coefficient, power, radius)


def poisson_integral_space(n: int, f: BoundaryFunction, x,
                           spec: QuadratureSpec = QuadratureSpec(abs_tol=1e-5, rel_tol=1e-6)) -> float:
    """The half-space Poisson integral of f at x."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if not x[-1] > 0:
        raise DomainError("evaluation point must be interior (x_n > 0)")
    hint = _space_hint(f, n, x, None)
    return integrate_boundary_polar(lambda yp: core.poisson_space(n, x, yp) * f(yp),
                                    n, spec, hint,
                                    radial_breakpoints=f.breakpoints).value


def poisson_integral_space_mod(n: int, m: int, f: BoundaryFunction, x,
                               spec: QuadratureSpec = QuadratureSpec(abs_tol=1e-5, rel_tol=1e-6)) -> float:
    """The order-m modified half-space Poisson integral of f at x."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if not x[-1] > 0:
        raise DomainError("evaluation point must be interior (x_n > 0)")
    hint = _space_hint(f, n, x, m)
    cuts = tuple(sorted(set(f.breakpoints) | {1.0}))
    return integrate_boundary_polar(lambda yp: core.poisson_mod_space(n, m, x, yp) * f(yp),
                                    n, spec, hint, radial_breakpoints=cuts).value


# ----------------------------------------------------------------------
# Green potentials of finite atomic measures

def green_potential(measure: DiscreteMeasure, m: int, point) -> float:
    """Sum of order-m modified Green kernel values against the atom masses.

    Plane when ``point`` is complex (atoms complex or real), space when it
    is an array (atoms arrays of the same length).  Exact finite sum; atoms
    on the boundary contribute exactly zero.
    """
    if isinstance(point, (complex, float, int)):
        z = complex(point)
        if not z.imag > 0:
            raise DomainError("evaluation point must be interior (Im z > 0)")
        total = 0.0
        for loc, mass in measure.atoms:
            w = complex(loc)
            if w.imag < 0:
                raise DomainError(f"atom {loc} lies below the boundary")
            if abs(z - w) <= 1e-12:
                raise SingularityError(f"evaluation point collides with atom {loc}")
            if w.imag == 0.0:
                continue
            total += mass * core.green_mod_plane(m, z.real, z.imag, w.real, w.imag)
        return total
    x = np.ascontiguousarray(point, dtype=np.float64)
    n = x.shape[0]
    if not x[-1] > 0:
        raise DomainError("evaluation point must be interior (x_n > 0)")
    total = 0.0
    for loc, mass in measure.atoms:
        y = np.ascontiguousarray(loc, dtype=np.float64)
        if y[-1] < 0:
            raise DomainError(f"atom {loc} lies below the boundary")
        if float(np.linalg.norm(x - y)) <= 1e-12:
            raise SingularityError(f"evaluation point collides with atom {loc}")
        if y[-1] == 0.0:
            continue
        total += mass * core.green_mod_space(n, m, x, y)
    return total


# ----------------------------------------------------------------------
# Variable-order Poisson integral

def variable_order_integral(vspec: VariableOrderSpec, u_boundary: BoundaryFunction,
                            point: complex,
                            qspec: QuadratureSpec = QuadratureSpec(abs_tol=1e-7, rel_tol=1e-7),
                            max_doublings: int = 14) -> float:
    """Plane Poisson integral with per-annulus kernel order floor(rho(|t|)+alpha).

    The order is piecewise constant; the line is split at the radii where it
    jumps, and the truncation radius is doubled until the increment falls
    under the tolerance (the integral is absolutely convergent for data in
    the matching weighted class).
    """
    z = complex(point)
    if not z.imag > 0:
        raise DomainError("evaluation point must be interior (Im z > 0)")

    def integrand(t):
        return core.poisson_mod_plane(vspec.order_at(abs(t)), z.real, z.imag, t) * u_boundary(t)

    def jump_radii(lo, hi):
        radii = []
        k_lo = vspec.order_at(lo)
        k_hi = vspec.order_at(hi)
        for k in range(k_lo + 1, k_hi + 1):
            a, b = lo, hi
            for _ in range(60):          # bisect the monotone order profile
                mid = 0.5 * (a + b)
                if vspec.order_at(mid) >= k:
                    b = mid
                else:
                    a = mid
            radii.append(b)
        return radii

    t0 = max(8.0, 2.0 * abs(z), u_boundary.radius)
    splits = [r for r in jump_radii(0.0, t0)]
    cuts = sorted({-r for r in splits} | {r for r in splits} | {-t0, t0})
    total = 0.0
    lo = cuts[0]
    for hi in cuts[1:]:
        total += integrate_interval(integrand, lo, hi, qspec).value
        lo = hi
    t_prev = t0
    for _ in range(max_doublings):
        t_next = 2.0 * t_prev
        inc = 0.0
        seg_cuts = [t_prev] + jump_radii(t_prev, t_next) + [t_next]
        for a, b in zip(seg_cuts[:-1], seg_cuts[1:]):
            if b - a <= 0:
                continue
            inc += integrate_interval(integrand, a, b, qspec).value
            inc += integrate_interval(lambda t: integrand(-t), a, b, qspec).value
        total += inc
        t_prev = t_next
        if abs(inc) < qspec.abs_tol / 4.0:
            return total
    raise ToleranceNotMet(
        f"variable-order integral increments still {abs(inc):.3g} after "
        f"{max_doublings} truncation doublings", best=total)


# ----------------------------------------------------------------------
# Harmonicity probe

def laplacian_fd(u: Callable, point, h: float) -> float:
    """Central second-difference Laplacian with step h along every axis.

    Plane points are complex (four-point stencil), space points arrays.
    Raises when the stencil would leave the open half-space.
    """
    if h <= 0:
        raise DomainError("step size must be positive")
    if isinstance(point, (complex, float, int)):
        z = complex(point)
        if z.imag - h <= 0:
            raise DomainError("stencil leaves the upper half-plane")
        return (u(z + h) + u(z - h) + u(z + 1j * h) + u(z - 1j * h) - 4.0 * u(z)) / (h * h)
    x = np.asarray(point, dtype=np.float64)
    if x[-1] - h <= 0:
        raise DomainError("stencil leaves the upper half-space")
    acc = -2.0 * len(x) * u(x)
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        acc += u(x + step) + u(x - step)
    return acc / (h * h)
