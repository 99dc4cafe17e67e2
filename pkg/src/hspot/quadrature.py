"""Adaptive quadrature for lines, boundary hyperplanes, hemispheres and intervals.

The engine is depth-limited adaptive Simpson with Richardson correction.
Unbounded domains are truncated at a radius derived from a caller-supplied
decay hint, and the discarded tail is bounded explicitly and reported in
``IntegrationResult.truncated_tail_bound``; the hints in practice come from
the proved far-field kernel estimates, which ties the truncation error to
the theory being verified.  Far fields are integrated under the compressing
substitution t -> T0/u so that power-law tails cost O(1) panels no matter
how large the truncation radius is.

Everything is deterministic: panels are refined and summed in a fixed
left-to-right order, so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ToleranceNotMet, UsageError


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for one integration request.

    ``truncation_radius`` overrides the decay-hint-derived cutoff when set;
    ``min_depth`` forces that many initial bisections so a deceptively smooth
    coarse sample cannot hide a kernel peak.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    max_depth: int = 32
    min_depth: int = 2
    truncation_radius: float | None = None
    noise_abs: float = 0.0
    noise_rel: float = 0.0

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise UsageError("tolerances must be positive")
        if not 1 <= self.max_depth <= 40:
            raise UsageError("max_depth must lie in [1, 40]")
        if not 0 <= self.min_depth < self.max_depth:
            raise UsageError("min_depth must lie in [0, max_depth)")

    def child(self, abs_factor: float) -> "QuadratureSpec":
        """Spec for a nested integral: scaled absolute share, same relative."""
        return replace(self, abs_tol=self.abs_tol * abs_factor, truncation_radius=None)


@dataclass
class IntegrationResult:
    value: float
    error_estimate: float
    evaluations: int
    truncated_tail_bound: float = 0.0


@dataclass(frozen=True)
class DecayHint:
    """Certifies |f(t)| <= coefficient * |t|^(-power) for |t| >= radius."""

    coefficient: float
    power: float
    radius: float = 1.0

    def line_cutoff(self, tail_target: float) -> tuple[float, float]:
        """Truncation radius T and tail bound for a two-sided line integral."""
        if self.power <= 1.0:
            raise DomainError(f"decay power must exceed 1, got {self.power}")
        delta = self.power - 1.0
        if self.coefficient == 0.0:
            return max(8.0, self.radius), 0.0
        t_cut = (2.0 * self.coefficient / (delta * tail_target)) ** (1.0 / delta)
        t_cut = max(t_cut, self.radius, 8.0)
        return t_cut, 2.0 * self.coefficient * t_cut ** (-delta) / delta

    def radial_cutoff(self, dim: int, sphere_area: float, tail_target: float) -> tuple[float, float]:
        """Cutoff and tail bound for int_T^inf r^(dim-1) |f| * sphere_area dr."""
        delta = self.power - dim
        if delta <= 0.0:
            raise DomainError(
                f"decay power {self.power} too weak for a {dim}-dimensional boundary")
        if self.coefficient == 0.0:
            return max(8.0, self.radius), 0.0
        c = self.coefficient * sphere_area
        t_cut = (c / (delta * tail_target)) ** (1.0 / delta)
        t_cut = max(t_cut, self.radius, 8.0)
        return t_cut, c * t_cut ** (-delta) / delta


_EVAL_BUDGET = 2_000_000


class _Panel:
    """Shared mutable state of one adaptive pass."""

    __slots__ = ("f", "evals", "max_depth", "min_depth", "unresolved",
                 "noise_abs", "noise_rel")

    def __init__(self, f, max_depth, min_depth, noise_abs=0.0, noise_rel=0.0):
        self.f = f
        self.evals = 0
        self.max_depth = max_depth
        self.min_depth = min_depth
        self.unresolved = 0.0
        self.noise_abs = noise_abs
        self.noise_rel = noise_rel

    def __call__(self, x):
        self.evals += 1
        if self.evals > _EVAL_BUDGET:
            raise ToleranceNotMet(
                f"integrand evaluation budget {_EVAL_BUDGET} exhausted; the "
                "integrand is rougher than its tolerance permits")
        return self.f(x)


def _adaptive(panel, a, b, fa, fm, fb, whole, tol, depth):
    """Recursive Simpson bisection; returns (value, error_bound).

    A panel still failing its tolerance share at the depth cap is accepted
    with its residual booked in ``panel.unresolved``; the caller decides
    whether the accumulated residual actually breaks the global tolerance
    (one stubborn microscopic panel must not abort an otherwise converged
    integral, e.g. when an inner nested quadrature jitters at its own
    tolerance level).
    """
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = panel(lm)
    frm = panel(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    converged = abs(delta) <= 15.0 * tol and depth >= panel.min_depth
    if not converged and (panel.noise_abs > 0.0 or panel.noise_rel > 0.0):
        # refining below the evaluation noise of f (a nested quadrature's
        # own tolerance) only burns depth chasing jitter
        local = (abs(fa) + 4.0 * abs(fm) + abs(fb)) / 6.0
        noise = panel.noise_abs + panel.noise_rel * local
        converged = abs(delta) <= 6.0 * noise * (b - a) and depth >= panel.min_depth
    if converged or (b - a) <= 1e-14 * (abs(a) + abs(b) + 1.0):
        return left + right + delta / 15.0, abs(delta) / 8.0
    if depth >= panel.max_depth:
        panel.unresolved += abs(delta)
        return left + right + delta / 15.0, abs(delta)
    vl, el = _adaptive(panel, a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
    vr, er = _adaptive(panel, m, b, fm, frm, fb, right, tol / 2.0, depth + 1)
    return vl + vr, el + er


def _simpson_segment(panel, a, b, abs_share, rel_tol):
    fa = panel(a)
    fm = panel(0.5 * (a + b))
    fb = panel(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    scale = (abs(fa) + 4.0 * abs(fm) + abs(fb)) / 6.0 * (b - a)
    tol = max(abs_share, rel_tol * scale)
    return _adaptive(panel, a, b, fa, fm, fb, whole, tol, 0)


def integrate_interval(f: Callable[[float], float], a: float, b: float,
                       spec: QuadratureSpec = QuadratureSpec(),
                       singular_points: Sequence[float] = (),
                       breakpoints: Sequence[float] = ()) -> IntegrationResult:
    """Integrate f over [a, b], excising declared singular points.

    Each singular point is approached through a geometric sequence of
    shells; refinement stops once the newest shell contributes less than a
    tolerance share, and that contribution is added to the error estimate.
    ``breakpoints`` are benign non-smooth points (kinks, kernel seams): the
    interval is split there so Simpson never straddles them.
    """
    if not a < b:
        raise UsageError(f"need a < b, got [{a}, {b}]")
    sings = sorted(s for s in singular_points if a <= s <= b)
    panel = _Panel(f, spec.max_depth, spec.min_depth, spec.noise_abs, spec.noise_rel)
    width_total = b - a

    breaks = {p for p in breakpoints if a < p < b}
    inner = sorted(set(sings) | breaks)
    cuts = [a] + inner + [b]
    total = 0.0
    err = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo <= 0.0:
            continue
        lo_sing = lo in sings
        hi_sing = hi in sings
        width = hi - lo
        shrink_lo = 2e-2 * width if lo_sing else 0.0
        shrink_hi = 2e-2 * width if hi_sing else 0.0
        # a breakpoint may be a jump of the integrand: keep every node of this
        # segment strictly inside so endpoint values match the interior; the
        # nudge must clear roundoff of downstream norm/branch computations
        nudge_lo = 4e-15 * max(1.0, abs(lo))
        nudge_hi = 4e-15 * max(1.0, abs(hi))
        lo_eval = lo + nudge_lo if lo in breaks and not shrink_lo else lo + shrink_lo
        hi_eval = hi - nudge_hi if hi in breaks and not shrink_hi else hi - shrink_hi
        abs_share = spec.abs_tol * (width / width_total) / 2.0
        v, e = _simpson_segment(panel, lo_eval, hi_eval,
                                abs_share, spec.rel_tol)
        total += v
        err += e
        for side, is_sing in ((0, lo_sing), (1, hi_sing)):
            if not is_sing:
                continue
            delta = shrink_lo if side == 0 else shrink_hi
            pieces = []
            while delta > 1e-15 * width:
                nxt = delta / 4.0
                if side == 0:
                    piece, pe = _simpson_segment(panel, lo + nxt, lo + delta,
                                                 abs_share / 4.0, spec.rel_tol)
                else:
                    piece, pe = _simpson_segment(panel, hi - delta, hi - nxt,
                                                 abs_share / 4.0, spec.rel_tol)
                total += piece
                err += pe
                if abs(piece) < spec.abs_tol / 16.0:
                    err += abs(piece)
                    break
                pieces.append(piece)
                # for power-law singularities the shells decrease with a
                # stable geometric ratio; once it locks in, the remaining
                # sliver is completed by its geometric sum (double precision
                # cannot excise an integrable singularity much past 1e-15)
                if len(pieces) >= 3 and pieces[-2] != 0.0 and pieces[-3] != 0.0:
                    r1 = pieces[-1] / pieces[-2]
                    r2 = pieces[-2] / pieces[-3]
                    if 0.0 < r1 < 0.9 and abs(r1 - r2) < 3e-3:
                        projection = pieces[-1] * r1 / (1.0 - r1)
                        total += projection
                        err += abs(projection) * (abs(r1 - r2) / (1.0 - r1) + 0.05)
                        break
                delta = nxt
    allowance = max(spec.abs_tol, spec.rel_tol * abs(total), 1e-13 * (1.0 + abs(total)),
                    8.0 * (spec.noise_abs * width_total + spec.noise_rel * abs(total)))
    if panel.unresolved > allowance:
        raise ToleranceNotMet(
            f"adaptive refinement left residual {panel.unresolved:.3g} above "
            f"tolerance at depth cap {spec.max_depth}",
            best=IntegrationResult(total, err, panel.evals))
    return IntegrationResult(total, err, panel.evals)


def _mapped_tail(f, t0, t_cut, spec) -> IntegrationResult:
    """int_{t0}^{t_cut} f(t) dt under t = t0/u: du-integrand f(t0/u)*t0/u^2."""
    if t_cut <= t0:
        return IntegrationResult(0.0, 0.0, 0)

    def mapped(u):
        t = t0 / u
        return f(t) * t0 / (u * u)
    return integrate_interval(mapped, t0 / t_cut, 1.0, spec)


def integrate_line(f: Callable[[float], float], spec: QuadratureSpec = QuadratureSpec(),
                   decay: DecayHint | None = None,
                   breakpoints: Sequence[float] = ()) -> IntegrationResult:
    """Integrate f over the whole real line, truncating by the decay hint.

    The central window [-T0, T0] (T0 from the hint's validity radius) is
    integrated directly; the two far tails up to the truncation radius are
    integrated under the compressing substitution.
    """
    if decay is None and spec.truncation_radius is None:
        raise UsageError("integrate_line needs a decay hint or an explicit truncation radius")
    tail = 0.0
    t_cut = spec.truncation_radius or 0.0
    if decay is not None:
        auto_cut, tail = decay.line_cutoff(spec.abs_tol / 10.0)
        if spec.truncation_radius is None:
            t_cut = auto_cut
        elif decay.power > 1.0 and decay.coefficient > 0.0:
            delta = decay.power - 1.0
            tail = 2.0 * decay.coefficient * max(t_cut, decay.radius) ** (-delta) / delta
    t0 = min(t_cut, max(8.0, decay.radius if decay is not None else 8.0))
    share = spec.child(1.0 / 3.0)
    res = integrate_interval(f, -t0, t0, share, breakpoints=breakpoints)
    hi = _mapped_tail(f, t0, t_cut, share)
    lo = _mapped_tail(lambda t: f(-t), t0, t_cut, share)
    res.value += hi.value + lo.value
    res.error_estimate += hi.error_estimate + lo.error_estimate + tail
    res.evaluations += hi.evaluations + lo.evaluations
    res.truncated_tail_bound = tail
    return res


def _sphere_area(dim: int) -> float:
    """Surface area of the unit sphere S^(dim-1) in R^dim."""
    return 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0)


def _angular_integral(g, dim: int, spec: QuadratureSpec) -> float:
    """Integral of g over the unit sphere S^(dim-1), dim in {2, 3, 4}.

    g receives a unit vector as an ndarray.  Angles follow the convention
    coord_1 = cos(theta_1), each later coordinate picking up sine factors,
    with surface element sin^{dim-2}(theta_1) * ... * sin(theta_{dim-2}).
    """
    if dim == 2:
        def h(psi):
            return g(np.array([math.cos(psi), math.sin(psi)]))
        return integrate_interval(h, 0.0, 2.0 * math.pi, spec).value
    if dim == 3:
        def outer(theta):
            st, ct = math.sin(theta), math.cos(theta)

            def inner(psi):
                return g(np.array([ct, st * math.cos(psi), st * math.sin(psi)]))
            return st * integrate_interval(inner, 0.0, 2.0 * math.pi, spec.child(0.3)).value
        return integrate_interval(outer, 0.0, math.pi, spec).value
    if dim == 4:
        def outer(t1):
            s1, c1 = math.sin(t1), math.cos(t1)

            def mid(t2):
                s2, c2 = math.sin(t2), math.cos(t2)

                def inner(psi):
                    return g(np.array([c1, s1 * c2, s1 * s2 * math.cos(psi),
                                       s1 * s2 * math.sin(psi)]))
                return s2 * integrate_interval(inner, 0.0, 2.0 * math.pi,
                                               spec.child(0.1)).value
            return s1 * s1 * integrate_interval(mid, 0.0, math.pi, spec.child(0.3)).value
        return integrate_interval(outer, 0.0, math.pi, spec).value
    raise DomainError(f"angular integration implemented for sphere dimension 2..4, got {dim}")


def integrate_boundary_polar(f: Callable[[np.ndarray], float], n: int,
                             spec: QuadratureSpec = QuadratureSpec(),
                             decay: DecayHint | None = None,
                             radial_breakpoints: Sequence[float] = ()) -> IntegrationResult:
    """Integrate f over the boundary hyperplane R^(n-1), n in [3, 5].

    Iterated polar quadrature: adaptive radial integral of the adaptive
    angular average, with the radial far field truncated by the decay hint
    (power measured against |y'|) and compressed by the t -> T0/u map.
    Reported evaluations count radial nodes (each one angular integral).
    """
    if n not in (3, 4, 5):
        raise DomainError(f"n must lie in [3, 5], got {n}")
    dim = n - 1
    area = _sphere_area(dim)
    if decay is None and spec.truncation_radius is None:
        raise UsageError("integrate_boundary_polar needs a decay hint or truncation radius")
    tail = 0.0
    t_cut = spec.truncation_radius or 0.0
    if decay is not None:
        auto_cut, tail = decay.radial_cutoff(dim, area, spec.abs_tol / 10.0)
        if spec.truncation_radius is None:
            t_cut = auto_cut
        else:
            delta = decay.power - dim
            if delta > 0 and decay.coefficient > 0:
                tail = decay.coefficient * area * t_cut ** (-delta) / delta

    r0 = min(t_cut, max(8.0, decay.radius if decay is not None else 8.0))
    # relative accuracy in the angular factor transfers directly to the
    # radial integrand, so the inner request is relative-dominant; the inner
    # tolerances define the noise floor below which the radial adaptive
    # must not chase deltas
    inner_rel = max(spec.rel_tol * 0.3, 1e-12)
    inner_abs = spec.abs_tol * 2e-5
    inner = replace(spec, abs_tol=inner_abs, rel_tol=inner_rel,
                    truncation_radius=None, noise_abs=0.0, noise_rel=0.0)

    def radial(r):
        if r == 0.0:
            return 0.0

        def on_sphere(unit):
            return f(r * unit)
        return r ** (dim - 1) * _angular_integral(on_sphere, dim, inner)

    share = replace(spec, abs_tol=spec.abs_tol * 0.5, truncation_radius=None,
                    noise_abs=inner_abs * max(1.0, r0) ** (dim - 1),
                    noise_rel=4.0 * inner_rel)
    res = integrate_interval(radial, 0.0, r0, share, breakpoints=radial_breakpoints)
    far = _mapped_tail(radial, r0, t_cut, share)
    res.value += far.value
    res.error_estimate += far.error_estimate + tail
    res.evaluations += far.evaluations
    res.truncated_tail_bound = tail
    return res


def integrate_hemisphere(f: Callable[[np.ndarray], float], n: int, radius: float,
                         spec: QuadratureSpec = QuadratureSpec()) -> IntegrationResult:
    """Surface integral of f over the upper hemisphere |x| = radius, x_n > 0.

    Parameterized by angles theta_1..theta_{n-1} in (0, pi) with
    coord_j = radius * cos(theta_j) * prod_{i<j} sin(theta_i), the last
    coordinate x_n = radius * prod_j sin(theta_j), and surface element
    radius^{n-1} * prod_{j=1}^{n-2} sin^{n-1-j}(theta_j); x_n > 0 exactly on
    the open angle box (0, pi)^{n-1}.
    """
    if n not in (3, 4, 5):
        raise DomainError(f"n must lie in [3, 5], got {n}")
    if radius <= 0:
        raise DomainError("radius must be positive")
    evals = [0]

    def point(angles):
        x = np.empty(n)
        sprod = 1.0
        for j in range(n - 1):
            x[j] = radius * sprod * math.cos(angles[j])
            sprod *= math.sin(angles[j])
        x[n - 1] = radius * sprod
        return x

    def nest(prefix, spec_level):
        j = len(prefix)           # next angle index (0-based)
        weight_pow = n - 2 - j    # sine exponent for this angle, 0 for the last

        def integrand(theta):
            if j == n - 2:
                evals[0] += 1
                val = f(point(prefix + (theta,)))
            else:
                val = nest(prefix + (theta,), spec_level.child(0.25))
            return val * math.sin(theta) ** weight_pow if weight_pow else val
        return integrate_interval(integrand, 0.0, math.pi, spec_level).value

    value = nest((), spec) * radius ** (n - 1)
    return IntegrationResult(value, max(spec.abs_tol, spec.rel_tol * abs(value)),
                             evals[0])
