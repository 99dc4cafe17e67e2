"""Growth classes, maximal functions, exceptional covers and growth probes.

The o(.) theorems are asymptotic and existential, so nothing here "proves"
them; the probes evaluate the exact ratio of a kernel-represented function
against the claimed growth envelope along a ray, skipping points inside the
constructed exceptional cover, and report the decay statistics.  The cover
construction is exact for finite atomic measures and asserts the stated
mass bound arithmetically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._backend import core
from .dirichlet import (BoundaryFunction, DiscreteMeasure, green_potential,
                        poisson_integral_plane, poisson_integral_plane_mod,
                        poisson_integral_space, poisson_integral_space_mod)
from .errors import DomainError, HspotError, PreconditionError, UsageError
from .quadrature import QuadratureSpec, integrate_line, integrate_boundary_polar, DecayHint
from .report import VerificationReport

_KINDS = ("plane_m", "plane_pgamma", "space_m", "space_pgamma", "lv_alpha", "lu_alpha")


@dataclass(frozen=True)
class GrowthClassSpec:
    """Names one weighted integrability class and its parameters.

    kind:
      plane_m       weight 1/(1+|t|^(2+m)) on R
      plane_pgamma  weight |f|^p/(1+|t|)^gamma on R
      space_m       weight 1/(1+|y'|^(n+m)) on R^(n-1)
      space_pgamma  weight |f|^p/(1+|y'|)^gamma on R^(n-1)
      lv_alpha      boundary weight with variable exponent rho(|t|)+alpha
      lu_alpha      interior weight with variable exponent (measures only)
    """

    kind: str
    m: int = 0
    p: float = 1.0
    gamma: float = 2.0
    alpha: float = 1.0
    n: int = 2
    rho: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UsageError(f"unknown class kind '{self.kind}' (known: {_KINDS})")
        if self.p < 1.0:
            raise DomainError("exponent p must satisfy p >= 1")
        if self.kind in ("lv_alpha", "lu_alpha") and self.rho is None:
            raise UsageError("variable-exponent classes need a rho profile")

    def boundary_weight(self, t_abs: float) -> float:
        if self.kind == "plane_m":
            return 1.0 / (1.0 + t_abs ** (2 + self.m))
        if self.kind == "plane_pgamma":
            return 1.0 / (1.0 + t_abs) ** self.gamma
        if self.kind == "space_m":
            return 1.0 / (1.0 + t_abs ** (self.n + self.m))
        if self.kind == "space_pgamma":
            return 1.0 / (1.0 + t_abs) ** self.gamma
        if self.kind == "lv_alpha":
            if self.n == 2:
                return 1.0 / (1.0 + t_abs ** (self.rho(t_abs) + self.alpha + 1.0))
            return 1.0 / (1.0 + t_abs ** (self.rho(t_abs) + self.n + self.alpha - 1.0))
        raise UsageError("lu_alpha weights interior points, not boundary ones")


def class_membership(spec: GrowthClassSpec, data,
                     qspec: QuadratureSpec | None = None) -> VerificationReport:
    """Evaluate the class-defining integral (or exact atomic sum).

    For boundary functions the integral is truncated at doubling radii until
    the increments certify geometric convergence ("finite"), clear growth
    ("infinite"), or neither ("indeterminate"); the verdict is stored in
    ``detail["verdict"]`` and only "finite" passes.
    """
    if qspec is None:
        qspec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)
    if isinstance(data, DiscreteMeasure):
        value = _measure_class_sum(spec, data)
        return VerificationReport(f"class-{spec.kind}", value, math.inf, 0.0, 0.0,
                                  True, anchor=f"growth.class.{spec.kind}",
                                  detail={"verdict": "finite", "value": value,
                                          "atoms": len(data)})
    f: BoundaryFunction = data
    power = spec.p if spec.kind.endswith("pgamma") else 1.0

    if spec.kind.startswith("space") or (spec.kind == "lv_alpha" and spec.n > 2):
        def integrand(yp):
            return abs(f(yp)) ** power * spec.boundary_weight(float(np.linalg.norm(yp)))
        def shell(T):
            return integrate_boundary_polar(
                integrand, spec.n,
                QuadratureSpec(abs_tol=qspec.abs_tol, rel_tol=qspec.rel_tol,
                               truncation_radius=T),
                radial_breakpoints=f.breakpoints).value
    else:
        def integrand(t):
            return abs(f(t)) ** power * spec.boundary_weight(abs(t))
        def shell(T):
            return integrate_line(
                f=integrand,
                spec=QuadratureSpec(abs_tol=qspec.abs_tol, rel_tol=qspec.rel_tol,
                                    truncation_radius=T),
                breakpoints=f.breakpoints).value

    t_cut = max(8.0, f.radius)
    values = [shell(t_cut)]
    for _ in range(9):
        t_cut *= 2.0
        values.append(shell(t_cut))
    inc = [values[k + 1] - values[k] for k in range(len(values) - 1)]
    tolerance = max(qspec.abs_tol * 10.0, 1e-12 * abs(values[-1]))
    tail_estimate = 0.0
    # classify by the increment ratio over the last two radius doublings:
    # geometric decay certifies convergence with a projected tail, steady or
    # growing increments certify divergence, anything between is inconclusive
    ratio = inc[-1] / inc[-3] if inc[-3] > tolerance else 0.0
    if inc[-1] <= tolerance:
        verdict = "finite"
    elif ratio <= 0.7:
        verdict = "finite"
        rho_step = math.sqrt(ratio)
        tail_estimate = inc[-1] * rho_step / (1.0 - rho_step)
    elif ratio >= 0.9:
        verdict = "infinite"
    else:
        verdict = "indeterminate"
    value = values[-1] + tail_estimate
    return VerificationReport(f"class-{spec.kind}", value,
                              value if verdict == "finite" else math.inf,
                              0.0, 0.0, verdict == "finite",
                              anchor=f"growth.class.{spec.kind}",
                              detail={"verdict": verdict, "value": value,
                                      "tail_estimate": tail_estimate,
                                      "increments": inc})


def _measure_class_sum(spec: GrowthClassSpec, mu: DiscreteMeasure) -> float:
    total = 0.0
    for loc, mass in mu.atoms:
        if isinstance(loc, (complex, float, int)):
            z = complex(loc)
            height, radius = z.imag, abs(z)
        else:
            arr = np.asarray(loc, dtype=np.float64)
            height, radius = float(arr[-1]), float(np.linalg.norm(arr))
        if spec.kind == "plane_m":
            total += mass * height / (1.0 + radius ** (2 + spec.m))
        elif spec.kind == "space_m":
            total += mass * height / (1.0 + radius ** (spec.n + spec.m))
        elif spec.kind in ("plane_pgamma", "space_pgamma"):
            total += mass * height ** spec.p / (1.0 + radius) ** spec.gamma
        elif spec.kind == "lu_alpha":
            if spec.n == 2:
                total += mass * height / (1.0 + radius ** (spec.rho(radius) + spec.alpha + 3.0))
            else:
                total += mass * height / (1.0 + radius ** (spec.rho(radius) + spec.n + spec.alpha + 1.0))
        else:
            total += mass * spec.boundary_weight(radius)
    return total


def rho_admissible(samples: Sequence[tuple], alpha: float) -> VerificationReport:
    """Estimate the limsup of rho'(R) R log R / rho(R) from a sample table.

    The derivative uses symmetric difference quotients; the reported
    estimate is the supremum over the upper half of the sample range and
    admissibility requires it to stay below 1.  ``alpha`` is carried along
    for context only; the criterion does not involve it.
    """
    rs = [float(r) for r, _ in samples]
    vals = [float(v) for _, v in samples]
    if len(rs) < 3:
        raise PreconditionError("need at least three samples")
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise PreconditionError("sample radii must be strictly increasing")
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise PreconditionError("rho samples must be nondecreasing")
    if any(v < 1.0 for v in vals):
        raise PreconditionError("rho must stay >= 1")
    quotients = []
    for k in range(1, len(rs) - 1):
        drho = (vals[k + 1] - vals[k - 1]) / (rs[k + 1] - rs[k - 1])
        r = rs[k]
        if r > 1.0:
            quotients.append((r, drho * r * math.log(r) / vals[k]))
    if not quotients:
        raise PreconditionError("need interior samples with R > 1")
    tail = [q for r, q in quotients if r >= quotients[len(quotients) // 2][0]]
    est = max(tail)
    # a 1% guard band rejects borderline profiles whose true limsup is 1
    # but whose difference-quotient estimate lands just under it
    return VerificationReport("rho-admissible", est, 1.0, max(est - 1.0, 0.0),
                              max(est - 1.0, 0.0), est < 0.99,
                              anchor="growth.rho-admissible",
                              detail={"estimate": est, "alpha": alpha,
                                      "quotients": len(quotients)})


# ----------------------------------------------------------------------
# Maximal function and exceptional covers

def _distance(a, b) -> float:
    if isinstance(a, (complex, float, int)) and isinstance(b, (complex, float, int)):
        return abs(complex(a) - complex(b))
    return float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))


def _magnitude(a) -> float:
    if isinstance(a, (complex, float, int)):
        return abs(complex(a))
    return float(np.linalg.norm(np.asarray(a, dtype=float)))


def maximal_function(measure: DiscreteMeasure, point, beta: float) -> float:
    """Exact sup over r of mu(B(point, r)) / r^beta for a finite atomic mu.

    For beta > 0 the supremum is attained in the limit at an atom distance;
    an atom sitting exactly at the point makes the value infinite, which is
    reported as math.inf.
    """
    if beta < 0:
        raise DomainError("order beta must be nonnegative")
    if len(measure) == 0:
        return 0.0
    if beta == 0.0:
        return measure.total_mass()
    dists = sorted((_distance(loc, point), mass) for loc, mass in measure.atoms)
    if dists[0][0] <= 0.0:
        return math.inf
    best = 0.0
    cum = 0.0
    k = 0
    while k < len(dists):
        d = dists[k][0]
        while k < len(dists) and dists[k][0] == d:
            cum += dists[k][1]
            k += 1
        best = max(best, cum / d ** beta)
    return best


@dataclass
class ExceptionalCover:
    """Finite disk cover of the exceptional set E(lambda).

    Outside every disk the order-beta maximal function obeys
    M(d mu)(z) <= lambda / |z|^beta (for |z| >= 2); the disk data satisfies
    the mass bound sum (rho_j/|z_j|)^beta <= 3 * 5^beta * mu_total / lambda.
    """

    disks: list = field(default_factory=list)   # (center, radius) pairs
    beta: float = 1.0
    lam: float = 1.0
    mass_bound: float = 0.0

    def contains(self, point) -> bool:
        return any(_distance(point, c) < r for c, r in self.disks)

    def bound_sum(self) -> float:
        return float(sum((r / _magnitude(c)) ** self.beta for c, r in self.disks))


def exceptional_cover(measure: DiscreteMeasure, beta: float, lam: float) -> ExceptionalCover:
    """Greedy disk cover of E(lambda) = {|z| >= 2 : M(d mu)(z) > lambda/|z|^beta}.

    Construction: every point of E(lambda) lies within d of the farthest
    atom a* of a witness ball, and the witness forces
    mu(closed B(a*, 2d)) > lambda (d / (|a*| + d))^beta; scanning the step
    radii of each atom's cumulative-mass profile gives the largest such d
    per atom, hence one covering disk per atom.  Overlapping disks are then
    merged (largest first), low-lying centers are pushed out to |c| = 2, and
    the stated mass bound is asserted on the result.
    """
    if beta < 0:
        raise DomainError("order beta must be nonnegative")
    total = measure.total_mass()
    if lam < 5.0 ** beta * total:
        raise PreconditionError(
            f"lambda = {lam} below the admissible threshold {5.0 ** beta * total}")
    if len(measure) == 0 or total == 0.0 or beta == 0.0:
        # beta = 0: M = mu_total <= lambda everywhere, so E(lambda) is empty
        return ExceptionalCover([], beta, lam, 3.0 * 5.0 ** beta * (total / lam if lam else 0.0))

    locs = [loc for loc, _ in measure.atoms]
    masses = [mass for _, mass in measure.atoms]
    raw = []
    for i, a in enumerate(locs):
        prof = sorted((_distance(a, b), masses[j]) for j, b in enumerate(locs))
        dists = [d for d, _ in prof]
        cums = []
        acc = 0.0
        for _, mass in prof:
            acc += mass
            cums.append(acc)
        aa = _magnitude(a)
        d_best = 0.0
        for j in range(len(prof)):
            lo = dists[j] / 2.0
            hi_step = dists[j + 1] / 2.0 if j + 1 < len(prof) else math.inf
            c_j = (cums[j] / lam) ** (1.0 / beta)
            hi_wit = c_j * aa / (1.0 - c_j)
            hi = min(hi_step, hi_wit)
            if hi > lo:
                d_best = max(d_best, hi)
        if d_best > 0.0:
            raw.append((a, d_best))

    # merge intersecting disks, largest first
    raw.sort(key=lambda cr: -cr[1])
    merged: list = []
    for c, r in raw:
        for k, (cs, rs) in enumerate(merged):
            d = _distance(c, cs)
            if d <= r + rs:
                merged[k] = (cs, max(rs, d + r))
                break
        else:
            merged.append((c, r))

    # recenter disks whose centers lie under |c| = 2 (E(lambda) starts there)
    final = []
    for c, r in merged:
        mag = _magnitude(c)
        if mag >= 2.0:
            final.append((c, r))
            continue
        if mag + r <= 2.0:
            continue                    # never meets {|z| >= 2}
        if isinstance(c, (complex, float, int)):
            c2 = complex(c) * (2.0 / mag) if mag > 0 else complex(2.0, 0.0)
        else:
            arr = np.asarray(c, dtype=float)
            c2 = arr * (2.0 / mag) if mag > 0 else np.array([2.0] + [0.0] * (len(arr) - 1))
        final.append((c2, r + (2.0 - mag)))

    bound = 3.0 * 5.0 ** beta * total / lam
    cover = ExceptionalCover(final, beta, lam, bound)
    if cover.bound_sum() > bound * (1.0 + 1e-12):
        raise HspotError(
            f"constructed cover breaks the mass bound: {cover.bound_sum():.6g} "
            f"> {bound:.6g}; the atom configuration is too clustered for the "
            "greedy construction")
    return cover


def default_lambda(measure: DiscreteMeasure, beta: float) -> float:
    """The proof-guided default threshold 3 * 5^beta * 2 * mu_total."""
    return 3.0 * 5.0 ** beta * 2.0 * measure.total_mass()


# ----------------------------------------------------------------------
# Growth probes

@dataclass
class ProbeTable:
    rows: list                  # (radius, ratio_or_None) -- None when covered
    label: str

    def clean_rows(self):
        return [(r, v) for r, v in self.rows if v is not None]

    def last_over_first(self) -> float:
        rows = self.clean_rows()
        if len(rows) < 2:
            raise HspotError("not enough uncovered ray points for statistics")
        first, last = rows[0][1], rows[-1][1]
        if first == 0.0:
            return 0.0 if last == 0.0 else math.inf
        return last / first

    def monotone_fraction(self) -> float:
        rows = self.clean_rows()
        downs = sum(1 for (_, a), (_, b) in zip(rows, rows[1:]) if b <= a * (1 + 1e-12))
        return downs / max(1, len(rows) - 1)


def _probe_rows(radii, cover, point_of, value_of, denom_of) -> ProbeTable:
    rows = []
    any_clear = False
    for R in sorted(radii):
        pt = point_of(R)
        if cover is not None and cover.contains(pt):
            rows.append((R, None))
            continue
        any_clear = True
        rows.append((R, abs(value_of(pt)) / denom_of(R, pt)))
    if not any_clear:
        raise HspotError("every ray point lies inside the exceptional cover")
    return ProbeTable(rows, "")


def growth_probe_plane(f: BoundaryFunction | None, measure: DiscreteMeasure | None,
                       m: int, alpha: float, theta: float, radii,
                       cover: ExceptionalCover | None = None,
                       qspec: QuadratureSpec | None = None) -> ProbeTable:
    """Ratio of |v + h| against y^(1-alpha) |z|^(m+alpha) along a fixed ray."""
    if not 0.0 < alpha <= 2.0:
        raise DomainError("alpha must lie in (0, 2]")
    if not 0.0 < theta < math.pi:
        raise DomainError("theta must lie in (0, pi)")
    if qspec is None:
        qspec = QuadratureSpec(abs_tol=1e-7, rel_tol=1e-7)

    def value(z):
        acc = 0.0
        if f is not None:
            acc += poisson_integral_plane_mod(m, f, z, qspec)
        if measure is not None and len(measure):
            acc += green_potential(measure, m, z)
        return acc

    def denom(R, z):
        return z.imag ** (1.0 - alpha) * R ** (m + alpha)

    tab = _probe_rows(radii, cover,
                      lambda R: R * complex(math.cos(theta), math.sin(theta)),
                      value, denom)
    tab.label = f"plane-m{m}-alpha{alpha}"
    return tab


def growth_probe_space(n: int, f: BoundaryFunction | None,
                       measure: DiscreteMeasure | None, m: int, alpha: float,
                       angles, radii, cover: ExceptionalCover | None = None,
                       qspec: QuadratureSpec | None = None) -> ProbeTable:
    """Space analog: ratio against x_n^(1-alpha) |x|^(m+alpha)."""
    if not 0.0 < alpha <= n:
        raise DomainError(f"alpha must lie in (0, {n}]")
    if qspec is None:
        qspec = QuadratureSpec(abs_tol=1e-5, rel_tol=1e-5)
    angles = tuple(float(a) for a in angles)

    def point_of(R):
        x = np.empty(n)
        sprod = 1.0
        for j in range(n - 1):
            x[j] = R * sprod * math.cos(angles[j])
            sprod *= math.sin(angles[j])
        x[n - 1] = R * sprod
        return x

    def value(x):
        acc = 0.0
        if f is not None:
            acc += poisson_integral_space_mod(n, m, f, x, qspec)
        if measure is not None and len(measure):
            acc += green_potential(measure, m, x)
        return acc

    def denom(R, x):
        return x[-1] ** (1.0 - alpha) * R ** (m + alpha)

    tab = _probe_rows(radii, cover, point_of, value, denom)
    tab.label = f"space{n}-m{m}-alpha{alpha}"
    return tab


def probe_exponents(geometry: str, p: float, gamma: float, alpha: float,
                    m: int | None, n: int = 3) -> tuple[float, float, float]:
    """Growth-envelope exponents (height, radius, log) for the p >= 1 probes.

    Returns (height_exponent, radius_exponent, log_exponent); the log factor
    is active exactly at the lower boundary gamma value for p > 1.
    Validates the theorem parameter windows.
    """
    if p < 1.0:
        raise UsageError("p >= 1 required")
    q_inv = 1.0 - 1.0 / p       # 1/q, zero for p = 1
    log_exp = 0.0
    if geometry == "plane":
        if m is None:
            if p == 1.0:
                if not 0.0 < gamma <= 2.0:
                    raise UsageError("p=1 plane window is 0 < gamma <= 2")
            else:
                if not (1.0 - p) <= gamma < 1.0 + p:
                    raise UsageError("p>1 plane window is 1-p <= gamma < 1+p")
                if gamma == 1.0 - p:
                    log_exp = q_inv
        else:
            if p == 1.0:
                if not m + 1.0 < gamma <= m + 2.0:
                    raise UsageError("p=1 modified plane window is m+1 < gamma <= m+2")
            else:
                if not (1.0 + m * p) <= gamma < 1.0 + (m + 1.0) * p:
                    raise UsageError("p>1 modified plane window is 1+mp <= gamma < 1+(m+1)p")
                if gamma == 1.0 + m * p:
                    log_exp = q_inv
        if not 0.0 < alpha <= 2.0 * p:
            raise UsageError("alpha must lie in (0, 2p]")
        return 1.0 - alpha / p, gamma / p + q_inv - 2.0 + alpha / p, log_exp
    if geometry == "space":
        if m is None:
            if p == 1.0:
                if not 0.0 < gamma <= n:
                    raise UsageError(f"p=1 space window is 0 < gamma <= {n}")
            else:
                if not -(n - 1.0) * (p - 1.0) <= gamma < (n - 1.0) + p:
                    raise UsageError("p>1 space window is -(n-1)(p-1) <= gamma < (n-1)+p")
                if gamma == -(n - 1.0) * (p - 1.0):
                    log_exp = q_inv
        else:
            if p == 1.0:
                if not m + n - 1.0 < gamma <= m + n:
                    raise UsageError("p=1 modified space window is m+n-1 < gamma <= m+n")
            else:
                if not (n - 1.0) + m * p <= gamma < (n - 1.0) + (m + 1.0) * p:
                    raise UsageError(
                        "p>1 modified space window is (n-1)+mp <= gamma < (n-1)+(m+1)p")
                if gamma == (n - 1.0) + m * p:
                    log_exp = q_inv
        if not 0.0 < alpha <= n * p:
            raise UsageError("alpha must lie in (0, np]")
        return 1.0 - alpha / p, gamma / p + (n - 1.0) * q_inv - n + alpha / p, log_exp
    raise UsageError("geometry must be 'plane' or 'space'")


def growth_probe_p(geometry: str, f: BoundaryFunction | None,
                   measure: DiscreteMeasure | None, p: float, gamma: float,
                   alpha: float, m: int | None, ray, radii,
                   cover: ExceptionalCover | None = None, n: int = 3,
                   qspec: QuadratureSpec | None = None) -> ProbeTable:
    """General p >= 1 growth probe against the exact theorem denominator.

    ``ray`` is theta for the plane and an angle tuple for the space; ``m``
    selects the modified kernel (None = classical).  At the boundary gamma
    value the denominator carries the (log |z|)^(1/q) factor.
    """
    h_exp, r_exp, log_exp = probe_exponents(geometry, p, gamma, alpha, m, n)
    if qspec is None:
        qspec = QuadratureSpec(abs_tol=1e-7, rel_tol=1e-7) if geometry == "plane" \
            else QuadratureSpec(abs_tol=1e-5, rel_tol=1e-5)
    order = 0 if m is None else m

    if geometry == "plane":
        theta = float(ray)

        def point_of(R):
            return R * complex(math.cos(theta), math.sin(theta))

        def value(z):
            acc = 0.0
            if f is not None:
                acc += (poisson_integral_plane(f, z, qspec) if m is None
                        else poisson_integral_plane_mod(m, f, z, qspec))
            if measure is not None and len(measure):
                acc += green_potential(measure, order, z)
            return acc

        def denom(R, z):
            d = z.imag ** h_exp * R ** r_exp
            if log_exp:
                d *= math.log(R) ** log_exp
            return d
    else:
        angles = tuple(float(a) for a in ray)

        def point_of(R):
            x = np.empty(n)
            sprod = 1.0
            for j in range(n - 1):
                x[j] = R * sprod * math.cos(angles[j])
                sprod *= math.sin(angles[j])
            x[n - 1] = R * sprod
            return x

        def value(x):
            acc = 0.0
            if f is not None:
                acc += (poisson_integral_space(n, f, x, qspec) if m is None
                        else poisson_integral_space_mod(n, m, f, x, qspec))
            if measure is not None and len(measure):
                acc += green_potential(measure, order, x)
            return acc

        def denom(R, x):
            d = x[-1] ** h_exp * R ** r_exp
            if log_exp:
                d *= math.log(R) ** log_exp
            return d

    tab = _probe_rows(radii, cover, point_of, value, denom)
    tab.label = f"{geometry}-p{p}-gamma{gamma}"
    return tab


# ----------------------------------------------------------------------
# Lower-bound probe

@dataclass(frozen=True)
class LowerBoundProbeSpec:
    """Inputs of the harmonic lower-bound probe.

    ``grid`` holds (R, theta) pairs with theta in (0, pi/2] measured from
    the boundary (x_n = R sin theta); K > 0 scales the assumed upper bound
    and rho is the nondecreasing variable exponent.
    """

    K: float
    rho: Callable[[float], float]
    grid: tuple

    def __post_init__(self):
        if self.K <= 0:
            raise DomainError("K must be positive")


def lower_bound_probe(spec: LowerBoundProbeSpec, u, n: int) -> tuple[list, float]:
    """Fitted constant for the lower bound -c K (1+(2R)^rho(R)) / sin^(n-1) theta.

    Each grid point contributes -u(x) sin^(n-1)(theta) / (K (1+(2R)^rho(R)));
    the fitted c is the maximum.  The envelope is evaluated in log space, so
    huge (2R)^rho(R) values degrade gracefully to ratio 0.
    """
    rows = []
    fitted = -math.inf
    for R, theta in spec.grid:
        if not 0.0 < theta <= math.pi / 2.0:
            raise DomainError("grid angles must lie in (0, pi/2]")
        if n == 2:
            pt = R * complex(math.cos(theta), math.sin(theta))
        else:
            pt = np.zeros(n)
            pt[0] = R * math.cos(theta)
            pt[-1] = R * math.sin(theta)
        rho = spec.rho(R)
        if rho <= 1.0:
            raise DomainError(f"rho({R}) = {rho} must exceed 1")
        log_env = rho * math.log(2.0 * R)
        if log_env > 700.0:
            envelope = math.inf
        else:
            envelope = 1.0 + math.exp(log_env)
        ratio = (-u(pt)) * math.sin(theta) ** (n - 1) / (spec.K * envelope)
        rows.append((R, theta, ratio))
        fitted = max(fitted, ratio)
    return rows, fitted
