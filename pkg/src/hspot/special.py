"""Gegenbauer (ultraspherical) polynomials and Wallis sine-power integrals.

Everything here is scalar, pure and reentrant.  The degree is capped at 64:
the kernel expansions never need more than order + 1 terms and the
recurrence is comfortably stable in that range.
"""

from __future__ import annotations

import math

from ._backend import core
from .errors import CapacityError, DomainError
from .report import VerificationReport, compare

DEGREE_CAP = 64


def _validate(lam: float, k: int) -> None:
    if not lam > 0:
        raise DomainError(f"gegenbauer weight must be positive, got {lam}")
    if k < 0:
        raise DomainError(f"degree must be nonnegative, got {k}")
    if k > DEGREE_CAP:
        raise CapacityError(f"degree {k} exceeds cap {DEGREE_CAP}")


def gegenbauer(lam: float, k: int, t: float) -> float:
    """Evaluate C_k^lam(t) for |t| <= 1 by the three-term recurrence."""
    _validate(lam, k)
    if abs(t) > 1.0:
        raise DomainError(f"|t| <= 1 required, got t={t}")
    return core.geg_eval(lam, k, t)


def gegenbauer_max(lam: float, k: int) -> float:
    """C_k^lam(1), the maximum of |C_k^lam| on [-1, 1], as a rational product."""
    _validate(lam, k)
    return core.geg_one(lam, k)


def gegenbauer_derivative(lam: float, k: int, t: float) -> float:
    """d/dt C_k^lam(t) = 2*lam*C_{k-1}^{lam+1}(t); requires k >= 1."""
    _validate(lam, k)
    if k == 0:
        raise DomainError("derivative identity requires degree k >= 1")
    if abs(t) > 1.0:
        raise DomainError(f"|t| <= 1 required, got t={t}")
    return core.geg_deriv(lam, k, t)


def generating_sum_check(lam: float, r: float, terms: int) -> VerificationReport:
    """Compare sum_{k<=terms} C_k^lam(1) r^k against (1-r)^{-2*lam}.

    The report's ``detail`` carries the geometric bound on the dropped tail.
    """
    _validate(lam, 0)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"0 <= r < 1 required, got r={r}")
    acc = 0.0
    coeff = 1.0
    rk = 1.0
    for k in range(terms + 1):
        acc += coeff * rk
        coeff *= (2.0 * lam + k) / (k + 1.0)
        rk *= r
    # first dropped term is coeff*rk; term ratio r*(2*lam+k)/(k+1) -> r
    k = terms + 1
    q = r * (2.0 * lam + k) / (k + 1.0)
    tail = math.inf if q >= 1.0 else coeff * rk / (1.0 - q)
    closed = (1.0 - r) ** (-2.0 * lam)
    rep = compare("generating-sum", acc, closed, tol=max(1e-8, tail * 2.0),
                  anchor="gegenbauer.generating-sum",
                  lam=lam, r=r, terms=terms, tail_bound=tail)
    return rep


def lipschitz_bound_check(n: int, k: int, t: float, t_star: float) -> VerificationReport:
    """Check |C_k^{(n-2)/2}(t) - C_k^{(n-2)/2}(t*)| <= (n-2) C_{k-1}^{n/2}(1) |t - t*|."""
    if n < 3:
        raise DomainError(f"dimension n >= 3 required, got {n}")
    if k < 1:
        raise DomainError("degree k >= 1 required")
    if abs(t) > 1.0 or abs(t_star) > 1.0:
        raise DomainError("both abscissas must lie in [-1, 1]")
    lam = (n - 2.0) / 2.0
    lhs = abs(core.geg_eval(lam, k, t) - core.geg_eval(lam, k, t_star))
    rhs = (n - 2.0) * core.geg_one(n / 2.0, k - 1) * abs(t - t_star)
    passed = lhs <= rhs + 1e-12
    return VerificationReport("lipschitz-bound", lhs, rhs, max(lhs - rhs, 0.0),
                              max(lhs - rhs, 0.0) / rhs if rhs > 0 else 0.0,
                              passed, anchor="gegenbauer.lipschitz",
                              detail={"n": n, "k": k, "t": t, "t_star": t_star})


def wallis(n: int) -> float:
    """The sine-power integral int_0^{pi/2} sin^n theta dtheta.

    Even n = 2k: (2k-1)!!/(2k)!! * pi/2; odd n = 2k+1: (2k)!!/(2k+1)!!.
    Accepts n >= 0 (n = 0 gives pi/2, n = 1 gives 1).
    """
    if n < 0:
        raise DomainError(f"n >= 0 required, got {n}")
    if n % 2 == 0:
        out = math.pi / 2.0
        for j in range(1, n // 2 + 1):
            out *= (2.0 * j - 1.0) / (2.0 * j)
        return out
    out = 1.0
    for j in range(1, n // 2 + 1):
        out *= (2.0 * j) / (2.0 * j + 1.0)
    return out
