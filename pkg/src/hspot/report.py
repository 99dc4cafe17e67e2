"""Verification report record shared by all check routines."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one numerical identity or inequality check.

    ``anchor`` is a stable machine-readable identifier of the checked
    statement (used as the ``check`` column of CSV output); ``lhs`` and
    ``rhs`` are the two compared quantities, with the convention that for
    inequality families ``lhs`` is the worst observed left side and ``rhs``
    the corresponding right side (or fitted constant).
    """

    name: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passed: bool
    anchor: str = ""
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def compare(name: str, lhs: float, rhs: float, tol: float, *,
            rel: bool = False, anchor: str = "", **detail) -> VerificationReport:
    """Build a report asserting |lhs - rhs| <= tol (relative if ``rel``)."""
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else 0.0
    passed = bool((rel_err if rel else abs_err) <= tol)
    if math.isnan(abs_err):
        passed = False
    return VerificationReport(name, float(lhs), float(rhs), float(abs_err),
                              float(rel_err), passed,
                              anchor=anchor or name, detail=dict(detail))


def bounded(name: str, lhs: float, rhs: float, *, slack: float = 0.0,
            anchor: str = "", **detail) -> VerificationReport:
    """Build a report asserting lhs <= rhs + slack."""
    abs_err = max(lhs - rhs, 0.0)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else 0.0
    passed = bool(lhs <= rhs + slack and not math.isnan(lhs) and not math.isnan(rhs))
    return VerificationReport(name, float(lhs), float(rhs), float(abs_err),
                              float(rel_err), passed,
                              anchor=anchor or name, detail=dict(detail))
