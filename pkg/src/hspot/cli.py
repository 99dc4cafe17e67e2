"""Command-line harness: kernel evaluation, verification suites, growth probes.

Outputs are written as ``<scenario>.report.json`` plus ``<scenario>.csv``
(UTF-8, LF, ``.`` decimal separator) into ``--out``, the ``HSPOT_OUT``
environment variable, or the working directory, in that order of
precedence.  Exit codes: 0 all checks passed, 1 a verification failed,
2 usage or configuration error.

Persisted reports contain only deterministic fields, so one seed always
reproduces byte-identical files; wall time goes to the console.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, plane, space
from .dirichlet import BoundaryFunction, DiscreteMeasure
from .errors import HspotError, UsageError
from .growth import (GrowthClassSpec, LowerBoundProbeSpec, class_membership,
                     default_lambda, exceptional_cover, growth_probe_p,
                     growth_probe_plane, growth_probe_space, lower_bound_probe)
from .report import VerificationReport
from .suites import SUITES, build_suite

USAGE_EXIT = 2
FAIL_EXIT = 1


@dataclass
class RunReport:
    """Aggregated result of one scenario run."""

    scenario: str
    checks: list
    overall_pass: bool
    wall_time: float
    version: str
    config: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "scenario": self.scenario,
            "version": self.version,
            "overall_pass": bool(self.overall_pass),
            "config": _jsonable(self.config),
            "checks": [
                {
                    "check": c.anchor,
                    "name": c.name,
                    "lhs": _jsonable(float(c.lhs)),
                    "rhs": _jsonable(float(c.rhs)),
                    "abs_err": _jsonable(float(c.abs_err)),
                    "rel_err": _jsonable(float(c.rel_err)),
                    "pass": bool(c.passed),
                    "detail": _jsonable(c.detail),
                }
                for c in self.checks
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = ["check,lhs,rhs,abs_err,rel_err,pass"]
        for c in self.checks:
            lines.append(f"{c.anchor},{c.lhs!r},{c.rhs!r},{c.abs_err!r},"
                         f"{c.rel_err!r},{str(c.passed).lower()}")
        return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("HSPOT_OUT") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_outputs(args, name: str, report: RunReport, extra_csv: dict | None = None):
    outdir = _out_dir(args)
    (outdir / f"{name}.report.json").write_bytes(report.to_json().encode("utf-8"))
    (outdir / f"{name}.csv").write_bytes(report.to_csv().encode("utf-8"))
    for suffix, text in (extra_csv or {}).items():
        (outdir / f"{name}.{suffix}.csv").write_bytes(text.encode("utf-8"))
    if args.json:
        sys.stdout.write(report.to_json())


# ----------------------------------------------------------------------
# kernel subcommand

def _parse_coords(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse coordinates '{text}': {exc}") from exc


def _cmd_kernel(args) -> int:
    fam = args.family
    try:
        if fam in ("plane", "plane-mod", "cauchy"):
            zx, zy = _parse_coords(args.z)
            z = complex(zx, zy)
            t = float(args.t)
            if fam == "plane":
                value = plane.poisson(z, t)
            elif fam == "plane-mod":
                value = plane.poisson_mod(args.m, z, t)
            else:
                value = plane.cauchy_mod(args.m, z, t)
                print(f"{value.real:.15g} {value.imag:+.15g}i")
                return 0
        elif fam in ("green", "green-mod"):
            zx, zy = _parse_coords(args.z)
            wx, wy = _parse_coords(args.zeta)
            z, w = complex(zx, zy), complex(wx, wy)
            value = plane.green(z, w) if fam == "green" else plane.green_mod(args.m, z, w)
        elif fam in ("space", "space-mod"):
            x = _parse_coords(args.x)
            yp = _parse_coords(args.yp)
            n = args.n
            value = (space.poisson(n, x, yp) if fam == "space"
                     else space.poisson_mod(n, args.m, x, yp))
        elif fam in ("space-green", "space-green-mod"):
            x = _parse_coords(args.x)
            y = _parse_coords(args.y)
            n = args.n
            value = (space.green(n, x, y) if fam == "space-green"
                     else space.green_mod(n, args.m, x, y))
        else:
            raise UsageError(f"unknown kernel family '{fam}'")
    except (TypeError, ValueError, HspotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    print(f"{value:.15g}")
    return 0


# ----------------------------------------------------------------------
# verify subcommand

def _cmd_verify(args) -> int:
    try:
        checks = build_suite(args.suite, args.seed, args.tol)
    except KeyError:
        print(f"error: unknown suite '{args.suite}' "
              f"(known: {', '.join(sorted(SUITES))}, all)", file=sys.stderr)
        return USAGE_EXIT
    t0 = time.perf_counter()
    reports = []
    for name, thunk in checks:
        rep = thunk()
        reports.append(rep)
        print(f"[{'PASS' if rep.passed else 'FAIL'}] {name}: "
              f"lhs={rep.lhs:.9g} rhs={rep.rhs:.9g} abs_err={rep.abs_err:.3g}")
    wall = time.perf_counter() - t0
    overall = all(r.passed for r in reports)
    run = RunReport(args.suite, reports, overall, wall, __version__,
                    config={"suite": args.suite, "seed": args.seed,
                            "tol": args.tol})
    _write_outputs(args, args.suite, run)
    print(f"{'OK' if overall else 'FAILED'}: {sum(r.passed for r in reports)}"
          f"/{len(reports)} checks passed in {wall:.1f} s")
    return 0 if overall else FAIL_EXIT


# ----------------------------------------------------------------------
# probe subcommand

_BOUNDARY_FAMILIES = {
    "const": lambda c, e: BoundaryFunction(lambda t: c, growth=0.0, coefficient=abs(c),
                                           label="const"),
    "zero": lambda c, e: BoundaryFunction(lambda t: 0.0, growth=0.0, coefficient=0.0,
                                          label="zero"),
    "abs_power": lambda c, e: BoundaryFunction(
        lambda t: c * _mag(t) ** e, growth=e, coefficient=abs(c),
        label=f"abs_power({e})", breakpoints=(0.0,) if e else ()),
    "inv_power": lambda c, e: BoundaryFunction(
        lambda t: c / (1.0 + _mag(t)) ** e, growth=0.0, coefficient=abs(c),
        label=f"inv_power({e})"),
}


def _mag(t):
    if isinstance(t, (float, int)):
        return abs(t)
    return float(np.linalg.norm(t))


def parse_scenario(path: str) -> dict:
    """Parse the line-oriented ``key = value`` scenario format.

    Sections are ``[name]`` headers; values stay strings and are interpreted
    by the probe runner.  ``#`` starts a comment.
    """
    sections: dict = {}
    current = "scenario"
    sections[current] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got '{raw.strip()}'")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if current == "measure" and key == "atom":
            sections[current].setdefault("atoms", []).append(value)
        else:
            sections[current][key] = value
    return sections


def _floats(text: str) -> list[float]:
    return [float(p) for p in text.replace(",", " ").split()]


def _rho_profile(text: str):
    if text == "RlogR":
        return lambda R: R / math.log(max(R, 1.0 + 1e-9))
    if text.startswith("const:"):
        v = float(text.split(":", 1)[1])
        return lambda R: v
    if text.startswith("power:"):
        e = float(text.split(":", 1)[1])
        return lambda R: max(1.0, R ** e)
    raise UsageError(f"unknown rho profile '{text}' (use RlogR | const:<v> | power:<e>)")


def _build_measure(section: dict, geometry: str, n: int) -> DiscreteMeasure:
    atoms = []
    for text in section.get("atoms", []):
        parts = _floats(text)
        if geometry == "plane":
            if len(parts) != 3:
                raise UsageError(f"plane atom needs 'x, y, mass', got '{text}'")
            atoms.append((complex(parts[0], parts[1]), parts[2]))
        else:
            if len(parts) != n + 1:
                raise UsageError(f"space atom needs {n} coordinates plus mass")
            atoms.append((np.array(parts[:-1]), parts[-1]))
    return DiscreteMeasure(atoms)


def _cmd_probe(args) -> int:
    try:
        sc = parse_scenario(args.scenario)
    except (OSError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    meta = sc.get("scenario", {})
    name = meta.get("name", Path(args.scenario).stem)
    kind = args.kind or meta.get("kind")
    try:
        if kind in ("growth", "growth-p"):
            return _run_growth_probe(args, sc, name, kind)
        if kind == "lower-bound":
            return _run_lower_bound(args, sc, name)
        raise UsageError(f"unknown probe kind '{kind}'")
    except (HspotError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


def _run_growth_probe(args, sc, name, kind) -> int:
    probe = sc.get("probe", {})
    geometry = probe.get("geometry", "plane")
    n = int(probe.get("n", 3))
    m = int(probe["m"]) if "m" in probe else None
    alpha = float(probe.get("alpha", 1.0))
    radii = _floats(probe.get("radii", "4 16 64 256 1024"))
    theta = float(probe.get("theta", math.pi / 2.0))
    angles = _floats(probe.get("angles", " ".join([str(math.pi / 2)] * (n - 1))))

    bnd = sc.get("boundary", {})
    f = None
    if bnd:
        family = bnd.get("family", "const")
        if family not in _BOUNDARY_FAMILIES:
            raise UsageError(f"unknown boundary family '{family}'")
        f = _BOUNDARY_FAMILIES[family](float(bnd.get("coefficient", 1.0)),
                                       float(bnd.get("exponent", 0.0)))
    measure = _build_measure(sc.get("measure", {}), geometry, n)

    # class membership gate
    reports = []
    if f is not None:
        if kind == "growth":
            spec = (GrowthClassSpec("plane_m", m=m or 0) if geometry == "plane"
                    else GrowthClassSpec("space_m", m=m or 0, n=n))
        else:
            p = float(probe.get("p", 1.0))
            gamma = float(probe.get("gamma", 2.0))
            spec = (GrowthClassSpec("plane_pgamma", p=p, gamma=gamma) if geometry == "plane"
                    else GrowthClassSpec("space_pgamma", p=p, gamma=gamma, n=n))
        membership = class_membership(spec, f)
        reports.append(membership)
        if not membership.passed and not args.force:
            print(f"error: boundary data failed class membership "
                  f"({membership.detail.get('verdict')}); rerun with --force to probe anyway",
                  file=sys.stderr)
            return FAIL_EXIT

    cover = None
    if len(measure):
        dim = 2.0 if geometry == "plane" else float(n)
        p_for_beta = float(probe.get("p", 1.0)) if kind == "growth-p" else 1.0
        beta = max(dim * p_for_beta - alpha, 0.0)
        lam = float(probe.get("lambda", default_lambda(measure, beta)))
        cover = exceptional_cover(measure, beta, lam)

    if kind == "growth":
        if geometry == "plane":
            tab = growth_probe_plane(f, measure, m or 0, alpha, theta, radii, cover)
        else:
            tab = growth_probe_space(n, f, measure, m or 0, alpha, angles, radii, cover)
    else:
        p = float(probe.get("p", 1.0))
        gamma = float(probe.get("gamma", 2.0))
        ray = theta if geometry == "plane" else angles
        tab = growth_probe_p(geometry, f, measure, p, gamma, alpha, m, ray, radii,
                             cover, n=n)

    rows = tab.clean_rows()
    ratio = tab.last_over_first()
    summary = VerificationReport(
        "growth-probe", rows[-1][1], rows[0][1], 0.0, 0.0, ratio <= 1.0,
        anchor=f"probe.{kind}.{tab.label}",
        detail={"last_over_first": ratio, "monotone_fraction": tab.monotone_fraction(),
                "points": len(rows), "covered": len(tab.rows) - len(rows),
                "note": "ratio decay outside the cover is consistency evidence, "
                        "not a proof of the asymptotic statement"})
    reports.append(summary)
    run = RunReport(name, reports, all(r.passed for r in reports), 0.0, __version__,
                    config={"kind": kind, "scenario": str(args.scenario),
                            "seed": int(sc.get("scenario", {}).get("seed", args.seed))})
    lines = ["R,ratio"] + [f"{R!r},{'' if v is None else repr(v)}" for R, v in tab.rows]
    _write_outputs(args, name, run, {"ratios": "\n".join(lines) + "\n"})
    print(f"{'OK' if run.overall_pass else 'FAILED'}: last/first ratio "
          f"{ratio:.4g} over {len(rows)} ray points")
    return 0 if run.overall_pass else FAIL_EXIT


def _run_lower_bound(args, sc, name) -> int:
    section = sc.get("lower-bound", {})
    K = float(section.get("K", 1.0))
    rho = _rho_profile(section.get("rho", "RlogR"))
    grid_R = _floats(section.get("grid_R", "2 4 8 16"))
    grid_theta = _floats(section.get("grid_theta", "0.3 0.8 1.2"))
    n = int(section.get("n", 2))
    func = section.get("u", "exp_cos")
    if func == "exp_cos":
        u = lambda z: math.exp(z.imag) * math.cos(z.real)
        if n != 2:
            raise UsageError("the exp_cos example is two-dimensional")
    else:
        raise UsageError(f"unknown probe function '{func}'")

    spec = LowerBoundProbeSpec(K, rho, tuple((R, th) for R in grid_R for th in grid_theta))
    rows, fitted = lower_bound_probe(spec, u, n)
    dense = LowerBoundProbeSpec(K, rho, tuple(
        (R, th) for R in grid_R for R2 in (1,) for th in
        np.linspace(min(grid_theta), max(grid_theta), 2 * len(grid_theta))))
    _, fitted_dense = lower_bound_probe(dense, u, n)
    drift = abs(fitted_dense - fitted) / max(abs(fitted), 1e-300)
    rep = VerificationReport("lower-bound-probe", fitted, fitted_dense,
                             abs(fitted - fitted_dense), drift,
                             math.isfinite(fitted) and drift <= 0.1,
                             anchor="probe.lower-bound",
                             detail={"fitted_c": fitted, "refined_c": fitted_dense,
                                     "grid_points": len(rows)})
    run = RunReport(name, [rep], rep.passed, 0.0, __version__,
                    config={"kind": "lower-bound", "scenario": str(args.scenario)})
    lines = ["R,ratio"] + [f"{R!r},{ratio!r}" for R, _, ratio in rows]
    _write_outputs(args, name, run, {"ratios": "\n".join(lines) + "\n"})
    print(f"{'OK' if rep.passed else 'FAILED'}: fitted c = {fitted:.6g} "
          f"(refined {fitted_dense:.6g})")
    return 0 if rep.passed else FAIL_EXIT


# ----------------------------------------------------------------------
# gegenbauer subcommand

def _cmd_gegenbauer(args) -> int:
    from .special import gegenbauer, gegenbauer_max
    try:
        if args.at_one:
            value = gegenbauer_max(args.lam, args.k)
        else:
            value = gegenbauer(args.lam, args.k, args.t)
    except (ValueError, HspotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    print(f"{value:.15g}")
    return 0


# ----------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hspot",
        description="Half-plane/half-space potential theory toolkit")
    parser.add_argument("--version", action="version", version=f"hspot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pk = sub.add_parser("kernel", help="evaluate one kernel at one point")
    pk.add_argument("family", help="plane | plane-mod | green | green-mod | cauchy | "
                                   "space | space-mod | space-green | space-green-mod")
    pk.add_argument("--z", default="0,1", help="plane point as 'x,y'")
    pk.add_argument("--zeta", default="0,1", help="plane source point as 'x,y'")
    pk.add_argument("--t", type=float, default=0.0, help="plane boundary point")
    pk.add_argument("--m", type=int, default=0, help="modification order")
    pk.add_argument("--n", type=int, default=3, help="space dimension")
    pk.add_argument("--x", default="0,0,1", help="space point coordinates")
    pk.add_argument("--y", default="0,0,1", help="space source point coordinates")
    pk.add_argument("--yp", default="0,0", help="space boundary point coordinates")
    pk.set_defaults(func=_cmd_kernel)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", help=f"one of {', '.join(sorted(SUITES))}, or 'all'")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--tol", type=float, default=None,
                    help="override the default comparison tolerance")
    pv.add_argument("--out", default=None, help="output directory")
    pv.add_argument("--json", action="store_true", help="echo the JSON report to stdout")
    pv.set_defaults(func=_cmd_verify)

    pp = sub.add_parser("probe", help="run a growth or lower-bound probe scenario")
    pp.add_argument("kind", nargs="?", default=None,
                    help="growth | growth-p | lower-bound (defaults to the scenario file)")
    pp.add_argument("scenario", help="scenario file (key = value sections)")
    pp.add_argument("--seed", type=int, default=0)
    pp.add_argument("--force", action="store_true",
                    help="probe even when class membership fails")
    pp.add_argument("--out", default=None)
    pp.add_argument("--json", action="store_true")
    pp.set_defaults(func=_cmd_probe)

    pg = sub.add_parser("gegenbauer", help="evaluate an ultraspherical polynomial")
    pg.add_argument("--lam", type=float, required=True)
    pg.add_argument("--k", type=int, required=True)
    pg.add_argument("--t", type=float, default=0.0)
    pg.add_argument("--at-one", action="store_true", help="closed-form value at t = 1")
    pg.set_defaults(func=_cmd_gegenbauer)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize --version/-h to 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
