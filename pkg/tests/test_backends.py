"""Agreement between the compiled kernel core and the pure-Python fallback."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from hspot import _corepy
from hspot._backend import backend_name

try:
    from hspot import _core_cy
except ImportError:
    _core_cy = None

needs_compiled = pytest.mark.skipif(_core_cy is None,
                                    reason="compiled core not built")


def test_backend_name_valid():
    assert backend_name() in ("pure", "compiled")


@needs_compiled
def test_scalar_twins_agree():
    rng = np.random.default_rng(12)
    for _ in range(2000):
        lam = rng.uniform(0.5, 3.0)
        k = int(rng.integers(0, 24))
        t = rng.uniform(-1.0, 1.0)
        assert _corepy.geg_eval(lam, k, t) == pytest.approx(
            _core_cy.geg_eval(lam, k, t), rel=1e-12, abs=1e-12)
        assert _corepy.geg_one(lam, k) == pytest.approx(
            _core_cy.geg_one(lam, k), rel=1e-13)
        m = int(rng.integers(0, 7))
        zx, zy = rng.uniform(-4, 4), rng.uniform(0.01, 4)
        tt = rng.uniform(-9, 9)
        assert _corepy.poisson_mod_plane(m, zx, zy, tt) == pytest.approx(
            _core_cy.poisson_mod_plane(m, zx, zy, tt), rel=1e-11, abs=1e-13)
        assert _corepy.cauchy_mod_plane(m, zx, zy, tt) == pytest.approx(
            _core_cy.cauchy_mod_plane(m, zx, zy, tt), rel=1e-11, abs=1e-13)
        wx, wy = rng.uniform(-4, 4), rng.uniform(0.0, 4)
        if math.hypot(zx - wx, zy - wy) > 1e-6:
            assert _corepy.green_mod_plane(m, zx, zy, wx, wy) == pytest.approx(
                _core_cy.green_mod_plane(m, zx, zy, wx, wy), rel=1e-10, abs=1e-13)


@needs_compiled
def test_space_twins_agree():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        n = int(rng.integers(3, 6))
        m = int(rng.integers(0, 7))
        x = np.ascontiguousarray(np.append(rng.uniform(-3, 3, n - 1),
                                           rng.uniform(0.01, 3)))
        yp = np.ascontiguousarray(rng.uniform(-6, 6, n - 1))
        y = np.ascontiguousarray(np.append(rng.uniform(-3, 3, n - 1),
                                           rng.uniform(0.0, 3)))
        assert _corepy.poisson_mod_space(n, m, x, yp) == pytest.approx(
            _core_cy.poisson_mod_space(n, m, x, yp), rel=1e-10, abs=1e-14)
        if np.linalg.norm(x - y) > 1e-6:
            assert _corepy.green_mod_space(n, m, x, y) == pytest.approx(
                _core_cy.green_mod_space(n, m, x, y), rel=1e-10, abs=1e-14)
    for n in (3, 4, 5):
        assert _corepy.omega_n(n) == pytest.approx(_core_cy.omega_n(n), rel=1e-15)
        assert _corepy.r_n(n) == pytest.approx(_core_cy.r_n(n), rel=1e-15)


def test_pure_mode_env_forces_fallback():
    code = ("import hspot._backend as b; print(b.backend_name())")
    out = subprocess.run([sys.executable, "-c", code],
                         env=dict(os.environ, HSPOT_PURE="1"),
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"


@needs_compiled
def test_default_prefers_compiled():
    env = dict(os.environ)
    env.pop("HSPOT_PURE", None)
    code = ("import hspot._backend as b; print(b.backend_name())")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "compiled"


@needs_compiled
def test_gamma_half_agrees():
    for twice in range(1, 12):
        assert _corepy.gamma_half(twice) == pytest.approx(
            _core_cy.gamma_half(twice), rel=1e-15)
        assert _corepy.gamma_half(twice) == pytest.approx(
            math.gamma(twice / 2.0), rel=1e-14)
