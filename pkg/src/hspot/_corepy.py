"""Pure-Python kernel core.

Scalar evaluation routines for the Gegenbauer recurrence and for the
classical/modified half-plane and half-space kernels.  These are the hot
primitives called inside quadrature loops and randomized bound sweeps; a
compiled twin lives in ``_core_cy.pyx`` with identical signatures, and
``hspot._backend`` selects between the two at import time.

No argument validation happens here: callers (``hspot.plane``,
``hspot.space``, ...) check domains and raise typed errors.  Points are
passed as plain floats (plane) or indexable float sequences (space).
"""

import math

BACKEND = "pure"

_TWO_PI = 2.0 * math.pi
_SERIES_CUTOFF = 0.5  # |x|/|y| below which tail summation replaces subtraction


# ----------------------------------------------------------------------
# Gegenbauer polynomials

def geg_eval(lam, k, t):
    """C_k^lam(t) by the three-term recurrence."""
    if k == 0:
        return 1.0
    c_prev = 1.0
    c = 2.0 * lam * t
    for j in range(2, k + 1):
        c_prev, c = c, (2.0 * (j + lam - 1.0) * t * c - (j + 2.0 * lam - 2.0) * c_prev) / j
    return c


def geg_one(lam, k):
    """C_k^lam(1) as the rational product prod_{j<k} (2*lam+j)/(j+1)."""
    out = 1.0
    for j in range(k):
        out *= (2.0 * lam + j) / (j + 1.0)
    return out


def geg_deriv(lam, k, t):
    """d/dt C_k^lam(t) = 2*lam*C_{k-1}^{lam+1}(t), k >= 1."""
    return 2.0 * lam * geg_eval(lam + 1.0, k - 1, t)


def _geg_tail_sum(lam, m, t, s):
    """sum_{k>=m} C_k^lam(t) s^k for 0 <= s < 1.

    Stops once the geometric majorant C_k^lam(1) s^k q/(1-q) with
    q = s*(k+2*lam)/(k+1) drops below 1e-18 of the accumulated value.
    """
    ck = geg_eval(lam, m, t)
    ck1 = geg_eval(lam, m + 1, t)
    gk = geg_one(lam, m)
    sk = s ** m
    acc = 0.0
    k = m
    while k < 800:
        acc += ck * sk
        q = s * (k + 2.0 * lam) / (k + 1.0)
        if q < 0.97:
            if gk * sk * q / (1.0 - q) < 1e-18 * (1.0 + abs(acc)):
                break
        kk = k + 1
        ck, ck1 = ck1, (2.0 * (kk + lam) * t * ck1 - (kk + 2.0 * lam - 1.0) * ck) / (kk + 1.0)
        gk *= (2.0 * lam + k) / (k + 1.0)
        sk *= s
        k += 1
    return acc


# ----------------------------------------------------------------------
# Half-plane kernels; z = zx + i*zy with zy > 0, boundary points are real.

def e_plane(dx, dy):
    """Logarithmic fundamental solution at offset (dx, dy)."""
    return math.log(math.hypot(dx, dy)) / _TWO_PI


def poisson_plane(zx, zy, t):
    d2 = (zx - t) * (zx - t) + zy * zy
    return zy / (math.pi * d2)


def cauchy_mod_plane(m, zx, zy, t):
    """Modified Cauchy kernel of order m (complex value).

    For |t| > 1 the subtracted partial sum collapses algebraically to
    z^{m+1} / (pi * t^{m+1} * (t - z)), exact for every t not in {0, z};
    this form avoids the catastrophic cancellation of the literal
    subtraction when |t| >> |z|.
    """
    z = complex(zx, zy)
    if abs(t) <= 1.0:
        return 1.0 / (math.pi * (t - z))
    zp = z
    tp = t
    for _ in range(m):
        zp *= z
        tp *= t
    return zp / (math.pi * tp * (t - z))


def poisson_mod_plane(m, zx, zy, t):
    """Modified Poisson kernel of order m: P minus Im sum_{k<=m} z^k/t^{k+1}."""
    if abs(t) <= 1.0:
        return poisson_plane(zx, zy, t)
    return cauchy_mod_plane(m, zx, zy, t).imag


def green_plane(zx, zy, wx, wy):
    return e_plane(zx - wx, zy - wy) - e_plane(zx - wx, zy + wy)


def green_mod_plane(m, zx, zy, wx, wy):
    """Modified Green function of order m on the half-plane.

    For |w| > 1 the correction is (1/pi) sum_{k=1..m} Im(z^k) Im(w^-k)/k; for
    |z|/|w| < 1/2 the kernel equals the k > m tail of the same series, summed
    directly to dodge cancellation.
    """
    aw2 = wx * wx + wy * wy
    if aw2 <= 1.0:
        return green_plane(zx, zy, wx, wy)
    z = complex(zx, zy)
    winv = complex(wx, -wy) / aw2
    s = abs(z) * abs(winv)
    if s < _SERIES_CUTOFF:
        zp = z
        wp = winv
        for _ in range(m):
            zp *= z
            wp *= winv
        acc = 0.0
        k = m + 1
        sk = s ** k
        while k < 800:
            acc += zp.imag * wp.imag / k
            sk *= s
            if sk / (1.0 - s) < 1e-18 * (1.0 + abs(acc)):
                break
            zp *= z
            wp *= winv
            k += 1
        return acc / math.pi
    acc = 0.0
    zp = complex(1.0, 0.0)
    wp = complex(1.0, 0.0)
    for k in range(1, m + 1):
        zp *= z
        wp *= winv
        acc += zp.imag * wp.imag / k
    return green_plane(zx, zy, wx, wy) - acc / math.pi


# ----------------------------------------------------------------------
# Half-space kernels, n >= 3.  Points are indexable float sequences.

def gamma_half(twice):
    """Gamma(twice/2) for integer ``twice`` >= 1 via the half-integer recursion."""
    if twice % 2 == 0:
        out = 1.0
        for j in range(1, twice // 2):
            out *= j
        return out
    out = math.sqrt(math.pi)
    half = 0.5
    for _ in range((twice - 1) // 2):
        out *= half
        half += 1.0
    return out


def omega_n(n):
    """Surface area of the unit sphere in R^n: 2*pi^{n/2}/Gamma(n/2)."""
    return 2.0 * math.pi ** (n / 2.0) / gamma_half(n)


def r_n(n):
    return 1.0 / ((n - 2.0) * omega_n(n))


def _norm(v, n):
    s = 0.0
    for i in range(n):
        s += v[i] * v[i]
    return math.sqrt(s)


def _dist(a, b, n):
    s = 0.0
    for i in range(n):
        d = a[i] - b[i]
        s += d * d
    return math.sqrt(s)


def _dist_reflected(a, b, n):
    """|a - b*| with b* the boundary reflection of b."""
    s = 0.0
    for i in range(n - 1):
        d = a[i] - b[i]
        s += d * d
    d = a[n - 1] + b[n - 1]
    return math.sqrt(s + d * d)


def e_space(n, diff):
    """Fundamental solution -r_n |diff|^{2-n}."""
    return -r_n(n) * _norm(diff, n) ** (2 - n)


def green_space(n, x, y):
    rn = r_n(n)
    return -rn * _dist(x, y, n) ** (2 - n) + rn * _dist_reflected(x, y, n) ** (2 - n)


def poisson_space(n, x, yp):
    s = 0.0
    for i in range(n - 1):
        d = x[i] - yp[i]
        s += d * d
    xn = x[n - 1]
    s += xn * xn
    return 2.0 * xn / (omega_n(n) * s ** (n / 2.0))


def _cos_angle_boundary(x, yp, n, ax, ny):
    """Clamped cosine between x and the boundary point (yp, 0)."""
    dot = 0.0
    for i in range(n - 1):
        dot += x[i] * yp[i]
    t = dot / (ax * ny)
    return min(1.0, max(-1.0, t))


def _cos_angle(x, y, n, ax, ny):
    dot = 0.0
    for i in range(n):
        dot += x[i] * y[i]
    t = dot / (ax * ny)
    return min(1.0, max(-1.0, t))


def poisson_mod_space(n, m, x, yp):
    """Modified half-space Poisson kernel of order m.

    Subtracts the first m Gegenbauer terms (lam = n/2) of the expansion of P
    for |y'| > 1; for |x|/|y'| < 1/2 the k >= m tail is summed instead.
    """
    if m == 0:
        return poisson_space(n, x, yp)
    ny = _norm(yp, n - 1)
    if ny <= 1.0:
        return poisson_space(n, x, yp)
    ax = _norm(x, n)
    xn = x[n - 1]
    pref = 2.0 * xn / (omega_n(n) * ny ** n)
    if ax == 0.0:
        # only the k = 0 term survives; it is subtracted for m >= 1
        return poisson_space(n, x, yp) - pref
    t = _cos_angle_boundary(x, yp, n, ax, ny)
    s = ax / ny
    if s < _SERIES_CUTOFF:
        return pref * _geg_tail_sum(n / 2.0, m, t, s)
    lam = n / 2.0
    acc = 0.0
    c_prev = 0.0
    c = 1.0
    sk = 1.0
    for k in range(m):
        if k == 1:
            c_prev, c = c, 2.0 * lam * t
        elif k >= 2:
            c_prev, c = c, (2.0 * (k + lam - 1.0) * t * c - (k + 2.0 * lam - 2.0) * c_prev) / k
        acc += sk * c
        sk *= s
    return poisson_space(n, x, yp) - pref * acc


def e_mod_space(n, m, x, y):
    """Modified fundamental solution E_m for the pair (x, y).

    E(x-y) for |y| <= 1; for |y| > 1 adds the first m Gegenbauer terms
    (lam = (n-2)/2) of the expansion of E, so that the result equals the
    k >= m tail of -r_n sum_k C_k^lam |x|^k/|y|^{n-2+k}.
    """
    rn = r_n(n)
    base = -rn * _dist(x, y, n) ** (2 - n)
    if m == 0:
        return base
    ny = _norm(y, n)
    if ny <= 1.0:
        return base
    ax = _norm(x, n)
    pref = rn / ny ** (n - 2)
    if ax == 0.0:
        return base + pref
    lam = (n - 2.0) / 2.0
    t = _cos_angle(x, y, n, ax, ny)
    s = ax / ny
    if s < _SERIES_CUTOFF:
        return -pref * _geg_tail_sum(lam, m, t, s)
    acc = 0.0
    c_prev = 0.0
    c = 1.0
    sk = 1.0
    for k in range(m):
        if k == 1:
            c_prev, c = c, 2.0 * lam * t
        elif k >= 2:
            c_prev, c = c, (2.0 * (k + lam - 1.0) * t * c - (k + 2.0 * lam - 2.0) * c_prev) / k
        acc += sk * c
        sk *= s
    return base + pref * acc


def green_mod_space(n, m, x, y):
    """Modified half-space Green function via the order-(m+1) E correction."""
    ystar = [y[i] for i in range(n)]
    ystar[n - 1] = -ystar[n - 1]
    return e_mod_space(n, m + 1, x, y) - e_mod_space(n, m + 1, x, ystar)
