# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core: Cython twin of ``hspot._corepy``.

Function-for-function identical semantics and signatures; see the pure
module for the reference documentation.  Space points must arrive as
C-contiguous float64 buffers (the public wrappers guarantee this).
"""

from libc.math cimport sqrt, log, pi, fmin, fmax

BACKEND = "compiled"

cdef double _TWO_PI = 2.0 * pi
cdef double _SERIES_CUTOFF = 0.5


# ----------------------------------------------------------------------
# Gegenbauer polynomials

cpdef double geg_eval(double lam, int k, double t):
    cdef double c_prev, c, tmp
    cdef int j
    if k == 0:
        return 1.0
    c_prev = 1.0
    c = 2.0 * lam * t
    for j in range(2, k + 1):
        tmp = (2.0 * (j + lam - 1.0) * t * c - (j + 2.0 * lam - 2.0) * c_prev) / j
        c_prev = c
        c = tmp
    return c


cpdef double geg_one(double lam, int k):
    cdef double out = 1.0
    cdef int j
    for j in range(k):
        out *= (2.0 * lam + j) / (j + 1.0)
    return out


cpdef double geg_deriv(double lam, int k, double t):
    return 2.0 * lam * geg_eval(lam + 1.0, k - 1, t)


cdef double _geg_tail_sum(double lam, int m, double t, double s):
    cdef double ck = geg_eval(lam, m, t)
    cdef double ck1 = geg_eval(lam, m + 1, t)
    cdef double gk = geg_one(lam, m)
    cdef double sk = s ** m
    cdef double acc = 0.0
    cdef double q, tmp
    cdef int k = m, kk
    while k < 800:
        acc += ck * sk
        q = s * (k + 2.0 * lam) / (k + 1.0)
        if q < 0.97:
            if gk * sk * q / (1.0 - q) < 1e-18 * (1.0 + (acc if acc >= 0 else -acc)):
                break
        kk = k + 1
        tmp = (2.0 * (kk + lam) * t * ck1 - (kk + 2.0 * lam - 1.0) * ck) / (kk + 1.0)
        ck = ck1
        ck1 = tmp
        gk *= (2.0 * lam + k) / (k + 1.0)
        sk *= s
        k += 1
    return acc


# ----------------------------------------------------------------------
# Half-plane kernels

cpdef double e_plane(double dx, double dy):
    return log(sqrt(dx * dx + dy * dy)) / _TWO_PI


cpdef double poisson_plane(double zx, double zy, double t):
    cdef double d2 = (zx - t) * (zx - t) + zy * zy
    return zy / (pi * d2)


cpdef complex cauchy_mod_plane(int m, double zx, double zy, double t):
    cdef double complex z = zx + 1j * zy
    cdef double complex zp
    cdef double tp
    cdef int k
    if t * t <= 1.0:
        return 1.0 / (pi * (t - z))
    zp = z
    tp = t
    for k in range(m):
        zp = zp * z
        tp = tp * t
    return zp / (pi * tp * (t - z))


cpdef double poisson_mod_plane(int m, double zx, double zy, double t):
    if t * t <= 1.0:
        return poisson_plane(zx, zy, t)
    return cauchy_mod_plane(m, zx, zy, t).imag


cpdef double green_plane(double zx, double zy, double wx, double wy):
    return e_plane(zx - wx, zy - wy) - e_plane(zx - wx, zy + wy)


cpdef double green_mod_plane(int m, double zx, double zy, double wx, double wy):
    cdef double aw2 = wx * wx + wy * wy
    cdef double complex z, winv, zp, wp
    cdef double s, acc, sk
    cdef int k
    if aw2 <= 1.0:
        return green_plane(zx, zy, wx, wy)
    z = zx + 1j * zy
    winv = (wx - 1j * wy) / aw2
    s = abs(z) * abs(winv)
    if s < _SERIES_CUTOFF:
        zp = z
        wp = winv
        for k in range(m):
            zp = zp * z
            wp = wp * winv
        acc = 0.0
        k = m + 1
        sk = s ** k
        while k < 800:
            acc += zp.imag * wp.imag / k
            sk *= s
            if sk / (1.0 - s) < 1e-18 * (1.0 + (acc if acc >= 0 else -acc)):
                break
            zp = zp * z
            wp = wp * winv
            k += 1
        return acc / pi
    acc = 0.0
    zp = 1.0
    wp = 1.0
    for k in range(1, m + 1):
        zp = zp * z
        wp = wp * winv
        acc += zp.imag * wp.imag / k
    return green_plane(zx, zy, wx, wy) - acc / pi


# ----------------------------------------------------------------------
# Half-space kernels

cpdef double gamma_half(int twice):
    cdef double out, half
    cdef int j
    if twice % 2 == 0:
        out = 1.0
        for j in range(1, twice // 2):
            out *= j
        return out
    out = sqrt(pi)
    half = 0.5
    for j in range((twice - 1) // 2):
        out *= half
        half += 1.0
    return out


cpdef double omega_n(int n):
    return 2.0 * pi ** (n / 2.0) / gamma_half(n)


cpdef double r_n(int n):
    return 1.0 / ((n - 2.0) * omega_n(n))


cdef inline double _norm_mv(double[::1] v, int n):
    cdef double s = 0.0
    cdef int i
    for i in range(n):
        s += v[i] * v[i]
    return sqrt(s)


cdef inline double _dist_mv(double[::1] a, double[::1] b, int n):
    cdef double s = 0.0, d
    cdef int i
    for i in range(n):
        d = a[i] - b[i]
        s += d * d
    return sqrt(s)


cdef inline double _dist_reflected_mv(double[::1] a, double[::1] b, int n):
    cdef double s = 0.0, d
    cdef int i
    for i in range(n - 1):
        d = a[i] - b[i]
        s += d * d
    d = a[n - 1] + b[n - 1]
    return sqrt(s + d * d)


cpdef double e_space(int n, double[::1] diff):
    return -r_n(n) * _norm_mv(diff, n) ** (2 - n)


cpdef double green_space(int n, double[::1] x, double[::1] y):
    cdef double rn = r_n(n)
    return -rn * _dist_mv(x, y, n) ** (2 - n) + rn * _dist_reflected_mv(x, y, n) ** (2 - n)


cpdef double poisson_space(int n, double[::1] x, double[::1] yp):
    cdef double s = 0.0, d, xn
    cdef int i
    for i in range(n - 1):
        d = x[i] - yp[i]
        s += d * d
    xn = x[n - 1]
    s += xn * xn
    return 2.0 * xn / (omega_n(n) * s ** (n / 2.0))


cdef double _cos_angle_boundary(double[::1] x, double[::1] yp, int n, double ax, double ny):
    cdef double dot = 0.0
    cdef int i
    for i in range(n - 1):
        dot += x[i] * yp[i]
    return fmin(1.0, fmax(-1.0, dot / (ax * ny)))


cdef double _cos_angle(double[::1] x, double[::1] y, int n, double ax, double ny):
    cdef double dot = 0.0
    cdef int i
    for i in range(n):
        dot += x[i] * y[i]
    return fmin(1.0, fmax(-1.0, dot / (ax * ny)))


cpdef double poisson_mod_space(int n, int m, double[::1] x, double[::1] yp):
    cdef double ny, ax, xn, pref, t, s, lam, acc, c_prev, c, sk, tmp
    cdef int k
    if m == 0:
        return poisson_space(n, x, yp)
    ny = _norm_mv(yp, n - 1)
    if ny <= 1.0:
        return poisson_space(n, x, yp)
    ax = _norm_mv(x, n)
    xn = x[n - 1]
    pref = 2.0 * xn / (omega_n(n) * ny ** n)
    if ax == 0.0:
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
            c_prev = c
            c = 2.0 * lam * t
        elif k >= 2:
            tmp = (2.0 * (k + lam - 1.0) * t * c - (k + 2.0 * lam - 2.0) * c_prev) / k
            c_prev = c
            c = tmp
        acc += sk * c
        sk *= s
    return poisson_space(n, x, yp) - pref * acc


cpdef double e_mod_space(int n, int m, double[::1] x, double[::1] y):
    cdef double rn, base, ny, ax, pref, lam, t, s, acc, c_prev, c, sk, tmp
    cdef int k
    rn = r_n(n)
    base = -rn * _dist_mv(x, y, n) ** (2 - n)
    if m == 0:
        return base
    ny = _norm_mv(y, n)
    if ny <= 1.0:
        return base
    ax = _norm_mv(x, n)
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
            c_prev = c
            c = 2.0 * lam * t
        elif k >= 2:
            tmp = (2.0 * (k + lam - 1.0) * t * c - (k + 2.0 * lam - 2.0) * c_prev) / k
            c_prev = c
            c = tmp
        acc += sk * c
        sk *= s
    return base + pref * acc


cpdef double green_mod_space(int n, int m, double[::1] x, double[::1] y):
    cdef double[5] buf
    cdef int i
    for i in range(n):
        buf[i] = y[i]
    buf[n - 1] = -buf[n - 1]
    cdef double[::1] ystar = buf
    return e_mod_space(n, m + 1, x, y) - e_mod_space(n, m + 1, x, ystar[:n])
