# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Taylor-series kernel; mirrors ``_taylor_py`` operation by operation."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, pow, INFINITY

cnp.import_array()


cdef void _coeffs(double x0, double p0, double dp0, double mu, int n,
                  double* a, double* q, double* b, bint lin) noexcept nogil:
    cdef int k, j
    cdef double s, c, r, c2, r2
    for k in range(n + 1):
        a[k] = 0.0
        q[k] = 0.0
    a[0] = p0
    a[1] = dp0
    for k in range(n - 1):
        s = 0.0
        for j in range(k + 1):
            s += a[j] * a[k - j]
        q[k] = s
        c = 0.0
        for j in range(k + 1):
            c += q[j] * a[k - j]
        r = x0 * a[k] - 2.0 * c
        if k > 0:
            r += a[k - 1]
        else:
            r += 0.5 * mu
        a[k + 2] = r / ((k + 1) * (k + 2))
        if lin:
            c2 = 0.0
            for j in range(k + 1):
                c2 += q[j] * b[k - j]
            r2 = x0 * b[k] - 6.0 * c2
            if k > 0:
                r2 += b[k - 1]
            b[k + 2] = r2 / ((k + 1) * (k + 2))


cdef double _step(double* a, double tol, int n) noexcept nogil:
    cdef double sc = fabs(a[0])
    cdef double h = INFINITY
    cdef double aj, hj
    cdef int j
    if sc < 1.0:
        sc = 1.0
    for j in range(n - 1, n + 1):
        aj = fabs(a[j])
        if aj != 0.0:
            hj = pow(tol * sc / aj, 1.0 / j)
            if hj < h:
                h = hj
    return 0.9 * h


cdef void _horner(double* a, double h, int n, double* v, double* d) noexcept nogil:
    cdef double vv = 0.0, dd = 0.0
    cdef int j
    for j in range(n, -1, -1):
        vv = vv * h + a[j]
    for j in range(n, 0, -1):
        dd = dd * h + j * a[j]
    v[0] = vv
    d[0] = dd


def taylor_coeffs(double x0, double p0, double dp0, double mu, int order, y0=None, dy0=None):
    cdef bint lin = y0 is not None
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.zeros(order + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q = np.zeros(order + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.zeros(order + 1)
    if lin:
        b[0] = y0
        b[1] = dy0
    _coeffs(x0, p0, dp0, mu, order, &a[0], &q[0], &b[0], lin)
    return (list(a), list(b)) if lin else (list(a), None)


def taylor_integrate(double x0, double x1, double p0, double dp0, double mu, double tol,
                     int order, double hmax, y0=None, dy0=None, double blowup=1e6):
    cdef double sgn = 1.0 if x1 > x0 else -1.0
    cdef bint lin = y0 is not None
    cdef int n = order
    cdef int cap = 256
    cdef int m = 0
    cdef double x = x0, p = p0, dp = dp0, y = 0.0, dy = 0.0
    cdef double h, rem
    cdef bint last
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q = np.zeros(n + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.zeros((cap, n + 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] B = np.zeros((cap if lin else 1, n + 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.zeros(cap + 1)
    cdef double* arow
    cdef double* brow
    if lin:
        y = y0
        dy = dy0
    xs[0] = x0
    while (x1 - x) * sgn > 0.0:
        if m == cap:
            cap *= 2
            A = np.concatenate([A, np.zeros((cap - m, n + 1))])
            if lin:
                B = np.concatenate([B, np.zeros((cap - m, n + 1))])
            xs = np.concatenate([xs, np.zeros(cap - m)])
        arow = &A[m, 0]
        brow = &B[m if lin else 0, 0]
        if lin:
            brow[0] = y
            brow[1] = dy
        _coeffs(x, p, dp, mu, n, arow, &q[0], brow, lin)
        h = _step(arow, tol, n)
        if h > hmax:
            h = hmax
        rem = (x1 - x) * sgn
        last = h >= rem
        if last:
            h = rem
        h *= sgn
        _horner(arow, h, n, &p, &dp)
        if lin:
            _horner(brow, h, n, &y, &dy)
        x = x1 if last else x + h
        m += 1
        xs[m] = x
        if not (fabs(p) <= blowup):
            raise OverflowError(x)
    return (xs[:m + 1].copy(), A[:m].copy(), B[:m].copy() if lin else None, (p, dp, y, dy))
