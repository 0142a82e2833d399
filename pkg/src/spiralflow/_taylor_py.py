"""Pure-Python Taylor-series kernel for p'' = x p - 2 p^3 + mu/2.

Arithmetic is ordered exactly as in ``_taylor_c.pyx`` so both backends
produce identical floats.
"""

from __future__ import annotations

import math

import numpy as np


def taylor_coeffs(x0, p0, dp0, mu, order, y0=None, dy0=None):
    """Taylor coefficients of p (and optionally of the variational mode Y) at x0.

    Y solves the linearisation Y'' = (x - 6 p^2) Y about p.
    """
    n = order
    a = [0.0] * (n + 1)
    q = [0.0] * (n + 1)
    a[0] = p0
    a[1] = dp0
    lin = y0 is not None
    if lin:
        b = [0.0] * (n + 1)
        b[0] = y0
        b[1] = dy0
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
    return (a, b) if lin else (a, None)


def _step_size(a, tol, n):
    sc = max(1.0, abs(a[0]))
    h = math.inf
    for j in (n - 1, n):
        aj = abs(a[j])
        if aj != 0.0:
            h = min(h, (tol * sc / aj) ** (1.0 / j))
    return 0.9 * h


def _horner(a, h, n):
    v = 0.0
    d = 0.0
    for j in range(n, -1, -1):
        v = v * h + a[j]
    for j in range(n, 0, -1):
        d = d * h + j * a[j]
    return v, d


def taylor_integrate(x0, x1, p0, dp0, mu, tol, order, hmax, y0=None, dy0=None, blowup=1e6):
    """Integrate from x0 to x1 (either direction).

    Returns ``(xs, A, B, end)`` where ``xs`` holds the step origins followed by
    the final abscissa, ``A[i]`` are the coefficients of p about ``xs[i]``,
    ``B`` those of Y (or None) and ``end = (p, dp, y, dy)`` at x1.  Raises
    ``OverflowError`` carrying the abscissa when |p| exceeds ``blowup``.
    """
    sgn = 1.0 if x1 > x0 else -1.0
    lin = y0 is not None
    xs = [x0]
    rows_a = []
    rows_b = []
    x = x0
    p, dp = p0, dp0
    y, dy = (y0, dy0) if lin else (0.0, 0.0)
    n = order
    while (x1 - x) * sgn > 0.0:
        a, b = taylor_coeffs(x, p, dp, mu, n, y if lin else None, dy)
        h = _step_size(a, tol, n)
        if h > hmax:
            h = hmax
        rem = (x1 - x) * sgn
        last = h >= rem
        if last:
            h = rem
        h *= sgn
        p, dp = _horner(a, h, n)
        if lin:
            y, dy = _horner(b, h, n)
            rows_b.append(b)
        rows_a.append(a)
        x = x1 if last else x + h
        xs.append(x)
        if not (abs(p) <= blowup):
            raise OverflowError(x)
    A = np.array(rows_a, dtype=np.float64).reshape(len(rows_a), n + 1)
    B = np.array(rows_b, dtype=np.float64).reshape(len(rows_b), n + 1) if lin else None
    return np.array(xs, dtype=np.float64), A, B, (p, dp, y, dy)
