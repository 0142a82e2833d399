"""Expansions of the profile g and of z(t, x) near the singular corner.

On S+ = {t^{1/3} <= c x}:
    z = e^{-i mu ln x} (A0 x + A1 t x^-2 + A2 t^2 x^-5) + R+,   |R+| <~ t^3 x^-8
On S- = {t^{1/3} <= c |x|, x < 0}:
    z = e^{-i mu ln|x|} (B0 x + B1 t^{1/2}|x|^-1/2 + B2 t^{3/4}|x|^-5/4 osc(Psi)) + R-,
    |R-| <~ t x^-2

The oscillatory factor defaults to sin; see ``expansion_minus``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAmplitude, RegionViolation
from .flow import CBRT3, FlowSolution, evaluate_z, psi_scaled
from .monodromy import ConnectionConstants, SpiralParams

C_REGION = 0.5
SQRT3 = math.sqrt(3.0)
QRT3 = 3.0**0.25


@dataclass(frozen=True)
class PlusCoefficients:
    """A0..A2 (with phase ``theta``) and the tilde set with phase ``theta_tilde``."""

    A0: complex
    A1: complex
    A2: complex
    a2: complex
    a5: complex
    At0: complex
    At1: complex
    At2: complex
    theta: float
    theta_tilde: float

    def to_dict(self) -> dict:
        return _complex_dict(self)


@dataclass(frozen=True)
class MinusCoefficients:
    """B0..B2, the tilde set and the proof intermediates D1..D3.

    D3 is built from g_- = B~0.  With d = 0 the oscillatory coefficients are
    zero and ``degenerate`` is set.
    """

    B0: complex
    B1: complex
    B2: complex
    Bt0: complex
    Bt1: complex
    Bt2: complex
    D1: complex
    D2: complex
    D3: complex
    cc: ConnectionConstants
    theta_tilde: float
    degenerate: bool

    def oscillatory(self) -> complex:
        """B2, refusing the degenerate case where Psi has no phase."""
        if self.degenerate:
            raise DegenerateAmplitude("d = 0: there is no oscillatory coefficient")
        return self.B2

    def to_dict(self) -> dict:
        return _complex_dict(self)


def _complex_dict(obj) -> dict:
    out = {}
    for k, v in vars(obj).items():
        if isinstance(v, complex):
            out[k] = [v.real, v.imag]
        elif isinstance(v, ConnectionConstants):
            out[k] = v.to_dict()
        else:
            out[k] = v
    return out


def _plus_ratios(mu: float) -> tuple[complex, complex, complex, complex]:
    a2 = complex(mu * mu / 2.0, mu)
    a5 = (4.0 + mu * mu) * complex(1.5 * mu * mu, 6.0 * mu)
    r1 = complex(-1.0, mu) * a2
    r2 = complex(-0.5, mu / 2.0) * (a5 + a2 * a2 * complex(2.0, mu))
    return a2, a5, r1, r2


def coeffs_plus(
    params: SpiralParams, *, theta: float | None = None, theta_tilde: float | None = None
) -> PlusCoefficients:
    """Coefficients on S+.

    ``theta`` overrides theta_+ in A0 (used to build coefficients from a
    computed profile); ``theta_tilde`` defaults to ``theta``.
    """
    mu = params.mu
    th = params.theta_plus if theta is None else theta
    tt = th if theta_tilde is None else theta_tilde
    a2, a5, r1, r2 = _plus_ratios(mu)
    m = 1.0 / math.sqrt(1.0 + mu * mu)
    A0 = m * complex(math.cos(th), math.sin(th))
    At0 = m * complex(math.cos(tt), math.sin(tt))
    return PlusCoefficients(A0, r1 * A0, r2 * A0, a2, a5, At0, r1 * At0, r2 * At0, th, tt)


def coeffs_minus(
    params: SpiralParams, cc: ConnectionConstants, *, theta_tilde: float | None = None
) -> MinusCoefficients:
    """Coefficients on S-; the tilde set uses ``theta_tilde`` (default theta_-)."""
    mu = params.mu
    tt = params.theta_minus if theta_tilde is None else theta_tilde
    m = 1.0 / math.sqrt(1.0 + mu * mu)
    B0 = m * complex(math.cos(params.theta_minus), math.sin(params.theta_minus))
    Bt0 = m * complex(math.cos(tt), math.sin(tt))
    d = cc.d
    d2 = cc.d_sq
    B1 = 2.0 * SQRT3 * d2 * complex(1.0, -mu) * B0
    Bt1 = 2.0 * SQRT3 * d2 * complex(-1.0, mu) * Bt0
    D1 = complex(2.0 * d2 / SQRT3)
    D2 = 4j * mu * d / QRT3
    D3 = 2.0 * complex(1.0, -mu) * Bt0 * d / QRT3
    if cc.degenerate:
        B2 = Bt2 = 0j
    else:
        B2 = -QRT3 / d * B1
        Bt2 = -QRT3 / d * Bt1
    return MinusCoefficients(B0, B1, B2, Bt0, Bt1, Bt2, D1, D2, D3, cc, tt, cc.degenerate)


def phase_psi(x, cc: ConnectionConstants):
    """Psi(x) = (2/3)(-x/3^{1/3})^{3/2} - (3/4) d^2 ln(-x/3^{1/3}) + phi for x < 0."""
    xa = np.asarray(x, dtype=np.float64)
    if np.any(xa >= 0.0):
        raise ValueError("Psi is defined for x < 0")
    phi = 0.0 if cc.degenerate else cc.phi
    out = psi_scaled(xa, cc.d_sq_neg, phi)
    return out if out.ndim else float(out)


def in_region(t, x, side: int, c_region: float = C_REGION):
    """Membership of (t, x) in S+ (side=+1) or S- (side=-1)."""
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    return (t > 0.0) & (side * x > 0.0) & (np.cbrt(t) <= c_region * np.abs(x))


def _require(t, x, side: int, c_region: float):
    if not np.all(in_region(t, x, side, c_region)):
        name = "S+" if side > 0 else "S-"
        raise RegionViolation(f"(t, x) outside {name} with t^(1/3) <= {c_region:g}|x|")


def expansion_plus(
    params: SpiralParams,
    cc: ConnectionConstants | None,
    t,
    x,
    *,
    c_region: float = C_REGION,
    coeffs: PlusCoefficients | None = None,
):
    """Three-term expansion of z on S+.  ``cc`` is unused (kept for symmetry)."""
    _require(t, x, +1, c_region)
    co = coeffs_plus(params) if coeffs is None else coeffs
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    out = np.exp(-1j * params.mu * np.log(x)) * (
        co.A0 * x + co.A1 * t * x**-2.0 + co.A2 * t * t * x**-5.0
    )
    return out if out.ndim else complex(out)


def expansion_minus(
    params: SpiralParams,
    cc: ConnectionConstants,
    t,
    x,
    *,
    c_region: float = C_REGION,
    coeffs: MinusCoefficients | None = None,
    osc=np.sin,
):
    """Three-term expansion of z on S-.

    The oscillatory factor is ``osc(Psi(t^{-1/3} x))``.  The computed flow
    follows sin (the form the derivation produces); pass ``osc=np.cos`` for
    the alternative.  With d = 0 the term is dropped.
    """
    _require(t, x, -1, c_region)
    co = coeffs_minus(params, cc) if coeffs is None else coeffs
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    s = -x
    body = co.B0 * x + co.B1 * np.sqrt(t) * s**-0.5
    if not co.degenerate:
        body = body + co.B2 * t**0.75 * s**-1.25 * osc(phase_psi(x / np.cbrt(t), cc))
    out = np.exp(-1j * params.mu * np.log(s)) * body
    return out if out.ndim else complex(out)


def g_expansions(
    params: SpiralParams,
    cc: ConnectionConstants,
    x,
    *,
    thetas: tuple[float, float] | None = None,
    osc=np.sin,
    x_min: float = 8.0,
):
    """Three-term expansion of g on either side (|x| >= x_min).

    ``thetas`` are (theta~+, theta~-), normally taken from a FlowSolution.
    """
    xa = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(xa) < x_min):
        raise RegionViolation(f"g expansions need |x| >= {x_min:g}")
    tp, tm = (params.theta_plus, params.theta_minus) if thetas is None else thetas
    cp = coeffs_plus(params, theta_tilde=tp)
    cm = coeffs_minus(params, cc, theta_tilde=tm)
    s = np.abs(xa)
    right = cp.At0 + cp.At1 * s**-3.0 + cp.At2 * s**-6.0
    left = cm.Bt0 + cm.Bt1 * s**-1.5
    if not cm.degenerate:
        left = left + cm.Bt2 * s**-2.25 * osc(phase_psi(-s, cc))
    out = np.where(xa > 0.0, right, left)
    return out if out.ndim else complex(out)


def flow_coefficients(fs: FlowSolution) -> tuple[PlusCoefficients, MinusCoefficients]:
    """Coefficients carried by a computed flow.

    e^{i beta} A~k uses the extracted theta~+ so that the small numerical
    mismatch of theta~+ - theta~- does not masquerade as a remainder.
    On S- the rotation maps -e^{i beta} B~k to Bk exactly.
    """
    tp = fs.theta_tilde_plus + fs.beta
    cp = coeffs_plus(fs.params, theta=tp, theta_tilde=fs.theta_tilde_plus)
    cm = coeffs_minus(fs.params, fs.sol.cc, theta_tilde=fs.theta_tilde_minus)
    return cp, cm


# ---------------------------------------------------------------------------
# remainder monitors


@dataclass(frozen=True)
class RemainderReport:
    """Ratios |R|/scale on a (t, x) grid with a log-log trend in x."""

    side: int
    t: np.ndarray
    x: np.ndarray
    remainder: np.ndarray
    ratio: np.ndarray
    slope: float

    @property
    def sup(self) -> float:
        return float(np.max(self.ratio)) if self.ratio.size else 0.0

    @property
    def n_points(self) -> int:
        return int(self.ratio.size)

    def summary(self) -> dict:
        return {"sup": self.sup, "slope": self.slope, "n_points": self.n_points}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "x", "ratio"])
        for t, x, r in zip(self.t, self.x, self.ratio):
            w.writerow([format(float(t), ".17g"), format(float(x), ".17g"), format(float(r), ".17g")])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def remainder_scale(side: int, t, x):
    """t^3 x^-8 on S+ and t x^-2 on S-."""
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    return t**3 * x**-8.0 if side > 0 else t * x**-2.0


def remainder_values(fs: FlowSolution, side: int, t, x, *, c_region: float = C_REGION, osc=np.sin):
    """|z - expansion| with the coefficients carried by ``fs``."""
    cp, cm = flow_coefficients(fs)
    z = evaluate_z(fs, t, x)
    if side > 0:
        e = expansion_plus(fs.params, fs.sol.cc, t, x, c_region=c_region, coeffs=cp)
    else:
        e = expansion_minus(fs.params, fs.sol.cc, t, x, c_region=c_region, coeffs=cm, osc=osc)
    return np.abs(np.asarray(z) - np.asarray(e))


def loglog_slope(x, r) -> float:
    """Least-squares slope of log r against log|x| (non-positive r dropped)."""
    x = np.abs(np.asarray(x, dtype=np.float64))
    r = np.asarray(r, dtype=np.float64)
    ok = (r > 0.0) & np.isfinite(r)
    if np.count_nonzero(ok) < 2 or np.ptp(np.log(x[ok])) == 0.0:
        return math.nan
    return float(np.polyfit(np.log(x[ok]), np.log(r[ok]), 1)[0])


def envelope_slope(x, r, *, bins: int = 8) -> float:
    """Slope of the running maximum of r over equal log|x| bins.

    Oscillatory remainders are compared through their envelopes.
    """
    x = np.abs(np.asarray(x, dtype=np.float64))
    r = np.asarray(r, dtype=np.float64)
    lx = np.log(x)
    edges = np.linspace(lx.min(), lx.max(), bins + 1)
    px, pr = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        m = (lx >= a) & (lx <= b)
        if np.any(m):
            k = np.argmax(np.where(m, r, -np.inf))
            px.append(x[k])
            pr.append(r[k])
    return loglog_slope(px, pr)


def remainder_report(
    fs: FlowSolution,
    params: SpiralParams | None,
    cc: ConnectionConstants | None,
    region_grid,
    *,
    side: int | None = None,
    c_region: float = C_REGION,
    osc=np.sin,
) -> RemainderReport:
    """Remainder ratios over ``region_grid = (t_values, x_values)`` (meshed).

    Points outside the chosen region are skipped.  ``params``/``cc`` default
    to those of ``fs``; ``side`` defaults to the sign of the x values.  The
    slope is the x-coefficient of a joint fit of log|R| on (log|x|, log t),
    taken on bin envelopes on S- where the remainder oscillates.
    """
    if params is not None and params != fs.params:
        raise ValueError("params differ from those of the flow solution")
    ts, xs = region_grid
    T, X = np.meshgrid(np.asarray(ts, dtype=np.float64), np.asarray(xs, dtype=np.float64), indexing="ij")
    T, X = T.ravel(), X.ravel()
    if side is None:
        side = 1 if np.all(X > 0) else -1
    keep = in_region(T, X, side, c_region)
    T, X = T[keep], X[keep]
    if T.size == 0:
        return RemainderReport(side, T, X, T.copy(), T.copy(), math.nan)
    R = remainder_values(fs, side, T, X, c_region=c_region, osc=osc)
    ratio = R / remainder_scale(side, T, X)
    slope = _trend(T, X, R, side)
    return RemainderReport(side, T, X, R, ratio, slope)


def _trend(T, X, R, side) -> float:
    if side < 0:
        slopes = []
        for t in np.unique(T):
            m = T == t
            if np.count_nonzero(m) >= 16:
                slopes.append(envelope_slope(X[m], R[m]))
        slopes = [s for s in slopes if np.isfinite(s)]
        return float(np.median(slopes)) if slopes else math.nan
    ok = R > 0.0
    if np.count_nonzero(ok) < 3:
        return math.nan
    cols = [np.log(np.abs(X[ok])), np.ones(np.count_nonzero(ok))]
    if np.ptp(T[ok]) > 0.0:
        cols.append(np.log(T[ok]))
    coef = np.linalg.lstsq(np.column_stack(cols), np.log(R[ok]), rcond=None)[0]
    return float(coef[0])


__all__ = [
    "C_REGION",
    "CBRT3",
    "MinusCoefficients",
    "PlusCoefficients",
    "RemainderReport",
    "coeffs_minus",
    "coeffs_plus",
    "envelope_slope",
    "expansion_minus",
    "expansion_plus",
    "flow_coefficients",
    "g_expansions",
    "in_region",
    "loglog_slope",
    "phase_psi",
    "remainder_report",
    "remainder_scale",
    "remainder_values",
]
