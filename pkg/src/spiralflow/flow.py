"""Self-similar curve-flow solution built from a Painleve II transcendent.

Notation: xi is the profile variable, y = xi / 3^{1/3} the Painleve variable
and P(y) the integral of p from 0 to y.  Then

    w_x(xi) = exp(2 i P(xi / 3^{1/3})),   |w_x| = 1,
    w(xi)   = int_0^xi w_x - C,
    g(xi)   = exp(i mu ln|xi|) w(xi) / xi,
    z(t, x) = e^{i beta} t^{1/3} e^{-i (mu/3) ln t} w(x t^{-1/3}).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GridTooShort, OutOfRange, ZeroArgument
from .monodromy import (
    SpiralParams,
    angle_distance,
    connection_constants_from_spiral,
    reduce_angle,
    solve_k,
)
from .pii import PiiSolution, SolverConfig, shoot_solution

CBRT3 = 3.0 ** (1.0 / 3.0)
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)
PANEL = 0.2
RIGHT_WINDOW = (25.0, 60.0)
RIGHT_EXTENT = 70.0  # in the Painleve variable; p is series + c Ai past R
LEFT_WINDOW = (50.0, 100.0)
LEFT_SAMPLES = 2000
RIGHT_SAMPLES = 400


@dataclass(frozen=True)
class FlowSolution:
    """Profile w and derived constants for one spiral.

    ``panels`` are the quadrature breakpoints in xi (0 is one of them) and
    ``outer_cumulative[k]`` is the integral of w_x from 0 to ``panels[k]``.
    """

    sol: PiiSolution
    params: SpiralParams
    panels: np.ndarray
    outer_cumulative: np.ndarray
    C_const: complex
    theta_tilde_plus: float
    theta_tilde_minus: float
    beta: float
    P0: float

    @property
    def mu(self) -> float:
        return self.params.mu

    @property
    def xi_min(self) -> float:
        return float(self.panels[0])

    @property
    def xi_max(self) -> float:
        return float(self.panels[-1])

    @property
    def phase_mismatch(self) -> float:
        """Distance of theta~+ - theta~- from theta+ - theta- modulo 2pi."""
        return angle_distance(self.theta_tilde_plus - self.theta_tilde_minus, self.params.delta)

    # -- Painleve-side quantities in the xi variable ---------------------------

    def inner_integral(self, xi):
        """I(xi) = int_0^xi u(s / 3^{1/3}) ds (purely imaginary)."""
        return 1j * CBRT3 * self._P(xi)

    def _y(self, xi):
        # xi_min / 3^{1/3} can round to just below -L
        return np.maximum(np.asarray(xi, dtype=np.float64) / CBRT3, self.sol.traj.x_min)

    def _P(self, xi):
        return self.sol.antiderivative_ext(self._y(xi)) - self.P0

    def w_x(self, xi):
        self._check(xi)
        return np.exp(2j * self._P(xi))

    def v(self, xi):
        """Scaled solution v = 2 u(xi / 3^{1/3}) / 3^{1/3}."""
        return 2j * self.sol.p_ext(self._y(xi)) / CBRT3

    def v_x(self, xi):
        return 2j * self.sol.p_ext(self._y(xi), 1) / CBRT3**2

    def _check(self, xi):
        a = np.asarray(xi, dtype=np.float64)
        if np.any(a < self.panels[0]) or np.any(a > self.panels[-1]) or np.any(~np.isfinite(a)):
            raise OutOfRange(
                f"profile variable outside the covered grid [{self.panels[0]:.6g}, {self.panels[-1]:.6g}]"
            )

    def to_summary(self) -> dict:
        return {
            "theta_plus": self.params.theta_plus,
            "theta_minus": self.params.theta_minus,
            "mu": self.params.mu,
            "C_re": self.C_const.real,
            "C_im": self.C_const.imag,
            "theta_tilde_plus": self.theta_tilde_plus,
            "theta_tilde_minus": self.theta_tilde_minus,
            "beta": self.beta,
            "phase_mismatch": self.phase_mismatch,
            "xi_range": [self.xi_min, self.xi_max],
        }


def _panel_grid(sol: PiiSolution, right_extent: float) -> np.ndarray:
    bp = sol.traj.breakpoints
    if right_extent > bp[-1]:
        bp = np.append(bp, right_extent)
    bp = np.union1d(bp * CBRT3, [0.0])
    pieces = [bp[:1]]
    for a, b in zip(bp[:-1], bp[1:]):
        m = max(1, int(math.ceil((b - a) / PANEL)))
        pieces.append(a + (b - a) * np.arange(1, m + 1) / m)
    out = np.concatenate(pieces)
    out[-1] = bp[-1]
    return out


def _gl_integral(fs_like, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gauss-Legendre integral of w_x over each [a_k, b_k]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = np.exp(2j * fs_like(nodes))
    return half * (vals @ _GL_WEIGHTS)


def constant_C(sol: PiiSolution) -> complex:
    """C_{alpha,k} = 2 3^{1/3} (u_x(0) - u(0)^2) / (1 - i mu)."""
    p0 = float(sol.traj.eval(0.0))
    dp0 = float(sol.traj.eval(0.0, 1))
    ux_minus_u2 = complex(p0 * p0, dp0)  # i p' - (i p)^2
    return 2.0 * CBRT3 * ux_minus_u2 / complex(1.0, -sol.mu)


def constant_C_profile(sol: PiiSolution) -> complex:
    """The constant written with (1 + 2 alpha) in the self-similar ansatz."""
    p0 = float(sol.traj.eval(0.0))
    dp0 = float(sol.traj.eval(0.0, 1))
    alpha = complex(0.0, -sol.mu / 2.0)
    return -2.0 * CBRT3 * complex(p0 * p0, dp0) / (1.0 + 2.0 * alpha)


def build_flow(
    sol: PiiSolution,
    params: SpiralParams,
    *,
    right_window: tuple[float, float] = RIGHT_WINDOW,
    left_window: tuple[float, float] = LEFT_WINDOW,
    right_extent: float = RIGHT_EXTENT,
) -> FlowSolution:
    """Cumulative quadrature for w, the constant C, theta~+- and beta.

    The profile covers xi in 3^{1/3} [-L, max(R, right_extent)].
    """
    P0 = float(sol.traj.antiderivative(0.0))
    panels = _panel_grid(sol, right_extent)

    def P(xi):
        return sol.antiderivative_ext(xi / CBRT3) - P0

    seg = _gl_integral(P, panels[:-1], panels[1:])
    cum = np.concatenate([[0j], np.cumsum(seg)])
    i0 = int(np.searchsorted(panels, 0.0))
    cum = cum - cum[i0]
    if not np.all(np.isfinite(cum)):
        raise FloatingPointError("non-finite value in the profile quadrature")
    C = constant_C(sol)
    fs = FlowSolution(sol, params, panels, cum, C, 0.0, 0.0, 0.0, P0)
    tp, tm = _extract_thetas(fs, right_window, left_window)
    beta = reduce_angle(params.theta_minus - tm)
    return FlowSolution(sol, params, panels, cum, C, tp, tm, beta, P0)


def compute_w(fs: FlowSolution, xi):
    """w(xi) from the cumulative table plus one Gauss-Legendre panel."""
    xa = np.asarray(xi, dtype=np.float64)
    flat = xa.ravel()
    fs._check(flat)
    k = np.searchsorted(fs.panels, flat, side="right") - 1
    k = np.clip(k, 0, len(fs.panels) - 2)
    a = fs.panels[k]
    part = _gl_integral(fs._P, a, flat)
    out = fs.outer_cumulative[k] + part - fs.C_const
    return out.reshape(xa.shape) if xa.ndim else complex(out[0])


def compute_g(fs: FlowSolution, xi):
    """g(xi) = exp(i mu ln|xi|) w(xi) / xi."""
    xa = np.asarray(xi, dtype=np.float64)
    if np.any(xa == 0.0):
        raise ZeroArgument("g is undefined at 0")
    return np.exp(1j * fs.mu * np.log(np.abs(xa))) * compute_w(fs, xa) / xa


def g_correction_plus(mu: float, xi):
    """1 + (A~1/A~0) xi^-3 + (A~2/A~0) xi^-6."""
    a2 = complex(mu * mu / 2.0, mu)
    r1 = complex(-1.0, mu) * a2
    r2 = complex(2.0, mu) * complex(mu * mu / 4.0 + 6.0, -mu) * r1
    xi = np.asarray(xi, dtype=np.float64)
    return 1.0 + r1 * xi**-3.0 + r2 * xi**-6.0


def psi_scaled(xi, d_sq_neg: float, phi: float):
    """Phase (2/3) s^{3/2} - (3/4) d^2 ln s + phi with s = -xi / 3^{1/3}."""
    s = -np.asarray(xi, dtype=np.float64) / CBRT3
    return 2.0 / 3.0 * s**1.5 + 0.75 * d_sq_neg * np.log(s) + phi


def g_correction_minus(mu: float, d_sq_neg: float, phi: float, xi, *, osc=np.sin):
    """1 + (B~1/B~0)|xi|^{-3/2} + (B~2/B~0)|xi|^{-9/4} osc(Psi(xi)).

    The oscillatory term is evaluated with ``osc``; its derivation produces
    sin, which is what the computed profile follows.
    """
    xi = np.asarray(xi, dtype=np.float64)
    s = -xi
    amp = math.sqrt(d_sq_neg)
    r1 = 2.0 * math.sqrt(3.0) * (-d_sq_neg) * complex(-1.0, mu)
    out = 1.0 + r1 * s**-1.5
    if amp > 0.0:
        r2 = -(3.0**0.25) / complex(0.0, amp) * r1
        out = out + r2 * s**-2.25 * osc(psi_scaled(xi, d_sq_neg, phi))
    return out


def _right_basis(xi: np.ndarray) -> np.ndarray:
    # constant plus the next two orders of the remainder
    return np.column_stack([np.ones_like(xi), xi**-9.0, xi**-12.0]).astype(complex)


def _left_basis(xi: np.ndarray, d_sq_neg: float, phi: float) -> np.ndarray:
    # constant plus the O(|xi|^-3) and O(|xi|^-15/4) harmonics of the remainder
    s = -xi
    e = np.exp(1j * psi_scaled(xi, d_sq_neg, phi))
    cols = [np.ones_like(s, dtype=complex)]
    cols += [s**-3.0, s**-3.0 * e**2, s**-3.0 / e**2]
    cols += [s**-3.75 * e, s**-3.75 / e, s**-3.75 * e**3, s**-3.75 / e**3]
    return np.column_stack(cols)


def _extract_thetas(
    fs: FlowSolution, right_window: tuple[float, float], left_window: tuple[float, float]
) -> tuple[float, float]:
    lo, hi = left_window
    rlo, rhi = right_window
    if fs.xi_max < rhi or fs.xi_min > -hi:
        raise GridTooShort(
            f"profile grid [{fs.xi_min:.4g}, {fs.xi_max:.4g}] does not reach "
            f"xi = {rhi:g} and xi = -{hi:g}"
        )
    cc = fs.sol.cc
    mu = fs.mu
    xr = np.linspace(rlo, rhi, RIGHT_SAMPLES)
    rr = compute_g(fs, xr) / g_correction_plus(mu, xr)
    gp = np.linalg.lstsq(_right_basis(xr), rr, rcond=None)[0][0]
    phi = 0.0 if cc.degenerate else cc.phi
    xi = np.linspace(-hi, -lo, LEFT_SAMPLES)
    r = compute_g(fs, xi) / g_correction_minus(mu, cc.d_sq_neg, phi, xi)
    gm = np.linalg.lstsq(_left_basis(xi, cc.d_sq_neg, phi), r, rcond=None)[0][0]
    return reduce_angle(math.atan2(gp.imag, gp.real)), reduce_angle(math.atan2(gm.imag, gm.real))


def tilde_thetas(fs: FlowSolution) -> tuple[float, float]:
    return fs.theta_tilde_plus, fs.theta_tilde_minus


def rotation_beta(params: SpiralParams, fs: FlowSolution) -> float:
    """beta = theta- - theta~- in [0, 2pi)."""
    return reduce_angle(params.theta_minus - fs.theta_tilde_minus)


def evaluate_z(fs: FlowSolution, t, x):
    """z(t, x) = e^{i beta} t^{1/3} e^{-i (mu/3) ln t} w(x t^{-1/3})."""
    t = np.asarray(t, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if np.any(t <= 0.0):
        raise ValueError("evaluate_z needs t > 0")
    t13 = np.cbrt(t)
    pref = np.exp(1j * (fs.beta - fs.mu / 3.0 * np.log(t))) * t13
    out = pref * compute_w(fs, x / t13)
    return out if out.ndim else complex(out)


def spiral_z0(params: SpiralParams, x):
    """Target double spiral z0(x)."""
    xa = np.asarray(x, dtype=np.float64)
    if np.any(xa == 0.0):
        raise ZeroArgument("z0 is undefined at 0")
    theta = np.where(xa > 0.0, params.theta_plus, params.theta_minus)
    out = xa / math.sqrt(1.0 + params.mu**2) * np.exp(1j * (theta - params.mu * np.log(np.abs(xa))))
    return out if out.ndim else complex(out)


def singularity_gap(fs: FlowSolution, params: SpiralParams, t, x):
    """|z(t,x) - z0(x)| / t^{1/3}."""
    t = np.asarray(t, dtype=np.float64)
    return np.abs(evaluate_z(fs, t, x) - spiral_z0(params, x)) / np.cbrt(t)


# ---------------------------------------------------------------------------
# one-call construction and the backward solution


def solve_flow(params: SpiralParams, config: SolverConfig | None = None) -> FlowSolution:
    """Monodromy data, Painleve solution and profile for one spiral."""
    md = solve_k(params)
    cc = connection_constants_from_spiral(params, allow_degenerate=True)
    sol = shoot_solution(md, cc, config=config)
    return build_flow(sol, params)


@dataclass(frozen=True)
class BackwardSolution:
    """z_-(t, x) = -zc(-t, -x) for t < 0, zc solving the swapped spiral."""

    params: SpiralParams
    swapped: FlowSolution

    def z(self, t, x):
        t = np.asarray(t, dtype=np.float64)
        if np.any(t >= 0.0):
            raise ValueError("the backward solution is defined for t < 0")
        return -evaluate_z(self.swapped, -t, -np.asarray(x, dtype=np.float64))

    def gap(self, t, x):
        t = np.asarray(t, dtype=np.float64)
        return np.abs(self.z(t, x) - spiral_z0(self.params, x)) / np.cbrt(np.abs(t))


def swapped_spiral_z0(params: SpiralParams, x):
    """The spiral with the arms exchanged."""
    return spiral_z0(params.swapped(), x)


def backward_solution(params: SpiralParams, config: SolverConfig | None = None) -> BackwardSolution:
    return BackwardSolution(params, solve_flow(params.swapped(), config))


# ---------------------------------------------------------------------------
# curve samples


@dataclass(frozen=True)
class CurveSample:
    """Points z(t, x) of one curve."""

    t: float
    xs: np.ndarray
    zs: np.ndarray

    def __post_init__(self):
        if self.xs.shape != self.zs.shape:
            raise ValueError("xs and zs differ in shape")
        if not (np.all(np.isfinite(self.xs)) and np.all(np.isfinite(self.zs))):
            raise ValueError("curve sample has non-finite entries")
        if np.any(np.diff(self.xs) <= 0.0):
            raise ValueError("xs must be strictly increasing")

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "x": self.xs.tolist(),
            "re_z": self.zs.real.tolist(),
            "im_z": self.zs.imag.tolist(),
        }


def sample_curve(fs: FlowSolution, t: float, xs) -> CurveSample:
    xs = np.asarray(xs, dtype=np.float64)
    return CurveSample(float(t), xs, np.asarray(evaluate_z(fs, t, xs)))


def fmt17(v: float) -> str:
    return format(float(v), ".17g")


def curves_to_csv(samples: list[CurveSample]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "re_z", "im_z"])
    for s in samples:
        for x, z in zip(s.xs, s.zs):
            w.writerow([fmt17(s.t), fmt17(x), fmt17(z.real), fmt17(z.imag)])
    return buf.getvalue()


def curves_from_csv(text: str) -> list[CurveSample]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["t", "x", "re_z", "im_z"]:
        raise ValueError("not a curve CSV (expected header t,x,re_z,im_z)")
    groups: dict[float, list] = {}
    order = []
    for r in rows[1:]:
        t = float(r[0])
        if t not in groups:
            groups[t] = []
            order.append(t)
        groups[t].append((float(r[1]), complex(float(r[2]), float(r[3]))))
    out = []
    for t in order:
        xs = np.array([p[0] for p in groups[t]])
        zs = np.array([p[1] for p in groups[t]])
        out.append(CurveSample(t, xs, zs))
    return out


def curves_to_json(samples: list[CurveSample]) -> str:
    return json.dumps({"curves": [s.to_dict() for s in samples]}, sort_keys=True)
