"""Verification batteries tying the solver to its monodromy data.

Each ``check_*`` helper returns plain numbers so tests can use them
directly; :func:`run_suite` bundles them into a :class:`VerificationReport`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import airy

from . import asymptotics as asy
from .errors import GridTooShort, UnknownSuite
from .flow import (
    FlowSolution,
    backward_solution,
    build_flow,
    compute_g,
    compute_w,
    constant_C_profile,
    evaluate_z,
    singularity_gap,
    spiral_z0,
    swapped_spiral_z0,
)
from .monodromy import (
    SpiralParams,
    angle_distance,
    arg_gamma_imaginary,
    connection_constants,
    connection_constants_from_spiral,
    normalize_spiral_params,
    solve_k,
    stokes_residual,
    k_residual,
)
from .pii import (
    PiiSolution,
    SolverConfig,
    asym_series_plus,
    evaluate_u,
    fit_envelope,
    series_coeffs,
    shoot_solution,
    tail_integral,
)

SEED = 0xC0FFEE
SUITES = ("monodromy", "pii", "flow", "asymptotics", "all")
GAP_TIMES = (1.0, 0.3, 0.1, 0.03, 0.01)


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": _finite_or_str(self.measured),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _finite_or_str(v: float):
    return v if math.isfinite(v) else str(v)


@dataclass(frozen=True)
class VerificationReport:
    suite_name: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_ratio(self) -> float:
        """Largest measured/tolerance over all checks (nan counts as inf)."""
        worst = 0.0
        for c in self.checks:
            r = c.measured / c.tolerance if c.tolerance > 0 else (0.0 if c.measured <= 0 else math.inf)
            worst = max(worst, r if math.isfinite(r) else math.inf)
        return worst

    def to_dict(self) -> dict:
        return {
            "suite_name": self.suite_name,
            "pass": self.passed,
            "worst_ratio": _finite_or_str(self.worst_ratio),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def table(self) -> str:
        w = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check':<{w}}  {'measured':>12}  {'tolerance':>10}  result"]
        for c in self.checks:
            lines.append(
                f"{c.name:<{w}}  {c.measured:>12.4g}  {c.tolerance:>10.3g}  {'PASS' if c.passed else 'FAIL'}"
            )
        lines.append(f"suite {self.suite_name}: {'PASS' if self.passed else 'FAIL'} (worst ratio {self.worst_ratio:.3g})")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# random parameter triples


def random_triples(n: int, seed: int = SEED) -> list[SpiralParams]:
    """mu in [-3, 3], angles in [0, 2pi), rejecting |delta - pi| < 0.1."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        mu = float(rng.uniform(-3.0, 3.0))
        tp = float(rng.uniform(0.0, 2.0 * math.pi))
        tm = float(rng.uniform(0.0, 2.0 * math.pi))
        if angle_distance(tp - tm, math.pi) < 0.1:
            continue
        out.append(normalize_spiral_params(tp, tm, mu))
    return out


def amplitude_triples(n: int, lo: float = 0.2, hi: float = 1.5, seed: int = SEED) -> list[SpiralParams]:
    """Random triples whose connection amplitude |d| lies in [lo, hi]."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        cand = random_triples(1, int(rng.integers(2**31)))[0]
        amp = connection_constants_from_spiral(cand, allow_degenerate=True).amplitude_real
        if lo <= amp <= hi:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# monodromy


def arg_gamma_product(y: float, terms: int = 200000) -> float:
    """arg Gamma(i y) from the Weierstrass product, as an independent oracle.

    arg Gamma(iy) = -gamma y - pi/2 sign(y) + sum_k (y/k - atan(y/k)); the
    tail beyond ``terms`` is summed through its y^3/(3k^3) leading part.
    """
    if y == 0.0:
        raise ValueError("Gamma has a pole at 0")
    k = np.arange(1, terms + 1, dtype=np.float64)
    q = y / k
    s = float(np.sum((q - np.arctan(q))[::-1]))
    n = float(terms)
    tail = y**3 / 3.0 * (1.0 / (2.0 * n * n) - 1.0 / (2.0 * n**3) + 1.0 / (4.0 * n**4))
    v = -np.euler_gamma * y - math.copysign(math.pi / 2.0, y) + s + tail
    return (v + math.pi) % (2.0 * math.pi) - math.pi


def monodromy_checks(triples: list[SpiralParams]) -> list[Check]:
    stokes = kres = dsq = phi = odd = 0.0
    for p in triples:
        md = solve_k(p)
        stokes = max(stokes, stokes_residual(md))
        kres = max(kres, k_residual(md))
        a = connection_constants(md, allow_degenerate=True)
        b = connection_constants_from_spiral(p, allow_degenerate=True)
        dsq = max(dsq, abs(a.d_sq_neg - b.d_sq_neg))
        if not (a.degenerate or b.degenerate):
            phi = max(phi, angle_distance(a.phi, b.phi))
        sw = solve_k(p.swapped())
        odd = max(odd, abs(sw.kappa + md.kappa), abs(sw.a + md.a))
    gam = 0.0
    for y in np.linspace(-2.5, -0.05, 25):
        gam = max(gam, angle_distance(arg_gamma_imaginary(float(y)), arg_gamma_product(float(y))))
    return [
        Check("stokes_constraint", stokes, 1e-14),
        Check("k_relation", kres, 1e-12),
        Check("route_equality_dsq", dsq, 1e-12),
        Check("route_equality_phi", phi, 1e-10),
        Check("kappa_odd_under_swap", odd, 1e-12),
        Check("arg_gamma_vs_product", gam, 1e-10),
    ]


# ---------------------------------------------------------------------------
# Painleve checks


def pii_residual(sol: PiiSolution, n: int = 1000, seed: int = SEED) -> float:
    """max |u'' - x u - 2 u^3 + alpha| at n random interior points."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(sol.traj.x_min, sol.traj.x_max, n)
    p = sol.traj.eval(x)
    p2 = sol.traj.eval(x, 2)
    # u = i p, alpha = -i mu/2: the residual is i (p'' - x p + 2 p^3 - mu/2)
    return float(np.max(np.abs(p2 - x * p + 2.0 * p**3 - sol.mu / 2.0)))


def right_tail_profile(sol: PiiSolution, xs) -> np.ndarray:
    """|u(x) - three-term series| x^10."""
    xs = np.asarray(xs, dtype=np.float64)
    u = np.asarray(evaluate_u(sol, xs))
    ser = np.array([asym_series_plus(float(x), sol.mu) for x in xs])
    return np.abs(u - ser) * xs**10


def energy_defect(sol: PiiSolution, a: float, b: float) -> float:
    """|E(b) - E(a) + int_a^b p^2| with E = p'^2 - x p^2 + p^4 - mu p."""
    mu = sol.mu

    def E(x):
        p = sol.traj.eval(x)
        dp = sol.traj.eval(x, 1)
        return dp * dp - x * p * p + p**4 - mu * p

    bp = sol.traj.breakpoints
    knots = np.unique(np.concatenate([[a, b], bp[(bp > a) & (bp < b)]]))
    nodes, weights = np.polynomial.legendre.leggauss(40)
    lo, hi = knots[:-1], knots[1:]
    xs = 0.5 * (hi + lo)[:, None] + 0.5 * (hi - lo)[:, None] * nodes[None, :]
    integral = float(np.sum(0.5 * (hi - lo) * ((sol.traj.eval(xs) ** 2) @ weights)))
    return abs(E(b) - E(a) + integral)


def ux_growth_check(sol: PiiSolution, per_segment: int = 4, extent: float | None = None) -> float:
    """sup of |u_x| / (1 + |x|^{1/4}) over [-extent, 0] (default [-L, 0]).

    Sampled at ``per_segment`` points inside every integrator step.
    """
    bp = sol.traj.breakpoints
    lo = sol.traj.x_min if extent is None else max(-float(extent), sol.traj.x_min)
    bp = np.union1d(bp[(bp <= 0.0) & (bp >= lo)], [lo])
    if bp.size < 2:
        return 0.0
    frac = np.arange(per_segment) / per_segment
    xs = np.concatenate([(bp[:-1, None] + np.diff(bp)[:, None] * frac[None, :]).ravel(), [0.0]])
    return float(np.max(np.abs(sol.traj.eval(xs, 1)) / (1.0 + np.abs(xs) ** 0.25)))


def cauchy_total_integral(sol: PiiSolution, X: float = 35.0) -> complex:
    """exp of the principal-value integral of u over the real line.

    The integral runs over [-X, X] on the dense solution.  The alpha/y parts
    of both tails cancel by symmetry; the remaining right tail integrates
    the series in closed form.  The left tail integrates the fitted tail
    model (leading oscillation, its harmonics and the algebraic shifts of
    the mean) asymptotically; see :func:`spiralflow.pii.tail_integral`.
    """
    if X < 10.0 or X > -sol.traj.x_min:
        raise GridTooShort(f"need 10 <= X <= L = {-sol.traj.x_min:g}, got X = {X:g}")
    body = sol.antiderivative_ext(X) - sol.antiderivative_ext(-X)
    c = series_coeffs(sol.mu, sol.series_terms)
    right = sum(c[k] * X ** (-3.0 * k) / (3.0 * k) for k in range(1, len(c)))
    left = 0.0 if sol.fit is None else tail_integral(sol.fit, X)
    total = body + right + left
    return complex(math.cos(total), math.sin(total))


def total_integral_error(sol: PiiSolution, X: float = 35.0) -> float:
    a = sol.md.a
    return abs(cauchy_total_integral(sol, X) - complex(math.cos(a), math.sin(a)))


def window_agreement(sol: PiiSolution) -> float:
    """|d_fit| difference between two disjoint halves of the fit window."""
    if sol.cc.degenerate:
        return 0.0
    lo, hi = sol.config.resolved_window()
    mid = 0.5 * (lo + hi)
    a = fit_envelope(sol.traj, sol.mu, (lo, mid)).d_fit
    b = fit_envelope(sol.traj, sol.mu, (mid, hi)).d_fit
    return abs(a - b)


def pii_checks(sol: PiiSolution) -> list[Check]:
    xs = np.linspace(10.0, sol.R, 21)
    prof = right_tail_profile(sol, xs)
    rise = float(np.max(np.diff(prof))) if prof.size > 1 else 0.0
    # scale: first omitted series term plus the exponentially small c Ai part
    c3 = abs(series_coeffs(sol.mu, 4)[3])
    bound = 2.0 * c3 + 2.0 * abs(sol.shoot_param) * float(airy(10.0)[0]) * 1e10 + 1e-9
    out = [
        Check("pii_residual", pii_residual(sol), 1e-8),
        Check("right_tail_x10_sup", float(np.max(prof)), bound),
        Check("right_tail_x10_monotone", max(rise, 0.0), 1e-9 * max(1.0, c3)),
        Check("energy_identity", energy_defect(sol, -sol.L, sol.R), 1e-8),
        Check("ux_growth_constant", ux_growth_check(sol), 10.0),
        Check("total_integral", total_integral_error(sol, min(35.0, sol.L)), 1e-3),
    ]
    if sol.fit is not None and not sol.cc.degenerate:
        amp = sol.cc.amplitude_real
        out += [
            Check("fit_amplitude", abs(sol.fit.d_fit - amp), 1e-3),
            Check("fit_phase_prediction", angle_distance(sol.fit.phi_fit, sol.cc.phi), 1e-2),
            Check("fit_rms_relative", sol.fit.rms_residual / amp, 1e-3),
            Check("fit_window_agreement", window_agreement(sol), 1e-3),
        ]
    return out


def connection_sweep(triples: list[SpiralParams], config: SolverConfig | None = None) -> list[Check]:
    worst_d = worst_phi = 0.0
    for p in triples:
        md = solve_k(p)
        cc = connection_constants_from_spiral(p)
        sol = shoot_solution(md, cc, config=config)
        worst_d = max(worst_d, abs(sol.fit.d_fit - cc.amplitude_real))
        worst_phi = max(worst_phi, angle_distance(sol.fit.phi_fit, cc.phi))
    return [
        Check(f"sweep{len(triples)}_fit_amplitude", worst_d, 1e-3),
        Check(f"sweep{len(triples)}_phase_prediction", worst_phi, 1e-2),
    ]


# ---------------------------------------------------------------------------
# flow checks


def flow_sample(fs: FlowSolution, n: int = 1000, margin: float = 1.0) -> np.ndarray:
    xi = np.linspace(fs.xi_min + margin, fs.xi_max - margin, n)
    return xi[xi != 0.0]


def arclength_defect(fs: FlowSolution, xi) -> float:
    return float(np.max(np.abs(np.abs(fs.w_x(xi)) - 1.0)))


def _wx_derivs(fs: FlowSolution, xi, h: float = 1e-3):
    """w_x exactly; w_xx and w_xxx by centred differences of w_x."""
    xi = np.asarray(xi, dtype=np.float64)
    f0 = fs.w_x(xi)
    fp = fs.w_x(xi + h)
    fm = fs.w_x(xi - h)
    fp2 = fs.w_x(xi + 2 * h)
    fm2 = fs.w_x(xi - 2 * h)
    wxx = (fm2 - 8.0 * fm + 8.0 * fp - fp2) / (12.0 * h)
    wxxx = (-fm2 + 16.0 * fm - 30.0 * f0 + 16.0 * fp - fp2) / (12.0 * h * h)
    return f0, wxx, wxxx


def selfsim_residual(fs: FlowSolution, xi) -> float:
    """max |(1 - i mu) w/3 - xi w_x/3 + w_xxx - (3/2) conj(w_x) w_xx^2|."""
    xi = np.asarray(xi, dtype=np.float64)
    w = compute_w(fs, xi)
    wx, wxx, wxxx = _wx_derivs(fs, xi)
    r = complex(1.0, -fs.mu) * w / 3.0 - xi * wx / 3.0 + wxxx - 1.5 * np.conj(wx) * wxx**2
    return float(np.max(np.abs(r)))


def first_integral_residual(fs: FlowSolution, xi) -> float:
    """max |(i mu - 1) w/3 + xi w_x/3 - (v_x - v^2/2) w_x|."""
    xi = np.asarray(xi, dtype=np.float64)
    w = compute_w(fs, xi)
    wx = fs.w_x(xi)
    v = fs.v(xi)
    r = complex(-1.0, fs.mu) * w / 3.0 + xi * wx / 3.0 - (fs.v_x(xi) - v * v / 2.0) * wx
    return float(np.max(np.abs(r)))


def pde_residual(fs: FlowSolution, ts, xs, h: float = 0.01, dt: float = 1e-4) -> tuple[float, float]:
    """Relative residual of z_t = -z_xxx + (3/2) conj(z_x) z_xx^2 and max ||z_x| - 1|.

    x-derivatives use fourth-order centred stencils, t the second-order one.
    """
    T, X = np.meshgrid(np.asarray(ts, dtype=np.float64), np.asarray(xs, dtype=np.float64), indexing="ij")

    def z(dk: int = 0, dtt: float = 0.0):
        return evaluate_z(fs, T + dtt, X + dk * h)

    f = {k: z(k) for k in (-3, -2, -1, 0, 1, 2, 3)}
    zt = (z(0, dt) - z(0, -dt)) / (2.0 * dt)
    zx = (f[-2] - 8.0 * f[-1] + 8.0 * f[1] - f[2]) / (12.0 * h)
    zxx = (-f[-2] + 16.0 * f[-1] - 30.0 * f[0] + 16.0 * f[1] - f[2]) / (12.0 * h * h)
    zxxx = (f[-3] / 8.0 - f[-2] + 13.0 / 8.0 * f[-1] - 13.0 / 8.0 * f[1] + f[2] - f[3] / 8.0) / h**3
    res = np.abs(zt + zxxx - 1.5 * np.conj(zx) * zxx**2) / np.maximum(1.0, np.abs(zxxx))
    return float(np.max(res)), float(np.max(np.abs(np.abs(zx) - 1.0)))


def gap_profile(fs: FlowSolution, times=GAP_TIMES, xs=None) -> np.ndarray:
    """sup over x of |z - z0| / t^{1/3} for each t."""
    if xs is None:
        xs = gap_grid()
    return np.array([float(np.max(singularity_gap(fs, fs.params, t, xs))) for t in times])


def gap_grid(x_lo: float = 0.05, x_hi: float = 20.0, n: int = 2000) -> np.ndarray:
    """Symmetric grid +-[x_lo, x_hi] used for the convergence-to-z0 check."""
    r = np.geomspace(x_lo, x_hi, n)
    return np.concatenate([-r[::-1], r])


def flow_checks(fs: FlowSolution, *, backward: bool = True, config: SolverConfig | None = None) -> list[Check]:
    xi = flow_sample(fs)
    inner = xi[np.abs(xi) > 0.05]
    gaps = gap_profile(fs)
    # relative rise of the sup as t decreases; round-off level gaps count as 0
    rise = float(np.max(np.diff(gaps) / np.maximum(gaps[1:], 1e-6))) if gaps.size > 1 else 0.0
    pde, speed = pde_residual(fs, np.linspace(0.2, 2.0, 50), np.linspace(-5.0, 5.0, 200))
    C_rec = abs(constant_C_profile(fs.sol) + fs.C_const)
    checks = [
        Check("arclength", arclength_defect(fs, xi), 1e-9),
        Check("selfsimilar_ode", selfsim_residual(fs, inner), 1e-6),
        Check("first_integral", first_integral_residual(fs, inner), 1e-7),
        Check("pde_residual_relative", pde, 1e-4),
        Check("unit_speed", speed, 1e-6),
        Check("phase_coherence", fs.phase_mismatch, 1e-4),
        Check("constant_reconciliation", C_rec, 1e-14 * max(1.0, abs(fs.C_const))),
        Check("gap_sup", float(np.max(gaps)), 1e3),
        Check("gap_monotone_relative", max(rise, 0.0), 1e-4),
    ]
    if backward:
        p = fs.params
        xs = np.random.default_rng(SEED).uniform(-20.0, 20.0, 100)
        refl = float(np.max(np.abs(swapped_spiral_z0(p, -xs) + spiral_z0(p, xs))))
        bs = backward_solution(p, config=config)
        tb = -np.geomspace(0.01, 1.0, 12)
        gb = max(float(np.max(bs.gap(t, gap_grid()))) for t in tb)
        checks += [
            Check("backward_reflection", refl, 1e-14),
            Check("backward_gap_sup", gb, 1e3),
        ]
    return checks


# ---------------------------------------------------------------------------
# asymptotics checks


S_PLUS_X = (12.0, 24.0)
S_MINUS_X = (-40.0, -10.0)


def coefficient_identities(fs: FlowSolution) -> float:
    """Largest defect among the algebraic relations between coefficients."""
    p, cc, mu = fs.params, fs.sol.cc, fs.mu
    cp, cm = asy.flow_coefficients(fs)
    eb = complex(math.cos(fs.beta), math.sin(fs.beta))
    m = 1.0 / math.sqrt(1.0 + mu * mu)
    a2 = complex(mu * mu / 2.0, mu)
    defects = [
        abs(cp.A1 - complex(-1.0, mu) * a2 * cp.A0),
        abs(cp.A2 - complex(2.0, mu) * complex(mu * mu / 4.0 + 6.0, -mu) * cp.A1),
        abs(eb * cm.Bt0 - cm.B0),
        abs(eb * cm.Bt1 + cm.B1),
        abs(eb * cm.Bt2 + cm.B2),
        abs(cm.B1 - 2.0 * math.sqrt(3.0) * cc.d_sq * complex(1.0, -mu) * cm.B0),
        abs(cm.Bt1 + 3.0 * complex(1.0, -mu) * cm.Bt0 * cm.D1),
        abs(abs(cp.A0) - m),
        abs(abs(cm.B0) - m),
    ]
    if not cm.degenerate:
        defects += [
            abs(cm.B2 + 3.0**0.25 / cc.d * cm.B1),
            abs(cm.Bt2 - 3.0 * cm.D3),
        ]
    pc = asy.coeffs_plus(p, theta_tilde=fs.theta_tilde_plus)
    defects.append(abs(eb * pc.At0 - asy.coeffs_plus(p, theta=fs.theta_tilde_plus + fs.beta).A0))
    return max(defects)


def remainder_slopes(fs: FlowSolution, t: float = 1.0, n: int = 400) -> tuple[float, float]:
    """Log-log slopes of |R+| on S_PLUS_X and of the |R-| envelope on S_MINUS_X."""
    xp = np.geomspace(*S_PLUS_X, 40)
    xm = -np.linspace(-S_MINUS_X[0], -S_MINUS_X[1], n)
    rp = asy.remainder_values(fs, +1, t, xp)
    rm = asy.remainder_values(fs, -1, t, xm)
    return _slope_or_vanishing(xp, rp, asy.loglog_slope), _slope_or_vanishing(xm, rm, asy.envelope_slope)


def _slope_or_vanishing(x, r, fit):
    # an identically vanishing remainder (u = 0) has no slope to measure
    if float(np.max(r)) <= 1e-13 * float(np.max(np.abs(x))):
        return math.nan
    return fit(x, r)


def g_expansion_profiles(fs: FlowSolution) -> tuple[float, float]:
    """sup |g - expansion| x^9 on [15, 35] and |g - expansion| |x|^3 on [-35, -15]."""
    xr = np.linspace(15.0, 35.0, 81)
    xl = -xr[::-1]
    th = (fs.theta_tilde_plus, fs.theta_tilde_minus)
    er = np.abs(compute_g(fs, xr) - asy.g_expansions(fs.params, fs.sol.cc, xr, thetas=th)) * xr**9
    el = np.abs(compute_g(fs, xl) - asy.g_expansions(fs.params, fs.sol.cc, xl, thetas=th)) * np.abs(xl) ** 3
    return float(np.max(er)), float(np.max(el))


def asymptotics_checks(fs: FlowSolution) -> list[Check]:
    sp, sm = remainder_slopes(fs)
    gr, gl = g_expansion_profiles(fs)
    mu = fs.mu
    shrink = 0.0
    if mu != 0.0:
        cp = asy.coeffs_plus(fs.params)
        x = np.linspace(8.0, 40.0, 65)
        shrink = float(np.max(np.abs(cp.At2) * x**-6.0 - np.abs(cp.At1) * x**-3.0))
        shrink = max(shrink, 0.0)
    if mu != 0.0:
        plus = Check("slope_plus_minus_8", 0.0 if math.isnan(sp) else abs(sp + 8.0), 0.5)
    else:
        # every algebraic coefficient vanishes; only the numerical floor is left
        x = np.geomspace(*S_PLUS_X, 40)
        floor = float(np.max(asy.remainder_values(fs, +1, 1.0, x) / x))
        plus = Check("plus_remainder_beyond_all_orders", floor, 1e-8)
    return [
        Check("coefficient_identities", coefficient_identities(fs), 1e-13),
        plus,
        Check("slope_minus_minus_2", 0.0 if math.isnan(sm) else abs(sm + 2.0), 0.5),
        Check("g_plus_x9_sup", gr, 1e6),
        Check("g_minus_x3_sup", gl, 1e3),
        Check("g_next_term_shrinks", shrink, 0.0),
    ]


# ---------------------------------------------------------------------------
# suites


def run_suite(
    name: str,
    params: SpiralParams | None = None,
    config: SolverConfig | None = None,
    *,
    seed: int = SEED,
    n_random: int = 100,
    sweep: int = 0,
    backward: bool = True,
) -> VerificationReport:
    """Run one battery; ``sweep`` adds that many random connection-prediction solves."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if params is None:
        params = normalize_spiral_params(math.pi / 4.0, 3.0 * math.pi / 4.0, 1.5)
    checks: list[Check] = []
    if name in ("monodromy", "all"):
        checks += monodromy_checks([params] + random_triples(n_random, seed))
    if name in ("pii", "flow", "asymptotics", "all"):
        md = solve_k(params)
        cc = connection_constants_from_spiral(params, allow_degenerate=True)
        sol = shoot_solution(md, cc, config=config)
        if name in ("pii", "all"):
            checks += pii_checks(sol)
            if sweep:
                checks += connection_sweep(amplitude_triples(sweep, seed=seed), config)
        if name in ("flow", "asymptotics", "all"):
            fs = build_flow(sol, params)
            if name in ("flow", "all"):
                checks += flow_checks(fs, backward=backward, config=config)
            if name in ("asymptotics", "all"):
                checks += asymptotics_checks(fs)
    return VerificationReport(name, tuple(checks))


__all__ = [
    "Check",
    "GAP_TIMES",
    "SEED",
    "SUITES",
    "VerificationReport",
    "amplitude_triples",
    "arclength_defect",
    "arg_gamma_product",
    "asymptotics_checks",
    "cauchy_total_integral",
    "coefficient_identities",
    "connection_sweep",
    "energy_defect",
    "first_integral_residual",
    "flow_checks",
    "flow_sample",
    "g_expansion_profiles",
    "gap_grid",
    "gap_profile",
    "monodromy_checks",
    "pde_residual",
    "pii_checks",
    "pii_residual",
    "random_triples",
    "remainder_slopes",
    "right_tail_profile",
    "run_suite",
    "selfsim_residual",
    "total_integral_error",
    "ux_growth_check",
    "window_agreement",
]
