"""Spiral parameters, Painleve II monodromy data and connection constants.

Purely imaginary scalars (alpha, k, d) are stored through real numbers:
``alpha = 1j * alpha_im``, ``k = 1j * kappa`` and ``d**2 = -d_sq_neg``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateAmplitude, DegenerateSpiral, PoleOfGamma

TWO_PI = 2.0 * math.pi

# Sign of the sinh(pi*mu/2) term in the connection phase.  Direct integration
# of the real-reduced equation selects -1 (see tests/test_pii.py).
VERIFIED_SINH_SIGN = -1


def reduce_angle(theta: float) -> float:
    """Reduce an angle into [0, 2pi)."""
    r = math.fmod(theta, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def angle_distance(a: float, b: float) -> float:
    """Distance between two angles modulo 2pi, in [0, pi]."""
    d = abs(reduce_angle(a - b))
    return min(d, TWO_PI - d)


def log_cosh(y: float) -> float:
    """``log(cosh(y))`` without overflow."""
    y = abs(y)
    return y + math.log1p(math.exp(-2.0 * y)) - math.log(2.0)


@dataclass(frozen=True)
class SpiralParams:
    """Singularity data of the double logarithmic spiral."""

    theta_plus: float
    theta_minus: float
    mu: float

    @property
    def delta(self) -> float:
        return self.theta_plus - self.theta_minus

    def swapped(self) -> "SpiralParams":
        """Spiral with the two arms exchanged (used for backward time)."""
        return normalize_spiral_params(self.theta_minus, self.theta_plus, self.mu)

    def to_dict(self) -> dict:
        return {"theta_plus": self.theta_plus, "theta_minus": self.theta_minus, "mu": self.mu}


def normalize_spiral_params(theta_plus: float, theta_minus: float, mu: float) -> SpiralParams:
    """Validate the spiral data and reduce both angles into [0, 2pi)."""
    for name, v in (("theta_plus", theta_plus), ("theta_minus", theta_minus), ("mu", mu)):
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")
    tp = reduce_angle(float(theta_plus))
    tm = reduce_angle(float(theta_minus))
    if abs(abs(tp - tm) - math.pi) <= 1e-12:
        raise DegenerateSpiral(
            f"arms are antiparallel: |theta_plus - theta_minus| = pi "
            f"(theta_plus={tp}, theta_minus={tm})"
        )
    return SpiralParams(tp, tm, float(mu))


def half_angle(params: SpiralParams) -> float:
    """Half-angle a in (-pi/2, pi/2) with e^{2ia} = e^{i(theta_plus - theta_minus)}."""
    delta = params.delta
    if delta < -math.pi:
        return (delta + TWO_PI) / 2.0
    if delta > math.pi:
        return (delta - TWO_PI) / 2.0
    return delta / 2.0


@dataclass(frozen=True)
class MonodromyData:
    """Parameters (alpha, k) of a purely imaginary Ablowitz-Segur solution.

    ``alpha_im`` and ``kappa`` are the imaginary parts of alpha and k; ``a``
    is the half-angle the data were built from (``nan`` when built directly).
    """

    alpha_im: float
    kappa: float
    a: float
    s1: complex
    s2: complex
    s3: complex

    @property
    def alpha(self) -> complex:
        return complex(0.0, self.alpha_im)

    @property
    def k(self) -> complex:
        return complex(0.0, self.kappa)

    @property
    def mu(self) -> float:
        return -2.0 * self.alpha_im

    def to_dict(self) -> dict:
        return {
            "alpha_im": self.alpha_im,
            "kappa": self.kappa,
            "a": self.a,
            "s1_re": self.s1.real,
            "s1_im": self.s1.imag,
            "s3_re": self.s3.real,
            "s3_im": self.s3.imag,
        }


def stokes_multipliers(alpha_im: float, kappa: float) -> tuple[complex, complex, complex]:
    """Stokes triple (s1, 0, s3) of the purely imaginary Ablowitz-Segur family."""
    sin_pa = cmath.sin(math.pi * complex(0.0, alpha_im))
    k = complex(0.0, kappa)
    return (-sin_pa - 1j * k, 0j, -sin_pa + 1j * k)


def stokes_residual(md: MonodromyData) -> float:
    """Residual of the cubic constraint on the Stokes multipliers."""
    s1, s2, s3 = md.s1, md.s2, md.s3
    return abs(s1 - s2 + s3 + s1 * s2 * s3 + 2.0 * cmath.sin(math.pi * md.alpha))


def monodromy_from_alpha_k(alpha_im: float, kappa: float, a: float = math.nan) -> MonodromyData:
    s1, s2, s3 = stokes_multipliers(alpha_im, kappa)
    return MonodromyData(float(alpha_im), float(kappa), a, s1, s2, s3)


def solve_k(params: SpiralParams) -> MonodromyData:
    """Monodromy data for a spiral: alpha = -i mu / 2 and k = i cosh(pi mu/2) tan(a).

    The modulus/argument split of the defining relation for k gives the
    closed form directly, so no root finding is involved.
    """
    a = half_angle(params)
    kappa = math.cosh(math.pi * params.mu / 2.0) * math.tan(a)
    return monodromy_from_alpha_k(-params.mu / 2.0, kappa, a)


def k_relation_lhs(md: MonodromyData) -> complex:
    """(cos(pi alpha) + k) / sqrt(cos^2(pi alpha) - k^2) with the positive root."""
    c = cmath.cos(math.pi * md.alpha)
    k = md.k
    # c real and k imaginary make the radicand real and positive
    rad = (c * c - k * k).real
    return (c + k) / math.sqrt(rad)


def k_residual(md: MonodromyData) -> float:
    """|lhs - e^{ia}| for data produced by :func:`solve_k`."""
    return abs(k_relation_lhs(md) - cmath.exp(1j * md.a))


# ---------------------------------------------------------------------------
# complex log-gamma

_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)
_HALF_LOG_2PI = 0.5 * math.log(TWO_PI)
_LOG_PI = math.log(math.pi)
_SHIFT = 8.0


def _loggamma_right(z: complex) -> complex:
    # Re z >= 1/2: shift to Re z >= 8, then Stirling.
    acc = 0j
    while z.real < _SHIFT:
        acc += cmath.log(z)
        z += 1.0
    zinv = 1.0 / z
    zinv2 = zinv * zinv
    series = 0j
    for c in reversed(_STIRLING):
        series = series * zinv2 + c
    series *= zinv
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - acc


def _log_sinpi_upper(z: complex) -> complex:
    # Branch of log(sin(pi z)) continuous on Im z >= 0, real at z = 1/2.
    # e^{2 pi i z} has period 1 in Re z; reduce exactly, then form 1 - e^w
    # through expm1 so that a tiny Im z near a pole is not rounded away
    a = -2.0 * math.pi * z.imag
    b = 2.0 * math.pi * math.remainder(z.real, 1.0)
    em = math.expm1(a)
    one_minus = complex(-(em * math.cos(b) - 2.0 * math.sin(0.5 * b) ** 2), -(em + 1.0) * math.sin(b))
    return -math.log(2.0) + 0.5j * math.pi - 1j * math.pi * z + cmath.log(one_minus)


def complex_log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Upward recurrence for -20 < Re z < 1/2, reflection further left,
    then a shift to Re z >= 8 and a ten-term Stirling series.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleOfGamma(f"Gamma has a pole at {z.real:g}")
    if z.imag < 0.0:
        return complex_log_gamma(z.conjugate()).conjugate()
    if z.real >= 0.5:
        return _loggamma_right(z)
    if z.real > -20.0:
        # reflection cancels near the poles; log Gamma(z + m) - sum log(z + j)
        # is the same analytic branch off the negative axis
        m = math.ceil(0.5 - z.real)
        acc = 0j
        for j in range(m):
            acc += cmath.log(z + j)
        return _loggamma_right(z + m) - acc
    return _LOG_PI - _log_sinpi_upper(z) - _loggamma_right(1.0 - z)


def arg_gamma_imaginary(y: float) -> float:
    """arg Gamma(i y) as the imaginary part of the principal log-gamma."""
    return complex_log_gamma(complex(0.0, y)).imag


# ---------------------------------------------------------------------------
# connection constants


@dataclass(frozen=True)
class ConnectionConstants:
    """Amplitude and phase of the oscillatory tail at x -> -infinity.

    ``d_sq_neg = -d**2 >= 0``; ``amplitude_real = |d|`` is the amplitude of
    the real-form solution p = -i u.  ``phi`` is ``nan`` when d = 0.
    """

    d_sq_neg: float
    phi: float
    amplitude_real: float

    @property
    def d(self) -> complex:
        return complex(0.0, self.amplitude_real)

    @property
    def d_sq(self) -> float:
        return -self.d_sq_neg

    @property
    def degenerate(self) -> bool:
        return self.amplitude_real == 0.0

    def to_dict(self) -> dict:
        return {"d_sq_neg": self.d_sq_neg, "phi": self.phi, "amplitude_real": self.amplitude_real}


def _phase_common(d_sq_neg: float) -> float:
    return (
        1.5 * d_sq_neg * math.log(2.0)
        + arg_gamma_imaginary(-0.5 * d_sq_neg)
        - math.pi / 4.0
    )


def _finish(d_sq_neg: float, phase_term: float, allow_degenerate: bool) -> ConnectionConstants:
    amp = math.sqrt(max(d_sq_neg, 0.0))
    if amp == 0.0:
        if not allow_degenerate:
            raise DegenerateAmplitude("d = 0: the tail has no oscillation and phi is undefined")
        return ConnectionConstants(0.0, math.nan, 0.0)
    return ConnectionConstants(d_sq_neg, reduce_angle(_phase_common(d_sq_neg) + phase_term), amp)


def connection_constants(
    md: MonodromyData, *, sinh_sign: int = VERIFIED_SINH_SIGN, allow_degenerate: bool = False
) -> ConnectionConstants:
    """(d, phi) from (alpha, k).

    ``sinh_sign=+1`` evaluates the phase term as arg(i sinh(i pi alpha) - i k);
    the default -1 flips the sinh term, which is what the solutions of the
    real-reduced equation actually exhibit.
    """
    ch = math.cosh(math.pi * md.alpha_im)
    d_sq_neg = math.log(ch * ch + md.kappa * md.kappa) / math.pi
    sh = math.sinh(math.pi * md.alpha_im)
    # i sinh(i pi alpha) - i k = kappa + i sinh(pi mu / 2) and sh = -sinh(pi mu / 2)
    term = cmath.phase(complex(md.kappa, -sinh_sign * sh))
    return _finish(d_sq_neg, term, allow_degenerate)


def connection_constants_from_spiral(
    params: SpiralParams, *, sinh_sign: int = VERIFIED_SINH_SIGN, allow_degenerate: bool = False
) -> ConnectionConstants:
    """(d, phi) directly from (theta_plus, theta_minus, mu).

    The arctangent of tanh(pi mu/2)/tan(delta/2) is taken quadrant-aware
    (atan2), which keeps it equal to the (alpha, k) route for a < 0.
    """
    t = math.tan(params.delta / 2.0)
    d_sq_neg = (math.log1p(t * t) + 2.0 * log_cosh(math.pi * params.mu / 2.0)) / math.pi
    term = math.atan2(sinh_sign * math.tanh(math.pi * params.mu / 2.0), t)
    return _finish(d_sq_neg, term, allow_degenerate)
