import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import loggamma

from spiralflow.errors import DegenerateAmplitude, DegenerateSpiral, PoleOfGamma
from spiralflow.monodromy import (
    angle_distance,
    arg_gamma_imaginary,
    complex_log_gamma,
    connection_constants,
    connection_constants_from_spiral,
    half_angle,
    k_relation_lhs,
    k_residual,
    monodromy_from_alpha_k,
    normalize_spiral_params,
    reduce_angle,
    solve_k,
    stokes_multipliers,
    stokes_residual,
)
from spiralflow.validation import arg_gamma_product

PI = math.pi


# -- parameters ---------------------------------------------------------------


def test_fig2_params_unchanged():
    p = normalize_spiral_params(PI / 4, 3 * PI / 4, 1.5)
    assert (p.theta_plus, p.theta_minus, p.mu) == (PI / 4, 3 * PI / 4, 1.5)


def test_negative_angle_is_reduced():
    p = normalize_spiral_params(5 * PI / 12, -PI / 3, 0.0)
    assert p.theta_minus == pytest.approx(5 * PI / 3, abs=1e-15)


@pytest.mark.parametrize("tp,tm", [(0.0, PI), (PI, 0.0), (0.3, 0.3 + PI), (0.5, 0.5 - PI)])
def test_antiparallel_arms_rejected(tp, tm):
    with pytest.raises(DegenerateSpiral):
        normalize_spiral_params(tp, tm, 1.0)


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(ValueError):
        normalize_spiral_params(bad, 0.0, 0.0)


@pytest.mark.parametrize(
    "tp,tm,a",
    [(0.0, PI / 2, -PI / 4), (3 * PI / 2, 0.0, -PI / 4), (1.0, 1.0, 0.0), (PI / 2, 0.0, PI / 4)],
)
def test_half_angle_branches(tp, tm, a):
    assert half_angle(normalize_spiral_params(tp, tm, 0.3)) == pytest.approx(a, abs=1e-15)


@given(st.floats(-50, 50, allow_nan=False))
def test_reduce_angle_range(theta):
    r = reduce_angle(theta)
    assert 0.0 <= r < 2 * PI
    assert angle_distance(r, theta) < 1e-12


# -- k and the Stokes data ----------------------------------------------------


def test_k_for_quarter_turn():
    md = solve_k(normalize_spiral_params(PI / 2, 0.0, 0.0))
    assert md.kappa == pytest.approx(1.0, abs=1e-15)
    assert abs(k_relation_lhs(md) - cmath.exp(1j * PI / 4)) < 1e-15


def test_k_vanishes_for_equal_angles():
    assert solve_k(normalize_spiral_params(2.0, 2.0, 3.7)).kappa == 0.0


def test_k_fig2_closed_form():
    md = solve_k(normalize_spiral_params(PI / 4, 3 * PI / 4, 1.5))
    assert md.kappa == pytest.approx(-math.cosh(0.75 * PI), rel=1e-14)
    assert md.kappa == pytest.approx(-5.3228, abs=1e-4)
    assert k_residual(md) < 1e-12


def test_stokes_alpha_zero():
    s1, s2, s3 = stokes_multipliers(0.0, 1.0)
    assert (s1, s2, s3) == (1.0, 0.0, -1.0)


def test_stokes_fig3_data():
    sh = float(mpmath.sinh(mpmath.pi / 2))
    s1, s2, s3 = stokes_multipliers(0.5, 4.0)
    assert abs(s1 - complex(4.0, -sh)) < 1e-14
    assert abs(s3 - complex(-4.0, -sh)) < 1e-14
    assert s2 == 0
    assert stokes_residual(monodromy_from_alpha_k(0.5, 4.0)) < 1e-14


@settings(max_examples=200)
@given(
    st.floats(0, 2 * PI, exclude_max=True),
    st.floats(0, 2 * PI, exclude_max=True),
    st.floats(-3, 3),
)
def test_stokes_and_k_relation_hold(tp, tm, mu):
    if abs(abs(tp - tm) - PI) < 0.1:
        return
    md = solve_k(normalize_spiral_params(tp, tm, mu))
    assert stokes_residual(md) < 1e-14 * max(1.0, abs(md.s1) ** 2)
    assert k_residual(md) < 1e-12


# -- log gamma ----------------------------------------------------------------


def test_log_gamma_trivial_values():
    assert complex_log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert complex_log_gamma(0.5) == pytest.approx(0.5 * math.log(PI), abs=1e-14)
    mod_sq = math.exp(2 * complex_log_gamma(1j).real)
    assert mod_sq == pytest.approx(PI / math.sinh(PI), rel=1e-14)


@pytest.mark.parametrize("n", [0, -1, -7])
def test_log_gamma_poles(n):
    with pytest.raises(PoleOfGamma):
        complex_log_gamma(n)


# scipy loses accuracy on subnormal arguments, so the oracle skips them
@settings(max_examples=300)
@given(st.floats(-30, 30, allow_subnormal=False), st.floats(-60, 60, allow_subnormal=False))
def test_log_gamma_matches_scipy(x, y):
    z = complex(x, y)
    if y == 0.0 and x <= 0 and x == math.floor(x):
        return
    ref = complex(loggamma(z))
    got = complex_log_gamma(z)
    # both are principal branches; compare modulo 2 pi i and to working precision
    assert abs(got.real - ref.real) < 1e-12 * max(1.0, abs(ref))
    assert angle_distance(got.imag, ref.imag) < 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize(
    "z", [0.3 + 0.1j, -2.5 + 0.5j, 1e-3j, 12 - 40j, -0.75 - 3j, 1e-25 + 1e-25j, 5e-324j, -3 + 1e-30j,
          -20 + 1.4e-45j, -21 + 1e-300j, -33.2 + 1e-8j, -100.5 + 50j, -20.999999999999996 + 0j]
)
def test_log_gamma_matches_mpmath(z):
    mpmath.mp.dps = 30
    ref = complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))
    assert abs(complex_log_gamma(z) - ref) < 1e-13 * max(1.0, abs(ref))


@pytest.mark.parametrize("y", [-1.7, -0.4, 0.05, 0.642, 2.3])
def test_arg_gamma_product_oracle(y):
    assert angle_distance(arg_gamma_imaginary(y), arg_gamma_product(y)) < 1e-9


# -- connection constants -----------------------------------------------------


def test_amplitude_quarter_turn():
    cc = connection_constants_from_spiral(normalize_spiral_params(PI / 2, 0.0, 0.0))
    mpmath.mp.dps = 30
    assert cc.d_sq == pytest.approx(float(-mpmath.log(2) / mpmath.pi), rel=1e-14)
    assert cc.amplitude_real == pytest.approx(0.46971, abs=1e-5)


def test_amplitude_fig2():
    p = normalize_spiral_params(PI / 4, 3 * PI / 4, 1.5)
    cc = connection_constants_from_spiral(p)
    ref = (math.log(2) + 2 * math.log(math.cosh(0.75 * PI))) / PI
    assert cc.d_sq_neg == pytest.approx(ref, rel=1e-14)
    assert cc.amplitude_real == pytest.approx(1.1336, abs=1e-4)


def test_degenerate_amplitude():
    p = normalize_spiral_params(1.0, 1.0, 0.0)
    with pytest.raises(DegenerateAmplitude):
        connection_constants_from_spiral(p)
    cc = connection_constants_from_spiral(p, allow_degenerate=True)
    assert cc.degenerate and cc.amplitude_real == 0.0 and math.isnan(cc.phi)


@settings(max_examples=200)
@given(
    st.floats(0, 2 * PI, exclude_max=True),
    st.floats(0, 2 * PI, exclude_max=True),
    st.floats(-3, 3),
)
def test_both_routes_agree(tp, tm, mu):
    if abs(abs(tp - tm) - PI) < 0.1:
        return
    p = normalize_spiral_params(tp, tm, mu)
    a = connection_constants_from_spiral(p, allow_degenerate=True)
    b = connection_constants(solve_k(p), allow_degenerate=True)
    assert abs(a.d_sq_neg - b.d_sq_neg) < 1e-12 * max(1.0, b.d_sq_neg)
    if not a.degenerate and a.amplitude_real > 1e-6:
        assert angle_distance(a.phi, b.phi) < 1e-10


def test_swap_flips_kappa():
    p = normalize_spiral_params(0.4, 2.1, -1.2)
    assert solve_k(p.swapped()).kappa == pytest.approx(-solve_k(p).kappa, rel=1e-14)


def test_monodromy_json_field_names():
    md = solve_k(normalize_spiral_params(0.4, 2.1, -1.2))
    assert set(md.to_dict()) == {"alpha_im", "kappa", "a", "s1_re", "s1_im", "s3_re", "s3_im"}
    assert np.isfinite(list(md.to_dict().values())).all()
