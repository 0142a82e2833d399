import json
import math

import numpy as np
import pytest

from spiralflow.errors import GridTooShort, UnknownSuite
from spiralflow.monodromy import (
    connection_constants,
    connection_constants_from_spiral,
    monodromy_from_alpha_k,
    normalize_spiral_params,
    solve_k,
)
from spiralflow.pii import shoot_solution
from spiralflow.validation import (
    SEED,
    Check,
    VerificationReport,
    cauchy_total_integral,
    random_triples,
    run_suite,
    total_integral_error,
    ux_growth_check,
)

PI = math.pi


def test_check_pass_rule():
    assert Check("a", 1.0, 1.0).passed
    assert not Check("a", 1.0 + 1e-15, 1.0).passed
    assert not Check("a", math.nan, 1.0).passed


def test_report_serialisation():
    rep = VerificationReport("x", (Check("a", 0.5, 1.0), Check("b", 3.0, 2.0)))
    assert not rep.passed
    assert rep.worst_ratio == pytest.approx(1.5)
    d = json.loads(rep.to_json())
    assert d["suite_name"] == "x" and len(d["checks"]) == 2
    assert "FAIL" in rep.table()


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("bogus")


def test_random_triples_reproducible():
    a = random_triples(50, SEED)
    assert a == random_triples(50, SEED)
    for p in a:
        assert -3 <= p.mu <= 3
        assert abs(abs(p.theta_plus - p.theta_minus) - PI) >= 0.1


def test_monodromy_suite_fast():
    rep = run_suite("monodromy")
    assert rep.passed, rep.table()


def test_zero_solution_suite():
    rep = run_suite("all", normalize_spiral_params(1.0, 1.0, 0.0), n_random=10)
    assert rep.passed, rep.table()
    for c in rep.checks:
        if c.name.startswith(("pii_residual", "total_integral", "ux_growth")):
            assert c.measured == 0.0


def test_suite_reports_are_reproducible():
    p = normalize_spiral_params(0.5, 1.4, -0.8)
    a = run_suite("pii", p, n_random=5)
    b = run_suite("pii", p, n_random=5)
    assert a.to_json() == b.to_json()


def _solve(tp, tm, mu, **kw):
    p = normalize_spiral_params(tp, tm, mu)
    return shoot_solution(solve_k(p), connection_constants_from_spiral(p, allow_degenerate=True), **kw)


def test_total_integral_quarter_turn():
    sol = _solve(PI / 2, 0.0, 0.0)
    val = cauchy_total_integral(sol, 35.0)
    assert abs(val - complex(math.cos(PI / 4), math.sin(PI / 4))) < 1e-3
    assert abs(abs(val) - 1.0) < 1e-9


def test_total_integral_converges_in_x(fig2_sol):
    assert total_integral_error(fig2_sol, 35.0) <= total_integral_error(fig2_sol, 20.0)


def test_total_integral_range(fig2_sol):
    with pytest.raises(GridTooShort):
        cauchy_total_integral(fig2_sol, 5.0)
    with pytest.raises(GridTooShort):
        cauchy_total_integral(fig2_sol, 500.0)


def test_ux_growth_zero_and_refinement():
    assert ux_growth_check(_solve(1.0, 1.0, 0.0)) == 0.0
    md = monodromy_from_alpha_k(0.5, 4.0)
    cc = connection_constants(md)
    sol = shoot_solution(md, cc)
    a = ux_growth_check(sol, per_segment=4)
    b = ux_growth_check(sol, per_segment=8)
    assert np.isfinite(a) and abs(a - b) < 0.01 * a


def test_ux_growth_bounded_in_length():
    # |u_x| / (1 + |x|^{1/4}) tends to d from below, so the sup saturates
    md = monodromy_from_alpha_k(0.5, 4.0)
    cc = connection_constants(md)
    sol = shoot_solution(md, cc)
    sups = [ux_growth_check(sol, extent=e) for e in (20.0, 40.0, 80.0, 120.0)]
    assert np.all(np.diff(sups) >= 0)
    assert sups[-1] <= cc.amplitude_real * 1.01
