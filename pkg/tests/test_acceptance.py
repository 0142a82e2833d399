"""End-to-end acceptance battery.

Every test prints one ``[PASS]`` or ``[FAIL]`` line with the measured value,
its tolerance and the wall time against the budget, then asserts both.
``RESULTS`` collects the lines so the terminal summary can list them again.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from spiralflow.figures import figure_csvs
from spiralflow.flow import backward_solution, spiral_z0, swapped_spiral_z0
from spiralflow.io import read_table_csv
from spiralflow.monodromy import (
    angle_distance,
    connection_constants,
    connection_constants_from_spiral,
    k_residual,
    normalize_spiral_params,
    solve_k,
    stokes_residual,
)
from spiralflow.pii import shoot_solution
from spiralflow.validation import (
    GAP_TIMES,
    SEED,
    amplitude_triples,
    arclength_defect,
    flow_sample,
    gap_grid,
    gap_profile,
    pde_residual,
    pii_residual,
    random_triples,
    remainder_slopes,
    right_tail_profile,
    selfsim_residual,
    total_integral_error,
)

GOLDEN = Path(__file__).parent / "golden"
RESULTS: dict[int, str] = {}


def report(capsys, n, title, measured, tol, elapsed, budget, note=""):
    ok = bool(np.isfinite(measured)) and measured <= tol and elapsed <= budget
    line = (
        f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}: measured {measured:.3e} "
        f"tol {tol:.1e}, {elapsed:.2f} s of {budget:g} s"
    )
    if note:
        line += f" ({note})"
    RESULTS[n] = line
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


@pytest.fixture(scope="module")
def sweep():
    return random_triples(100, SEED)


def test_01_stokes_constraint(capsys, sweep):
    t0 = time.perf_counter()
    worst = max(stokes_residual(solve_k(p)) for p in sweep)
    report(capsys, 1, "Stokes constraint, 100 triples", worst, 1e-14, time.perf_counter() - t0, 0.1)


def test_02_k_relation(capsys, sweep):
    t0 = time.perf_counter()
    worst = max(k_residual(solve_k(p)) for p in sweep)
    report(capsys, 2, "closed-form k substituted back", worst, 1e-12, time.perf_counter() - t0, 0.1)


def test_03_route_equality(capsys, sweep):
    t0 = time.perf_counter()
    dsq = phi = 0.0
    for p in sweep:
        a = connection_constants(solve_k(p), allow_degenerate=True)
        b = connection_constants_from_spiral(p, allow_degenerate=True)
        dsq = max(dsq, abs(a.d_sq_neg - b.d_sq_neg))
        if not (a.degenerate or b.degenerate):
            phi = max(phi, angle_distance(a.phi, b.phi))
    dt = time.perf_counter() - t0
    # both parts share one line; the ratio to each tolerance is what counts
    ratio = max(dsq / 1e-12, phi / 1e-10)
    report(capsys, 3, "connection routes agree (worst of d^2/1e-12, phi/1e-10)", ratio, 1.0, dt, 1.0,
           f"d^2 {dsq:.1e}, phi {phi:.1e}")


def test_04_pii_residual(capsys, fig2_params):
    t0 = time.perf_counter()
    sol = shoot_solution(solve_k(fig2_params), connection_constants_from_spiral(fig2_params))
    res = pii_residual(sol, n=1000)
    report(capsys, 4, "PII residual at 1000 points", res, 1e-8, time.perf_counter() - t0, 5.0)


def test_05_right_tail_order(capsys, fig2_sol):
    t0 = time.perf_counter()
    xs = np.linspace(10.0, 12.0, 21)
    prof = right_tail_profile(fig2_sol, xs)
    rise = max(float(np.max(np.diff(prof))), 0.0)
    dt = time.perf_counter() - t0
    measured = rise if np.all(np.isfinite(prof)) else math.inf
    report(capsys, 5, "x^10 series error non-increasing on [10, 12]", measured, 1e-9, dt, 1.0,
           f"sup {float(np.max(prof)):.3e}")


def test_06_connection_prediction(capsys):
    t0 = time.perf_counter()
    triples = amplitude_triples(10)
    worst = 0.0
    for p in triples:
        cc = connection_constants_from_spiral(p)
        sol = shoot_solution(solve_k(p), cc)
        worst = max(worst, angle_distance(sol.fit.phi_fit, cc.phi))
    report(capsys, 6, "fitted phase vs predicted phase, 10 triples", worst, 1e-2,
           time.perf_counter() - t0, 60.0)


def test_07_total_integral(capsys):
    t0 = time.perf_counter()
    triples = [normalize_spiral_params(math.pi / 2, 0.0, 0.0)] + random_triples(4, SEED + 7)
    worst = worst20 = 0.0
    for p in triples:
        sol = shoot_solution(solve_k(p), connection_constants_from_spiral(p, allow_degenerate=True))
        worst = max(worst, total_integral_error(sol, 35.0))
        worst20 = max(worst20, total_integral_error(sol, 20.0))
    dt = time.perf_counter() - t0
    report(capsys, 7, "total-integral formula, 5 triples, X = 35", worst, 1e-3, dt, 10.0,
           f"X = 20 gives {worst20:.1e}")


def test_08_arclength_and_selfsim(capsys, fig2_flow):
    t0 = time.perf_counter()
    xi = flow_sample(fig2_flow)
    arc = arclength_defect(fig2_flow, xi)
    ode = selfsim_residual(fig2_flow, xi[np.abs(xi) > 0.05])
    dt = time.perf_counter() - t0
    ratio = max(arc / 1e-9, ode / 1e-6)
    report(capsys, 8, "unit speed and self-similar ODE (worst of arc/1e-9, ode/1e-6)", ratio, 1.0, dt, 5.0,
           f"arc {arc:.1e}, ode {ode:.1e}")


def test_09_pde_residual(capsys, fig2_flow):
    t0 = time.perf_counter()
    rel, _ = pde_residual(fig2_flow, np.linspace(0.2, 2.0, 50), np.linspace(-5.0, 5.0, 200))
    report(capsys, 9, "curve-flow PDE residual on 50x200 grid", rel, 1e-4, time.perf_counter() - t0, 5.0)


def test_10_singularity_convergence(capsys, fig2_flow):
    t0 = time.perf_counter()
    gaps = gap_profile(fig2_flow, GAP_TIMES)
    dt = time.perf_counter() - t0
    rise = max(float(np.max(np.diff(gaps) / np.maximum(gaps[1:], 1e-6))), 0.0)
    measured = rise if np.all(np.isfinite(gaps)) else math.inf
    report(capsys, 10, "sup |z - z0| / t^(1/3) non-increasing as t -> 0 (relative rise)", measured, 1e-4, dt, 5.0,
           "sups " + ", ".join(f"{g:.4f}" for g in gaps))


def test_11_expansion_orders(capsys, fig2_flow):
    t0 = time.perf_counter()
    sp, sm = remainder_slopes(fig2_flow, t=1.0)
    dt = time.perf_counter() - t0
    dev = max(abs(sp + 8.0), abs(sm + 2.0))
    report(capsys, 11, "remainder slopes -8 (right) and -2 (left)", dev, 0.5, dt, 5.0,
           f"slopes {sp:.3f}, {sm:.3f}")


def test_12_phase_coherence(capsys, fig2_flow):
    t0 = time.perf_counter()
    p = fig2_flow.params
    mis = angle_distance(fig2_flow.theta_tilde_plus - fig2_flow.theta_tilde_minus, p.theta_plus - p.theta_minus)
    report(capsys, 12, "theta-tilde difference matches theta difference", mis, 1e-4,
           time.perf_counter() - t0, 1.0)


def test_13_backward_solution(capsys, fig2_params):
    t0 = time.perf_counter()
    xs = np.random.default_rng(SEED).uniform(-20.0, 20.0, 1000)
    refl = float(np.max(np.abs(swapped_spiral_z0(fig2_params, -xs) + spiral_z0(fig2_params, xs))))
    bs = backward_solution(fig2_params)
    grid = gap_grid()
    gap = max(float(np.max(bs.gap(t, grid))) for t in -np.geomspace(0.01, 1.0, 12))
    dt = time.perf_counter() - t0
    measured = refl if math.isfinite(gap) else math.inf
    report(capsys, 13, "reflected spiral and finite backward gap", measured, 1e-14, dt, 10.0,
           f"gap sup {gap:.4f}")


def _numeric_match(text, golden):
    h1, a = read_table_csv(text)
    h2, b = read_table_csv(golden)
    if h1 != h2 or a.shape != b.shape:
        return math.inf
    return float(np.max(np.abs(a - b) / (1.0 + np.abs(b))))


def test_14_figures(capsys):
    t0 = time.perf_counter()
    first = figure_csvs()
    second = figure_csvs()
    dt = time.perf_counter() - t0
    identical = first == second
    dev = 0.0
    for name, text in first.items():
        path = GOLDEN / f"{name}.csv"
        dev = max(dev, _numeric_match(text, path.read_text()) if path.exists() else math.inf)
    report(capsys, 14, "figure CSVs vs golden files (two runs)", dev if identical else math.inf, 1e-8, dt, 30.0,
           f"{len(first)} files, reruns {'identical' if identical else 'DIFFER'}")
