"""Data behind the three figure types: target spirals, a transcendent, an evolution."""

from __future__ import annotations

import math

import numpy as np

from .flow import (
    CurveSample,
    FlowSolution,
    backward_solution,
    curves_to_csv,
    sample_curve,
    solve_flow,
    spiral_z0,
)
from .io import table_csv
from .monodromy import (
    SpiralParams,
    connection_constants,
    monodromy_from_alpha_k,
    normalize_spiral_params,
)
from .pii import SolverConfig, evaluate_u, shoot_solution

SPIRAL_PANELS = {
    "a": (math.pi / 4.0, 3.0 * math.pi / 4.0, -6.0),
    "b": (5.0 * math.pi / 12.0, -math.pi / 3.0, 0.0),
    "c": (math.pi / 6.0, math.pi / 3.0, 2.0),
}
EVOLUTION_PARAMS = (math.pi / 4.0, 3.0 * math.pi / 4.0, 1.5)
EVOLUTION_TIMES = (2.6, 1.6, 1.2, 0.8, 0.6, 0.2)
PAINLEVE_DATA = (0.5, 4.0)  # (Im alpha, Im k)


def spiral_grid(x_min: float = 1e-3, x_max: float = 1.0, n: int = 600) -> np.ndarray:
    """Symmetric log-spaced abscissae with 0 excluded (z0 winds like ln|x|)."""
    r = np.geomspace(x_min, x_max, n)
    return np.concatenate([-r[::-1], r])


def spiral_curve(params: SpiralParams, xs=None) -> CurveSample:
    xs = spiral_grid() if xs is None else np.asarray(xs, dtype=np.float64)
    return CurveSample(0.0, xs, np.asarray(spiral_z0(params, xs)))


def painleve_curve(
    alpha_im: float = PAINLEVE_DATA[0],
    kappa: float = PAINLEVE_DATA[1],
    x_range: tuple[float, float] = (-30.0, 10.0),
    n: int = 1601,
    config: SolverConfig | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(x, Im u(x)) for the transcendent with alpha = i alpha_im, k = i kappa."""
    md = monodromy_from_alpha_k(alpha_im, kappa)
    cc = connection_constants(md, allow_degenerate=True)
    sol = shoot_solution(md, cc, config=config)
    xs = np.linspace(x_range[0], x_range[1], n)
    return xs, np.asarray(evaluate_u(sol, xs)).imag


def painleve_csv(xs, im_u) -> str:
    return table_csv(["x", "im_u"], [xs, im_u])


def evolution_curves(
    fs: FlowSolution,
    times=EVOLUTION_TIMES,
    xs=None,
    *,
    backward: bool = False,
    config: SolverConfig | None = None,
) -> list[CurveSample]:
    """z(t, .) for each t, followed by the target spiral as the t = 0 rows.

    With ``backward`` the times are negated and the curves come from the
    solution that develops the same spiral as t increases to 0.
    """
    xs = np.linspace(-4.0, 4.0, 400) if xs is None else np.asarray(xs, dtype=np.float64)
    out = []
    if backward:
        bw = backward_solution(fs.params, config)
        for t in times:
            tn = -abs(float(t))
            out.append(CurveSample(tn, xs, np.asarray(bw.z(tn, xs))))
    else:
        for t in times:
            out.append(sample_curve(fs, float(t), xs))
    keep = xs != 0.0
    out.append(CurveSample(0.0, xs[keep], np.asarray(spiral_z0(fs.params, xs[keep]))))
    return out


def evolution_flow(config: SolverConfig | None = None) -> FlowSolution:
    return solve_flow(normalize_spiral_params(*EVOLUTION_PARAMS), config)


def figure_csvs(config: SolverConfig | None = None) -> dict[str, str]:
    """CSV text for every figure panel, keyed by a file stem."""
    out = {}
    for key, params in SPIRAL_PANELS.items():
        out[f"fig1{key}"] = curves_to_csv([spiral_curve(normalize_spiral_params(*params))])
    out["fig2"] = curves_to_csv(evolution_curves(evolution_flow(config), config=config))
    out["fig3"] = painleve_csv(*painleve_curve(config=config))
    return out
