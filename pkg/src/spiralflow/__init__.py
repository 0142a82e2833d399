"""Self-similar curve flows that develop double logarithmic spirals.

The solutions are built from purely imaginary Ablowitz-Segur solutions of
Painleve II whose monodromy data are fixed by the target spiral.
"""

from .errors import (
    BlowUp,
    DegenerateAmplitude,
    DegenerateFit,
    DegenerateSpiral,
    GridTooShort,
    NoConvergence,
    OutOfRange,
    PoleOfGamma,
    RegionViolation,
    SpiralFlowError,
    UnknownSuite,
    WindowTooShort,
    ZeroArgument,
)
from .flow import (
    BackwardSolution,
    CurveSample,
    FlowSolution,
    backward_solution,
    build_flow,
    compute_g,
    compute_w,
    evaluate_z,
    sample_curve,
    singularity_gap,
    solve_flow,
    spiral_z0,
)
from .kernels import BACKEND
from .monodromy import (
    ConnectionConstants,
    MonodromyData,
    SpiralParams,
    complex_log_gamma,
    connection_constants,
    connection_constants_from_spiral,
    monodromy_from_alpha_k,
    normalize_spiral_params,
    solve_k,
    stokes_multipliers,
)
from .pii import PiiSolution, SolverConfig, evaluate_u, shoot_solution

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BackwardSolution",
    "BlowUp",
    "ConnectionConstants",
    "CurveSample",
    "DegenerateAmplitude",
    "DegenerateFit",
    "DegenerateSpiral",
    "FlowSolution",
    "GridTooShort",
    "MonodromyData",
    "NoConvergence",
    "OutOfRange",
    "PiiSolution",
    "PoleOfGamma",
    "RegionViolation",
    "SolverConfig",
    "SpiralFlowError",
    "SpiralParams",
    "UnknownSuite",
    "WindowTooShort",
    "ZeroArgument",
    "backward_solution",
    "build_flow",
    "complex_log_gamma",
    "compute_g",
    "compute_w",
    "connection_constants",
    "connection_constants_from_spiral",
    "evaluate_u",
    "evaluate_z",
    "monodromy_from_alpha_k",
    "normalize_spiral_params",
    "sample_curve",
    "shoot_solution",
    "singularity_gap",
    "solve_flow",
    "solve_k",
    "spiral_z0",
    "stokes_multipliers",
]
