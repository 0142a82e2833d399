"""Command-line front end.

    spiralflow params   --theta-plus pi/4 --theta-minus 3pi/4 --mu 1.5
    spiralflow solve    ... --out sol.json
    spiralflow evolve   ... --t 2.6,1.6,0.2 --out frames.csv [--svg frames.svg]
    spiralflow figure   --which spiral|painleve|evolution ...
    spiralflow verify   --suite monodromy|pii|flow|asymptotics|all

Exit codes: 0 success, 1 I/O failure, 2 degenerate spiral, 3 no convergence,
4 sampling out of range, 5 failed check, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import figures
from .errors import DegenerateSpiral, GridTooShort, NoConvergence, OutOfRange, UnknownSuite
from .flow import FlowSolution, build_flow, curves_to_csv, curves_to_json, solve_flow
from .io import atomic_write_text, curves_svg, dumps_json, graph_svg
from .monodromy import (
    SpiralParams,
    connection_constants_from_spiral,
    normalize_spiral_params,
    solve_k,
)
from .pii import PiiSolution, SolverConfig

EXIT_OK = 0
EXIT_IO = 1
EXIT_DEGENERATE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_OUT_OF_RANGE = 4
EXIT_CHECK_FAILED = 5
EXIT_USAGE = 64

CONFIG_ENV = "SPIRALFLOW_CONFIG"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# value parsing

_PI_RE = re.compile(
    r"^\s*([+-])?\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(?:pi|π)\s*(?:/\s*(\d+(?:\.\d*)?|\.\d+))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Radians from "0.7", "pi", "-pi/3", "3pi/4" or "5*pi/12"."""
    s = str(text).strip()
    m = _PI_RE.match(s)
    if m:
        sign, num, den = m.groups()
        if den is not None and float(den) == 0.0:
            raise UsageError(f"zero denominator in angle {text!r}")
        v = math.pi * (float(num) if num else 1.0) / (float(den) if den else 1.0)
        return -v if sign == "-" else v
    try:
        v = float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"angle must be finite, got {text!r}")
    return v


def parse_float(text: str) -> float:
    try:
        v = float(str(text).strip())
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"value must be finite, got {text!r}")
    return v


def parse_list(text: str) -> list[float]:
    parts = [p for p in re.split(r"[,\s]+", str(text).strip()) if p]
    if not parts:
        raise UsageError("empty list")
    return [parse_float(p) for p in parts]


def parse_config_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment; dotted keys nest."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        if not key:
            raise UsageError(f"config line {lineno}: empty key")
        out[key.replace("-", "_")] = value
    return out


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    params: SpiralParams
    solver: dict = field(default_factory=dict)
    regions: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    def solver_config(self) -> SolverConfig:
        s = self.solver
        cfg = SolverConfig()
        over = {}
        for key in ("R", "L", "tol"):
            if key in s:
                over[key] = float(s[key])
        if "grid_step" in s:
            over["hmax"] = float(s["grid_step"])
        return replace(cfg, **over)


_DEFAULTS = {
    "theta_plus": "pi/4",
    "theta_minus": "3pi/4",
    "mu": "1.5",
    "solver.tol": "1e-10",
    "regions.c_region": "0.5",
    "regions.t_list": ",".join(str(t) for t in figures.EVOLUTION_TIMES),
    "regions.x_range": "-4,4",
    "regions.n_points": "400",
    "output.format": "csv",
}


def _flag_values(args) -> dict[str, str]:
    mapping = {
        "theta_plus": "theta_plus",
        "theta_minus": "theta_minus",
        "mu": "mu",
        "R": "solver.R",
        "L": "solver.L",
        "tol": "solver.tol",
        "grid_step": "solver.grid_step",
        "c_region": "regions.c_region",
        "t": "regions.t_list",
        "x_range": "regions.x_range",
        "n_points": "regions.n_points",
        "format": "output.format",
        "out": "output.path",
    }
    out = {}
    for attr, key in mapping.items():
        v = getattr(args, attr, None)
        if v is not None:
            out[key] = str(v)
    return out


def load_config_file(path) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    return parse_config_text(text)


def resolve_config(args, *, forward: bool = True) -> RunConfig:
    """Defaults, then the config file (--config or $SPIRALFLOW_CONFIG), then flags."""
    values = dict(_DEFAULTS)
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        values.update(load_config_file(path))
    values.update(_flag_values(args))

    known = {"theta_plus", "theta_minus", "mu"}
    for k in values:
        head = k.split(".", 1)[0]
        if k not in known and head not in ("solver", "regions", "output"):
            raise UsageError(f"unknown config key {k!r}")

    params = normalize_spiral_params(
        parse_angle(values["theta_plus"]), parse_angle(values["theta_minus"]), parse_float(values["mu"])
    )
    solver = {k.split(".", 1)[1]: parse_float(v) for k, v in values.items() if k.startswith("solver.")}
    unknown = set(solver) - {"R", "L", "tol", "grid_step"}
    if unknown:
        raise UsageError(f"unknown solver keys: {', '.join(sorted(unknown))}")
    if not (1e-13 <= solver["tol"] <= 1e-6):
        raise UsageError(f"solver.tol must lie in [1e-13, 1e-6], got {solver['tol']:g}")

    regions = {
        "c_region": parse_float(values["regions.c_region"]),
        "t_list": parse_list(values["regions.t_list"]),
        "x_range": parse_list(values["regions.x_range"]),
        "n_points": int(parse_float(values["regions.n_points"])),
    }
    if regions["n_points"] < 2:
        raise UsageError("regions.n_points must be at least 2")
    if len(regions["x_range"]) != 2 or regions["x_range"][0] >= regions["x_range"][1]:
        raise UsageError("regions.x_range must be two increasing numbers")
    if forward and any(t <= 0.0 for t in regions["t_list"]):
        raise UsageError("t values must be positive (use --backward for negative times)")

    output = {"format": values["output.format"]}
    if output["format"] not in ("csv", "json", "svg"):
        raise UsageError(f"output.format must be csv, json or svg, got {output['format']!r}")
    if "output.path" in values:
        output["path"] = values["output.path"]
    return RunConfig(params, solver, regions, output)


# ---------------------------------------------------------------------------
# output helpers


def _emit(text: str, path) -> None:
    if path in (None, "", "-"):
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)


def _flow_from_solution_file(path) -> FlowSolution:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise OSError(f"cannot read solution file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"solution file {path} is not JSON: {exc}") from None
    if "solution" not in d or "flow" not in d:
        raise UsageError(f"{path} is not a solution file written by 'solve'")
    sol = PiiSolution.from_json(json.dumps(d["solution"]))
    f = d["flow"]
    params = normalize_spiral_params(f["theta_plus"], f["theta_minus"], f["mu"])
    return build_flow(sol, params)


# ---------------------------------------------------------------------------
# commands


def params_record(params: SpiralParams) -> dict:
    md = solve_k(params)
    cc = connection_constants_from_spiral(params, allow_degenerate=True)
    rec = params.to_dict()
    rec.update(md.to_dict())
    rec.update(cc.to_dict())
    rec["degenerate"] = cc.degenerate
    return rec


def cmd_params(args) -> int:
    params = normalize_spiral_params(
        parse_angle(args.theta_plus), parse_angle(args.theta_minus), parse_float(args.mu)
    )
    sys.stdout.write(dumps_json(params_record(params)))
    return EXIT_OK


def cmd_solve(args) -> int:
    rc = resolve_config(args)
    fs = solve_flow(rc.params, rc.solver_config())
    summary = fs.to_summary()
    doc = {"solution": fs.sol.to_dict(), "flow": summary, "params": params_record(rc.params)}
    path = rc.output.get("path")
    if path:
        atomic_write_text(path, dumps_json(doc))
    info = {
        "theta_tilde_plus": summary["theta_tilde_plus"],
        "theta_tilde_minus": summary["theta_tilde_minus"],
        "beta": summary["beta"],
        "phase_mismatch": summary["phase_mismatch"],
        "shoot_param": fs.sol.shoot_param,
        "fit": None if fs.sol.fit is None else fs.sol.fit.to_dict(),
    }
    sys.stdout.write(dumps_json(info))
    return EXIT_OK


def _write_curves(samples, fmt: str, path, svg_path=None) -> None:
    if fmt == "csv":
        _emit(curves_to_csv(samples), path)
    elif fmt == "json":
        _emit(curves_to_json(samples) + "\n", path)
    else:
        _emit(curves_svg(samples), path)
    if svg_path:
        atomic_write_text(svg_path, curves_svg(samples))


def cmd_evolve(args) -> int:
    rc = resolve_config(args, forward=not args.backward)
    cfg = rc.solver_config()
    if args.solution:
        fs = _flow_from_solution_file(args.solution)
    else:
        fs = solve_flow(rc.params, cfg)
    lo, hi = rc.regions["x_range"]
    xs = np.linspace(lo, hi, rc.regions["n_points"])
    samples = figures.evolution_curves(fs, rc.regions["t_list"], xs, backward=args.backward, config=cfg)
    _write_curves(samples, rc.output["format"], rc.output.get("path"), args.svg)
    return EXIT_OK


def cmd_figure(args) -> int:
    which = args.which
    if which == "spiral":
        preset = figures.SPIRAL_PANELS[args.panel]
        tp = parse_angle(args.theta_plus) if args.theta_plus is not None else preset[0]
        tm = parse_angle(args.theta_minus) if args.theta_minus is not None else preset[1]
        mu = parse_float(args.mu) if args.mu is not None else preset[2]
        samples = [figures.spiral_curve(normalize_spiral_params(tp, tm, mu))]
        _emit(curves_to_csv(samples), args.out)
        if args.svg:
            atomic_write_text(args.svg, curves_svg(samples))
    elif which == "painleve":
        xs, im_u = figures.painleve_curve(parse_float(args.alpha_im), parse_float(args.kappa))
        _emit(figures.painleve_csv(xs, im_u), args.out)
        if args.svg:
            atomic_write_text(args.svg, graph_svg(xs, im_u))
    elif which == "evolution":
        preset = figures.EVOLUTION_PARAMS
        tp = parse_angle(args.theta_plus) if args.theta_plus is not None else preset[0]
        tm = parse_angle(args.theta_minus) if args.theta_minus is not None else preset[1]
        mu = parse_float(args.mu) if args.mu is not None else preset[2]
        fs = solve_flow(normalize_spiral_params(tp, tm, mu))
        samples = figures.evolution_curves(fs, backward=args.backward)
        _emit(curves_to_csv(samples), args.out)
        if args.svg:
            atomic_write_text(args.svg, curves_svg(samples))
    else:
        raise UsageError(f"unknown figure {which!r}; choose spiral, painleve or evolution")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .validation import run_suite

    rc = resolve_config(args)
    report = run_suite(
        args.suite,
        rc.params,
        rc.solver_config(),
        seed=args.seed,
        n_random=args.n_random,
        sweep=args.sweep,
        backward=not args.no_backward,
    )
    sys.stdout.write(report.table() + "\n")
    if args.out:
        atomic_write_text(args.out, report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _spiral_flags(p, required: bool = False):
    p.add_argument("--theta-plus", dest="theta_plus", required=required, help="angle of the x > 0 arm")
    p.add_argument("--theta-minus", dest="theta_minus", required=required, help="angle of the x < 0 arm")
    p.add_argument("--mu", required=required, help="spiral pitch")


def _solver_flags(p):
    p.add_argument("--config", help=f"key = value config file (default ${CONFIG_ENV})")
    p.add_argument("--R", dest="R", type=float)
    p.add_argument("--L", dest="L", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--grid-step", dest="grid_step", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spiralflow", description="Curve flows developing double logarithmic spirals.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("params", help="monodromy data and connection constants as JSON")
    _spiral_flags(p, required=True)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("solve", help="solve for the transcendent and the profile")
    _spiral_flags(p)
    _solver_flags(p)
    p.add_argument("--out", help="solution JSON path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evolve", help="sample z(t, x)")
    _spiral_flags(p)
    _solver_flags(p)
    p.add_argument("--solution", help="solution file from 'solve'")
    p.add_argument("--t", help="comma-separated times")
    p.add_argument("--x-range", dest="x_range", help="lo,hi")
    p.add_argument("--n-points", dest="n_points", type=int)
    p.add_argument("--format", choices=("csv", "json", "svg"))
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--svg", help="also render the curves to this SVG file")
    p.add_argument("--backward", action="store_true", help="negative times, solution for t < 0")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("figure", help="data behind a figure")
    p.add_argument("--which", required=True)
    p.add_argument("--panel", choices=tuple(figures.SPIRAL_PANELS), default="a")
    _spiral_flags(p)
    p.add_argument("--alpha-im", dest="alpha_im", default=str(figures.PAINLEVE_DATA[0]))
    p.add_argument("--kappa", default=str(figures.PAINLEVE_DATA[1]))
    p.add_argument("--backward", action="store_true")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--svg", help="SVG path")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    _spiral_flags(p)
    _solver_flags(p)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0xC0FFEE)
    p.add_argument("--n-random", dest="n_random", type=int, default=100)
    p.add_argument("--sweep", type=int, default=0, help="extra random connection solves")
    p.add_argument("--no-backward", dest="no_backward", action="store_true")
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--theta-plus", "--theta-minus", "--mu", "--x-range", "--t", "--kappa", "--alpha-im")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-pi/3" as an option; "--flag=-pi/3" is unambiguous
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateSpiral as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (OutOfRange, GridTooShort) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_RANGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
