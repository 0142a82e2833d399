import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spiralflow import cli
from spiralflow.flow import curves_from_csv, curves_to_csv


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- parsing ------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,value",
    [
        ("pi", math.pi),
        ("pi/4", math.pi / 4),
        ("3pi/4", 3 * math.pi / 4),
        ("-pi/3", -math.pi / 3),
        ("5*pi/12", 5 * math.pi / 12),
        ("0.5", 0.5),
        ("-2", -2.0),
        ("2π", 2 * math.pi),
    ],
)
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text", ["", "pie", "pi/0", "nan", "1/4", "inf"])
def test_parse_angle_rejects(text):
    with pytest.raises(cli.UsageError):
        cli.parse_angle(text)


@given(st.integers(-24, 24), st.integers(1, 24))
def test_parse_angle_fractions(n, d):
    assert cli.parse_angle(f"{n}pi/{d}") == pytest.approx(n * math.pi / d, rel=1e-15, abs=1e-300)


def test_config_text():
    cfg = cli.parse_config_text("# c\nmu = 2  # pitch\nsolver.tol = 1e-10\n\n")
    assert cfg == {"mu": "2", "solver.tol": "1e-10"}
    with pytest.raises(cli.UsageError):
        cli.parse_config_text("mu 2")


def test_flag_overrides_config_file(tmp_path, monkeypatch):
    f = tmp_path / "run.cfg"
    f.write_text("mu = 0.7\ntheta_plus = pi/3\nregions.n_points = 11\n")
    monkeypatch.setenv(cli.CONFIG_ENV, str(f))
    args = cli.build_parser().parse_args(["evolve", "--mu", "1.1"])
    rc = cli.resolve_config(args)
    assert rc.params.mu == 1.1
    assert rc.params.theta_plus == pytest.approx(math.pi / 3)
    assert rc.regions["n_points"] == 11


@pytest.mark.parametrize(
    "text",
    ["solver.tol = 1e-3", "regions.n_points = 1", "bogus = 1", "solver.what = 2", "output.format = png"],
)
def test_bad_config_values(tmp_path, capsys, text):
    f = tmp_path / "bad.cfg"
    f.write_text(text + "\n")
    code, _, err = run(capsys, "solve", "--config", str(f))
    assert code == cli.EXIT_USAGE and "error" in err


# -- commands -----------------------------------------------------------------


def test_params_fig2(capsys):
    code, out, _ = run(capsys, "params", "--theta-plus", "pi/4", "--theta-minus", "3pi/4", "--mu", "1.5")
    assert code == 0
    d = json.loads(out)
    assert d["kappa"] == pytest.approx(-5.3228, abs=1e-4)
    for key in ("theta_plus", "theta_minus", "mu", "kappa", "a", "d_sq_neg", "phi",
                "s1_re", "s1_im", "s3_re", "s3_im"):
        assert key in d
    assert d["degenerate"] is False


def test_params_exit_codes(capsys):
    assert run(capsys, "params", "--theta-plus", "0", "--theta-minus", "pi", "--mu", "1")[0] == 2
    assert run(capsys, "params", "--theta-plus", "x", "--theta-minus", "pi", "--mu", "1")[0] == 64
    assert run(capsys, "params", "--theta-plus", "1")[0] == 64
    assert run(capsys)[0] == 64


def test_params_degenerate_flag(capsys):
    code, out, _ = run(capsys, "params", "--theta-plus", "1", "--theta-minus", "1", "--mu", "0")
    d = json.loads(out)
    assert code == 0 and d["kappa"] == 0.0 and d["degenerate"] is True and d["phi"] is None


def test_solve_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, out, _ = run(capsys, "solve", "--out", str(a))
    assert code == 0 and "beta" in json.loads(out)
    run(capsys, "solve", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_solve_trivial(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "--mu", "0", "--theta-plus", "1", "--theta-minus", "1",
                       "--out", str(tmp_path / "z.json"))
    assert code == 0 and json.loads(out)["shoot_param"] == 0.0


def test_evolve_from_solution_and_round_trip(tmp_path, capsys):
    sol = tmp_path / "s.json"
    run(capsys, "solve", "--out", str(sol))
    csv_path, svg_path = tmp_path / "e.csv", tmp_path / "e.svg"
    code, _, _ = run(capsys, "evolve", "--solution", str(sol), "--t", "1,0.5", "--n-points", "21",
                     "--out", str(csv_path), "--svg", str(svg_path))
    assert code == 0
    text = csv_path.read_text()
    curves = curves_from_csv(text)
    assert [c.t for c in curves] == [1.0, 0.5, 0.0]
    assert curves_to_csv(curves) == text
    assert svg_path.read_text().count("<polyline") == 3

    code, out, _ = run(capsys, "evolve", "--t", "1,0.5", "--n-points", "21")
    assert out == text


def test_evolve_zero_solution_is_a_line(capsys):
    code, out, _ = run(capsys, "evolve", "--mu", "0", "--theta-plus", "1", "--theta-minus", "1",
                       "--t", "0.7", "--n-points", "5", "--x-range", "-2,2")
    assert code == 0
    c = curves_from_csv(out)[0]
    assert max(abs(z - x * complex(math.cos(1), math.sin(1))) for x, z in zip(c.xs, c.zs)) < 1e-12


def test_evolve_exit_codes(tmp_path, capsys):
    assert run(capsys, "evolve", "--t", "1e-6", "--x-range", "-5,5", "--n-points", "3")[0] == 4
    assert run(capsys, "evolve", "--t", "-1")[0] == 64
    assert run(capsys, "evolve", "--t", "1", "--n-points", "3",
               "--out", str(tmp_path / "missing" / "x.csv"))[0] == 1
    assert not (tmp_path / "missing").exists()


def test_evolve_backward(capsys):
    code, out, _ = run(capsys, "evolve", "--backward", "--t", "1,0.1", "--n-points", "5")
    assert code == 0
    assert [c.t for c in curves_from_csv(out)] == [-1.0, -0.1, 0.0]


def test_figure_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "figure", "--which", "spiral", "--theta-plus", "pi/4",
                       "--theta-minus", "3pi/4", "--mu", "-6")
    assert code == 0 and out.startswith("t,x,re_z,im_z\n")
    code, out, _ = run(capsys, "figure", "--which", "spiral", "--panel", "b")
    c = curves_from_csv(out)[0]
    right = c.zs[c.xs > 0]
    assert max(abs(math.atan2(z.imag, z.real) - 5 * math.pi / 12) for z in right) < 1e-12
    assert run(capsys, "figure", "--which", "nope")[0] == 64


def test_verify(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "monodromy", "--out", str(rep))
    assert code == 0 and "PASS" in out
    assert json.loads(rep.read_text())["suite_name"] == "monodromy"
    assert run(capsys, "verify", "--suite", "bogus")[0] == 64
