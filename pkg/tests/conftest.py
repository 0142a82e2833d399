import math
import sys

import pytest

from spiralflow import normalize_spiral_params, solve_flow

FIG2 = (math.pi / 4, 3 * math.pi / 4, 1.5)


@pytest.fixture(scope="session")
def fig2_params():
    return normalize_spiral_params(*FIG2)


@pytest.fixture(scope="session")
def fig2_flow(fig2_params):
    return solve_flow(fig2_params)


@pytest.fixture(scope="session")
def fig2_sol(fig2_flow):
    return fig2_flow.sol


@pytest.fixture(scope="session")
def zero_flow():
    return solve_flow(normalize_spiral_params(1.0, 1.0, 0.0))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
