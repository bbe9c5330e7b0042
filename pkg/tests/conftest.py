import cmath
import math

import hypothesis
import numpy as np
import pytest

from xxz_ness import CircuitParams, Hybrid

hypothesis.settings.register_profile("ness", deadline=None, derandomize=True, database=None, max_examples=30)
hypothesis.settings.load_profile("ness")

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Record a ``criterion N: PASS|FAIL ...`` line; shown in the terminal summary."""
    lines = request.config.stash[_ACCEPTANCE]

    def report(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        lines.append(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def epr5():
    return CircuitParams.easy_plane(5, 0.3, 0.9, 1.0, 0.5)


@pytest.fixture
def ear5():
    return CircuitParams.easy_axis(5, 1.7, 0.6, 0.8 * cmath.exp(0.4j), 0.5 - 0.3j)


@pytest.fixture
def hybrid5():
    return CircuitParams(5, cmath.exp(0.7j), math.exp(0.5), Hybrid(0.9 * cmath.exp(-0.3j), 0.3, 0.5, 0.7))

