import numpy as np
import pytest

from gausschannel import ReservoirSpec

ACCEPTANCE_LINES = []


def record_acceptance(criterion, ok, detail=""):
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# reference parameter sets used throughout: x = 10 (mode inside the
# environment band) and x = 0.01 (detuned), both at theta = 100, alpha2 = 0.01
SPEC_TOP = ReservoirSpec(alpha2=0.01, x=10.0, theta=100.0)
SPEC_BOTTOM = ReservoirSpec(alpha2=0.01, x=0.01, theta=100.0)
R_REF = 0.1


@pytest.fixture(scope="session")
def spec_top():
    return SPEC_TOP


@pytest.fixture(scope="session")
def spec_bottom():
    return SPEC_BOTTOM


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
