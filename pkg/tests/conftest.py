import sys

import pytest

from sweepwidth import (
    ExperimentConfig,
    HumanEye,
    HumanEyeConfig,
    ModelConstants,
    Mode,
    Scenario,
    SearchObject,
    default_catalog,
)


@pytest.fixture
def eye_cfg():
    # Pinned explicitly: every derived value in the tests assumes these.
    return HumanEyeConfig(wavelength_m=550e-9, pupil_diameter_m=5e-3)


@pytest.fixture
def eye(eye_cfg):
    return HumanEye(eye_cfg)


@pytest.fixture
def constants():
    return ModelConstants()


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture
def exhaustive():
    return ExperimentConfig(mode=Mode.EXHAUSTIVE)


def make_scenario(size, alt, vis, name=None):
    return Scenario(SearchObject(name or f"obj{size}", size), alt, vis)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES):
        terminalreporter.write_line(line)
