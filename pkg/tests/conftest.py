import numpy as np
import pytest

from beaconrqz.montecarlo import trial_rng
from beaconrqz.scenario import ScenarioConfig, build_snapshot


@pytest.fixture(scope="session")
def default_config():
    return ScenarioConfig()


@pytest.fixture(scope="session")
def snapshots(default_config):
    """A small fixed ensemble of default-scenario snapshots."""
    return [build_snapshot(trial_rng(2024, i), default_config) for i in range(200)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.acceptance_lines


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
