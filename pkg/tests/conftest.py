import math

import pytest
from hypothesis import HealthCheck, settings

from mosmax import Grid, PhiFunction, make_field

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def grid64():
    return Grid.from_box(-4.0, 4.0, 1 / 64)


@pytest.fixture
def chi64(grid64):
    return make_field(grid64, "indicator(0, 1)")


def double_phase_root():
    """Root of lam^-2 + lam^-4 / 2 = 1 by plain bisection (independent of the package)."""
    lo, hi = 1.0, 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid ** -2 + mid ** -4 / 2 > 1:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def dp_x():
    return PhiFunction.double_phase(2, 4, "affine(1.0, 0.0)")


def close(a, b, tol):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)


def dp_ramp():
    """Double phase (2, 4) with a Lipschitz weight ramping 0 -> 1 across [-4, 4]."""
    return PhiFunction.double_phase(2, 4, "clamped_ramp(0.0, 1.0, -4.0, 4.0)")
