import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from conic_brauer.elliptic import Curve, Point

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def E2():
    """y^2 = x^3 - 2, rank one with generator (3, 5)."""
    return Curve(0, -2)


@pytest.fixture(scope="session")
def G():
    return Point(3, 5)


@pytest.fixture(scope="session")
def Ex():
    """y^2 = x^3 - x, full rational 2-torsion."""
    return Curve(-1, 0)


@pytest.fixture(scope="session")
def E25():
    """y^2 = x^3 - 25x, rank one with generator (-4, 6) and full 2-torsion."""
    return Curve(-25, 0)


@pytest.fixture(scope="session")
def R25():
    return Point(-4, 6)


def F(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    from _acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
