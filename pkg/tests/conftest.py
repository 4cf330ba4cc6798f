from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from derham_lft import lebesgue_system, walk_system

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def leb13():
    return lebesgue_system(Fraction(1, 3))


@pytest.fixture(scope="session")
def leb12():
    return lebesgue_system(Fraction(1, 2))


@pytest.fixture(scope="session")
def leb14():
    return lebesgue_system(Fraction(1, 4))


@pytest.fixture(scope="session")
def walk1():
    return walk_system(1)


@pytest.fixture(scope="session")
def walk05():
    return walk_system(0.5)
