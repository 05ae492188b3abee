import pytest
from hypothesis import HealthCheck, settings

from mixedmult.ideal import Ideal
from mixedmult.poly import PolyRing

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def R2():
    return PolyRing(("x", "y"))


@pytest.fixture
def R3():
    return PolyRing(("x", "y", "z"))


def ideal(R, *gens):
    return Ideal(R, list(gens))
