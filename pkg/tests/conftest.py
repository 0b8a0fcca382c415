import os

import pytest
from hypothesis import HealthCheck, settings

from chabauty import cache
from chabauty.numfield import parse_number_field, rational_field, tower

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _no_cache(monkeypatch):
    monkeypatch.delenv("CHABAUTY_CACHE_DIR", raising=False)
    monkeypatch.delenv("CHABAUTY_PRECISION", raising=False)
    cache.configure(None)
    yield
    cache.configure(None)


@pytest.fixture(scope="session")
def Q():
    return rational_field()


@pytest.fixture(scope="session")
def Qi():
    return parse_number_field([1, 0, 1], "Q(i)")


@pytest.fixture(scope="session")
def Qsqrt2():
    return parse_number_field([-2, 0, 1], "Q(sqrt2)")


@pytest.fixture(scope="session")
def Qcbrt2():
    return parse_number_field([-2, 0, 0, 1], "Q(cbrt2)")


@pytest.fixture(scope="session")
def Qzeta5():
    return parse_number_field([1, 1, 1, 1, 1], "Q(zeta5)")


@pytest.fixture(scope="session")
def Qfourth2():
    return parse_number_field([-2, 0, 0, 0, 1], "Q(2^(1/4))")


@pytest.fixture(scope="session")
def table1_tower(Q, Qsqrt2, Qfourth2):
    return tower([Q, Qsqrt2, Qfourth2], [[0], [0, 0, 1]])


CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "configs")
