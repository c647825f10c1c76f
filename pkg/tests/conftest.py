import pytest
from hypothesis import HealthCheck, settings

from khall.quiver import gloop, jordan, q_zero, quiver_k

settings.register_profile("khall", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("khall")


@pytest.fixture
def J():
    return jordan()


@pytest.fixture
def K():
    return quiver_k()


@pytest.fixture
def Q0():
    return q_zero()


@pytest.fixture
def L2():
    return gloop(2)


@pytest.fixture
def L3():
    return gloop(3)
