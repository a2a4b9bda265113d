import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from pcaut import pcp  # noqa: E402
from pcaut.corpus import desk_group  # noqa: E402


@pytest.fixture(scope="session")
def D8():
    return pcp.family_extraspecial(2, 1, "D")


@pytest.fixture(scope="session")
def Q8():
    return pcp.family_extraspecial(2, 1, "Q")


@pytest.fixture(scope="session")
def He27():
    return pcp.family_extraspecial(3, 1, "p")


@pytest.fixture(scope="session")
def UT9():
    return pcp.family_unitriangular(3, 2)


@pytest.fixture(scope="session")
def K3211():
    return pcp.family_metacyclic_K(3, 2, 1, 1)


@pytest.fixture(scope="session")
def NM3():
    return pcp.family_nonmetacyclic_example(3)


@pytest.fixture(scope="session")
def desk():
    return {name: desk_group(name) for name in ("desk_16_2", "desk_32_2", "desk_32_4", "desk_128_8")}
