import pytest

from omegalab.builtins import builtin
from omegalab.enumerator import enumerate_domain
from omegalab.scattered import ScatterSpec, register, sufficient_budget

GEOM_BUDGET = 400


@pytest.fixture(scope="session")
def m1():
    return builtin("M1")


@pytest.fixture(scope="session")
def omega_demo():
    return builtin("OMEGA_DEMO")


@pytest.fixture(scope="session")
def geom():
    return builtin("GEOM")


@pytest.fixture(scope="session")
def m1_cache(m1):
    return enumerate_domain(m1, 100)


@pytest.fixture(scope="session")
def omega_demo_cache(omega_demo):
    return enumerate_domain(omega_demo, 100)


@pytest.fixture(scope="session")
def geom_cache(geom):
    return enumerate_domain(geom, GEOM_BUDGET)


@pytest.fixture(scope="session")
def scatter_double():
    return ScatterSpec.from_catalog("double", ["1"] * 6, 6)


@pytest.fixture(scope="session")
def scatter_identity():
    return ScatterSpec.from_catalog("identity", ["1", "0", "1", "0", "1", "0"], 6)


@pytest.fixture(scope="session")
def registered_scatter_machines(scatter_double, scatter_identity):
    """The runtime-registered scattered constructions, visible as built-ins."""
    return [register(scatter_double), register(scatter_identity)]


@pytest.fixture(scope="session")
def scatter_double_cache(scatter_double, registered_scatter_machines):
    return enumerate_domain(registered_scatter_machines[0], sufficient_budget(scatter_double))
