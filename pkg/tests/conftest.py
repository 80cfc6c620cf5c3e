import pytest

from modtheory import Analysis, fixture_module


@pytest.fixture(scope="session")
def z2():
    return fixture_module("z2")[1]


@pytest.fixture(scope="session")
def z4():
    return fixture_module("z4")[1]


@pytest.fixture(scope="session")
def z6():
    return fixture_module("z6")[1]


@pytest.fixture(scope="session")
def e28():
    return fixture_module("e28")[1]


@pytest.fixture(scope="session")
def e28_regular():
    return fixture_module("e28-regular")[1]


@pytest.fixture(scope="session")
def z6_truncated():
    return fixture_module("z6-truncated-2.3")[1]


@pytest.fixture(scope="session")
def all_fixture_modules(z2, z4, z6, e28, e28_regular, z6_truncated):
    return {"z2": z2, "z4": z4, "z6": z6, "e28": e28,
            "e28-regular": e28_regular, "z6-truncated-2.3": z6_truncated}


@pytest.fixture(scope="session")
def ctx_of():
    cache = {}

    def get(module):
        if module not in cache:
            cache[module] = Analysis(module)
        return cache[module]
    return get
