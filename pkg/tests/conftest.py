import pytest

from amzv import field_from_q

_SPECS = {}


def get_spec(q):
    """Session-shared field specs so memo caches accumulate across tests."""
    if q not in _SPECS:
        _SPECS[q] = field_from_q(q)
    return _SPECS[q]


@pytest.fixture(scope="session")
def spec_q2():
    return get_spec(2)


@pytest.fixture(scope="session")
def spec_q3():
    return get_spec(3)


@pytest.fixture(scope="session")
def spec_q4():
    return get_spec(4)


@pytest.fixture(scope="session")
def spec_q5():
    return get_spec(5)
