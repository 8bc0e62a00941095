import pytest

from groupcover import build


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(expr):
        if expr not in cache:
            cache[expr] = build(expr)
        return cache[expr]

    return get
