import random

import pytest

from wildtrace import build_tower

CONFIGS = {
    "A": (1, 1, 1),
    "B": (2, 1, 1),
    "C": (1, 3, 2),
    "D": (1, 1, 2),
}

_tower_cache = {}


def get_tower(name):
    if name not in _tower_cache:
        _tower_cache[name] = build_tower(*CONFIGS[name])
    return _tower_cache[name]


@pytest.fixture(scope="session")
def tower_a():
    return get_tower("A")


@pytest.fixture(scope="session")
def tower_b():
    return get_tower("B")


@pytest.fixture(scope="session")
def tower_c():
    return get_tower("C")


@pytest.fixture(scope="session")
def tower_d():
    return get_tower("D")


@pytest.fixture()
def rng():
    return random.Random(20260809)
