import random

import pytest

from k3orb import OrbifoldMukaiVector, SingularPointData, SurfaceConfig, builtin_nikulin, root_system

LABELS = ["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"]


def random_config(rng, name="random"):
    rank = rng.randint(1, 3)
    gram = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = 2 * rng.randint(-2, 2)
        for j in range(i):
            gram[i][j] = gram[j][i] = rng.randint(-3, 3)
    points = [
        SingularPointData(root_system(rng.choice(LABELS)), rng.randint(1, 3))
        for _ in range(rng.randint(0, 3))
    ]
    return SurfaceConfig(name, gram, points)


def random_vector(rng, config, lo=-5, hi=5):
    coords = [rng.randint(lo, hi) for _ in range(config.dimension)]
    return OrbifoldMukaiVector.from_coords(coords, config)


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def nikulin():
    return builtin_nikulin()


@pytest.fixture
def configs(rng):
    return [random_config(rng, f"random{i}") for i in range(5)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
