import math

import numpy as np
import pytest

from equipoly.oracle import hexagon_system, solve_all


@pytest.fixture(scope="session")
def cloud_cache():
    """Hexagon oracle clouds at res 48, computed once per session."""
    cache = {}

    def get(theta, res=48):
        key = (round(theta, 12), res)
        if key not in cache:
            cache[key] = solve_all(hexagon_system(theta), res)
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


TAU = 2 * math.pi
