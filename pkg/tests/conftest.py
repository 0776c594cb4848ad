import math

import numpy as np
import pytest

from graphheat import is_connected, make_erdos_renyi


def random_connected_er(rng, n_min=10, n_max=80):
    """Rejection-sample a connected ER graph with density near the connectivity threshold."""
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        p = min(1.0, (math.log(n) + 1.5) / n * rng.uniform(1.2, 2.5))
        g = make_erdos_renyi(n, p, int(rng.integers(2**32)))
        if is_connected(g):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
