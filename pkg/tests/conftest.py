import itertools

import numpy as np
import pytest

from mimsolve.graph import Graph


def all_graphs(n):
    """Every labelled graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


def random_graph(n, rng, p=None):
    p = rng.random() if p is None else p
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
