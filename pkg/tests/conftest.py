import random
from pathlib import Path

import pytest

from biblock import enumerate_biblock, from_edge_list, is_connected, read_edge_list

FIXTURES = Path(__file__).parent / "fixtures"
SCHEMAS = Path(__file__).parent.parent / "schemas"


@pytest.fixture(scope="session")
def fig1():
    return read_edge_list(str(FIXTURES / "fig1.edges"))


@pytest.fixture(scope="session")
def biblock_by_k():
    """Enumerated bi-block graphs keyed by vertex count, shared per run."""
    return {k: enumerate_biblock(k) for k in range(2, 10)}


def random_connected_bipartite(rng: random.Random, k: int):
    """One seeded random connected bipartite graph on k vertices."""
    if k == 1:
        return from_edge_list(1, [])
    while True:
        m = rng.randint(1, k - 1)
        left = list(range(m))
        right = list(range(m, k))
        prob = rng.uniform(0.25, 0.8)
        pairs = [(u, v) for u in left for v in right if rng.random() < prob]
        g = from_edge_list(k, pairs)
        if is_connected(g):
            return g


def random_biblock(rng: random.Random, k: int):
    """One seeded random bi-block graph built by random block attachment."""
    from biblock.enumeration import _attach_block
    from biblock import complete_bipartite

    a = rng.randint(1, max(1, k // 2))
    b = rng.randint(1, max(1, k - a))
    if a + b > k:
        a, b = 1, 1
    g = complete_bipartite(a, b)
    while g.k < k:
        budget = k - g.k
        j = rng.randint(1, budget)
        side = rng.randint(1, j)
        g = _attach_block(g, rng.randrange(g.k), side, j - side + 1)
    return g
