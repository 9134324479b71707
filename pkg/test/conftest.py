import json
from itertools import permutations, product
from pathlib import Path

import pytest

from specmate.graph import Graph

DATA = Path(__file__).parent


def _load(name: str) -> dict:
    with open(DATA / name) as f:
        return json.load(f)


def as_int(value) -> int:
    """Fixture integers too large for comfort are stored as decimal strings."""
    return int(value)


def all_graphs(n: int):
    """Every labelled graph on n vertices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in product((0, 1), repeat=len(pairs)):
        yield Graph.from_edges(n, [pair for pair, bit in zip(pairs, bits) if bit])


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return any(g.permuted(perm) == h for perm in permutations(range(g.n)))


@pytest.fixture(scope="session")
def example13() -> dict:
    """Controllable 13-vertex graph with L = 12.

    `nontrivial_cliques` index the solutions as 1..13 for 12·e_k followed by
    14..23 for the rows of `nontrivial_solutions`.
    """
    return _load("example13.json")


@pytest.fixture(scope="session")
def example9() -> dict:
    """Almost controllable 9-vertex graph with L = 128; `cliques` index `solutions` from 1."""
    return _load("example9.json")


@pytest.fixture(scope="session")
def graph13(example13) -> Graph:
    return Graph.from_matrix(example13["adjacency"])


@pytest.fixture(scope="session")
def graph9(example9) -> Graph:
    return Graph.from_matrix(example9["adjacency"])


@pytest.fixture
def k2() -> Graph:
    return Graph.complete(2)
