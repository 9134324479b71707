import random

import pytest

from conftest import all_graphs, brute_isomorphic
from specmate.canonical import canonical_form, canonical_graph, is_asymmetric
from specmate.graph import Graph, random_gnp_half


def _shuffled(g: Graph, seed: int) -> Graph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.permuted(perm)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_form_separates_isomorphism_classes(n):
    graphs = list(all_graphs(n))
    classes: dict = {}
    for g in graphs:
        classes.setdefault(canonical_form(g), []).append(g)
    for members in classes.values():
        assert all(brute_isomorphic(members[0], h) for h in members[1:])
    representatives = [members[0] for members in classes.values()]
    for i, g in enumerate(representatives):
        for h in representatives[i + 1:]:
            assert not brute_isomorphic(g, h)
    expected_classes = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}
    assert len(classes) == expected_classes[n]


def test_canonical_form_on_six_vertices_against_brute_force():
    rng = random.Random(11)
    for seed in range(40):
        g = random_gnp_half(6, seed)
        h = _shuffled(g, seed)
        assert canonical_form(g) == canonical_form(h)
        other = random_gnp_half(6, 1000 + rng.randrange(1000))
        assert (canonical_form(g) == canonical_form(other)) == brute_isomorphic(g, other)


@pytest.mark.parametrize("seed", range(10))
def test_canonical_graph_is_invariant(seed):
    g = random_gnp_half(14, seed)
    h = _shuffled(g, seed)
    assert canonical_graph(g) == canonical_graph(h)
    assert canonical_form(canonical_graph(g)) == canonical_form(g)


def test_canonical_form_of_regular_graphs():
    cycle = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert canonical_form(cycle) != canonical_form(two_triangles)
    assert canonical_form(prism) == canonical_form(_shuffled(prism, 3))
    petersen = Graph.from_edges(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)],
    )
    assert canonical_form(petersen) == canonical_form(_shuffled(petersen, 5))


def _disjoint_cycles(copies: int, length: int) -> Graph:
    n = copies * length
    edges = [(c * length + i, c * length + (i + 1) % length) for c in range(copies) for i in range(length)]
    return Graph.from_edges(n, edges)


@pytest.mark.parametrize("copies", [4, 5, 6])
def test_canonical_form_of_disjoint_cycles(copies):
    g = _disjoint_cycles(copies, 5)
    h = _shuffled(g, copies)
    assert canonical_form(g) == canonical_form(h)
    assert canonical_graph(g) == canonical_graph(h)


def test_disjoint_cycles_of_different_lengths_differ():
    assert canonical_form(_disjoint_cycles(4, 5)) != canonical_form(_disjoint_cycles(2, 10))


def test_is_asymmetric_small_graphs():
    assert not is_asymmetric(Graph.complete(3))
    assert is_asymmetric(Graph.empty(1))
    # every graph on 2..5 vertices has a nontrivial automorphism
    for n in range(2, 6):
        assert not any(is_asymmetric(g) for g in all_graphs(n))


def test_is_asymmetric_smallest_asymmetric_tree():
    tree = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])
    assert is_asymmetric(tree)
    assert not is_asymmetric(Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]))


def test_is_asymmetric_on_example_nine(graph9):
    assert is_asymmetric(graph9)


def test_is_asymmetric_matches_networkx():
    nx = pytest.importorskip("networkx")
    from networkx.algorithms.isomorphism import GraphMatcher

    for seed in range(30):
        g = random_gnp_half(8, seed)
        h = nx.Graph(g.edges())
        h.add_nodes_from(range(g.n))
        automorphisms = sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())
        assert is_asymmetric(g) == (automorphisms == 1)
