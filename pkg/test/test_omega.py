from collections import Counter

import pytest
from sympy import Matrix

from specmate.canonical import canonical_form
from specmate.congruence_solver import SolutionVector, solve_master
from specmate.errors import InternalInconsistencyError, PreconditionError
from specmate.graph import Graph
from specmate.level_bound import compute_level_bound
from specmate.omega import OmegaGraph, VerdictStatus, build_omega, clique_to_mate, enumerate_n_cliques, render_verdict
from specmate.walk_matrix import build_walk_data


def _pipeline(g: Graph):
    wd = build_walk_data(g)
    lb = compute_level_bound(g, wd)
    master = solve_master(g, wd, lb)
    omega = build_omega(master.solutions, g, lb.L)
    return wd, omega, enumerate_n_cliques(omega, g.n)


def _vector_sets(omega, cliques):
    return {frozenset(omega.vertices[i].x for i in c) for c in cliques}


@pytest.fixture(scope="module")
def run13(graph13):
    return _pipeline(graph13)


@pytest.fixture(scope="module")
def run9(graph9):
    return _pipeline(graph9)


def test_omega_of_k2_is_complete(k2):
    _, omega, cliques = _pipeline(k2)
    assert omega.order == 2
    assert omega.is_complete
    assert omega.edge_count == 1
    assert cliques == [(0, 1)]


def test_enumerate_cliques_on_a_small_graph():
    vertices = tuple(SolutionVector((i,)) for i in range(5))
    # triangles 012, 234 and 024
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (0, 4)]
    rows = [0] * 5
    for i, j in edges:
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    omega = OmegaGraph(vertices, tuple(rows), 1)
    assert enumerate_n_cliques(omega, 3) == [(0, 1, 2), (0, 2, 4), (2, 3, 4)]
    assert enumerate_n_cliques(omega, 4) == []


def test_build_omega_needs_vertices(k2):
    with pytest.raises(PreconditionError):
        build_omega((), k2, 2)


def test_cliques_of_example_thirteen(run13, example13):
    _, omega, cliques = run13
    assert omega.order == 23
    assert len(cliques) == example13["clique_count"]
    solutions = [tuple(12 if i == k else 0 for i in range(13)) for k in range(13)]
    solutions += [tuple(v) for v in example13["nontrivial_solutions"]]
    expected = {frozenset(solutions[i - 1] for i in c) for c in example13["nontrivial_cliques"]}
    expected.add(frozenset(solutions[:13]))
    assert _vector_sets(omega, cliques) == expected


def test_mates_of_example_thirteen(graph13, run13, example13):
    wd, omega, cliques = run13
    verdict = render_verdict(graph13, wd, omega, cliques)
    assert verdict.status is VerdictStatus.NON_DGS
    assert len(verdict.mates) == 2
    printed = {canonical_form(Graph.from_matrix(m)) for m in example13["mates"]}
    assert {m.label for m in verdict.mates} == printed
    assert all(m.preimages == 1 for m in verdict.mates)
    assert sorted(m.level for m in verdict.mates) == [3, 6]
    assert verdict.stats.clique_count == 3


def test_clique_to_mate_reports_the_input_for_the_trivial_clique(graph13, run13):
    _, omega, cliques = run13
    report = clique_to_mate(tuple(range(13)), omega, graph13)
    assert report.is_original
    assert report.mate == graph13
    assert report.level == 1
    with pytest.raises(PreconditionError):
        clique_to_mate(cliques[0][:5], omega, graph13)


def test_cliques_of_example_nine(run9, example9):
    _, omega, cliques = run9
    assert omega.order == 37
    assert len(cliques) == example9["clique_count"]
    solutions = [tuple(v) for v in example9["solutions"]]
    expected = {frozenset(solutions[i - 1] for i in c) for c in example9["cliques"]}
    assert _vector_sets(omega, cliques) == expected


def test_verdict_of_example_nine(graph9, run9, example9):
    wd, omega, cliques = run9
    verdict = render_verdict(graph9, wd, omega, cliques)
    assert verdict.status is VerdictStatus.NON_DGS
    assert len(verdict.mates) == 4
    assert Counter(m.preimages for m in verdict.mates) == Counter({2: 2, 1: 2})
    assert all(m.symmetric == (m.preimages == 1) for m in verdict.mates)
    assert len({m.label for m in verdict.mates} | {canonical_form(graph9)}) == 5


def test_render_verdict_demands_the_trivial_clique(graph13, run13):
    wd, omega, cliques = run13
    nontrivial = [c for c in cliques if c != tuple(range(13))]
    with pytest.raises(InternalInconsistencyError):
        render_verdict(graph13, wd, omega, nontrivial)


def test_mate_transform_is_the_walk_matrix_quotient(graph13, run13):
    wd, omega, cliques = run13
    L = omega.L
    W = Matrix(wd.W.to_lists())
    solutions = {v.x for v in omega.vertices}
    for clique in cliques:
        report = clique_to_mate(clique, omega, graph13)
        Q = Matrix(report.Q_times_L.to_lists()) / L
        WH = Matrix(build_walk_data(report.mate).W.to_lists())
        assert WH * W.inv() == Q.T
        assert L % report.level == 0
        assert all(tuple(col) in solutions for col in report.Q_times_L.columns())


def test_every_known_mate_is_reachable_from_the_solutions(run13, example13):
    wd, omega, _ = run13
    L = omega.L
    W = Matrix(wd.W.to_lists())
    solutions = {v.x for v in omega.vertices}
    for m in example13["mates"]:
        WH = Matrix(build_walk_data(Graph.from_matrix(m)).W.to_lists())
        LQ = (WH * W.inv()).T * L
        assert all(q.is_integer for q in LQ)
        for j in range(LQ.cols):
            assert tuple(int(q) for q in LQ.col(j)) in solutions
