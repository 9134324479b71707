import pytest

from specmate.congruence_solver import (
    ResidueVector,
    SolutionVector,
    crt_combine,
    perfect_representatives,
    shortest_representative,
    solve_master,
    solve_prime_system,
)
from specmate.errors import PreconditionError, SolutionOverflowError
from specmate.level_bound import compute_level_bound
from specmate.walk_matrix import build_walk_data


def _digits(text: str) -> tuple[int, ...]:
    return tuple(int(c, 16) for c in text)


def _trivial(n: int, L: int) -> list[tuple[int, ...]]:
    return [tuple(L if i == k else 0 for i in range(n)) for k in range(n)]


@pytest.fixture(scope="module")
def setup13(graph13):
    wd = build_walk_data(graph13)
    return wd, compute_level_bound(graph13, wd)


def test_residue_vector_validation():
    with pytest.raises(ValueError):
        ResidueVector(4, (0, 4))
    with pytest.raises(ValueError):
        ResidueVector(0, ())
    assert ResidueVector(4, (0, 0)).is_zero


def test_solution_vector_trivial_index():
    assert SolutionVector((0, 12, 0)).trivial_index == 1
    assert SolutionVector((6, 6, 0)).trivial_index is None


@pytest.mark.parametrize("modulus", ["4", "3"])
def test_step_one_of_example_thirteen(graph13, example13, setup13, modulus):
    _, lb = setup13
    pp = next(pp for pp in lb.primes if str(pp.modulus) == modulus)
    residues = solve_prime_system(pp.system, graph13, pp.p, pp.t, invariant_factors=pp.invariant_factors)
    expected = example13["step1"][modulus]["residues"]
    assert sorted(r.entries for r in residues) == sorted(_digits(s) for s in expected)
    assert all(r.modulus == pp.modulus for r in residues)


def test_step_one_respects_the_cap(graph13, setup13):
    _, lb = setup13
    pp = lb.primes[0]
    with pytest.raises(SolutionOverflowError) as info:
        solve_prime_system(pp.system, graph13, pp.p, pp.t, cap=15)
    assert info.value.stage == "linear"
    assert info.value.count == 16
    assert info.value.prime == 2


def test_crt_combine_example():
    xi1 = ResidueVector(4, _digits("0132332122311"))
    xi2 = ResidueVector(3, _digits("0010021000122"))
    eta = crt_combine([xi1, xi2])
    assert eta.modulus == 12
    assert eta.entries == _digits("09763ba966755")


def test_crt_combine_rejects_common_factors():
    with pytest.raises(PreconditionError):
        crt_combine([ResidueVector(4, (1,)), ResidueVector(6, (1,))])
    with pytest.raises(PreconditionError):
        crt_combine([])


def test_shortest_representative():
    eta = ResidueVector(12, (0, 6, 7, 11, 5))
    assert shortest_representative(eta) == [0, 6, -5, -1, 5]


def test_perfect_representatives_examples(graph13, example13):
    x20, x21, x22, x23 = (tuple(v) for v in example13["nontrivial_solutions"][6:10])
    found = perfect_representatives(ResidueVector(12, _digits("06a0624600a22")), graph13, 12)
    assert sorted(x.x for x in found) == sorted([x20, x21, x22])
    found = perfect_representatives(ResidueVector(12, _digits("06206a86002aa")), graph13, 12)
    assert [x.x for x in found] == [x23]
    assert perfect_representatives(ResidueVector(12, _digits("6000660060660")), graph13, 12) == []


def test_perfect_representatives_of_zero_are_trivial(graph13):
    found = perfect_representatives(ResidueVector(12, (0,) * 13), graph13, 12)
    assert [x.x for x in found] == _trivial(13, 12)


def test_master_solutions_of_example_thirteen(graph13, example13, setup13):
    wd, lb = setup13
    master = solve_master(graph13, wd, lb)
    expected = _trivial(13, 12) + [tuple(v) for v in example13["nontrivial_solutions"]]
    assert len(master) == example13["solution_count"]
    assert sorted(x.x for x in master) == sorted(expected)
    assert [x.x for x in master][:13] == _trivial(13, 12)
    assert [(s.modulus, s.linear_count, s.filtered_count) for s in master.per_prime] == [(4, 16, 8), (3, 3, 3)]
    assert master.product_size == 24


def test_master_solutions_satisfy_the_system(graph13, setup13):
    wd, lb = setup13
    for x in solve_master(graph13, wd, lb):
        v = x.x
        assert sum(v) == 12
        assert sum(a * a for a in v) == 144
        assert graph13.quadratic_form(v) == 0
        for pp in lb.primes:
            assert all(a % pp.modulus == 0 for a in pp.system.transpose() @ list(v))


def test_master_solutions_of_example_nine(graph9, example9):
    wd = build_walk_data(graph9)
    lb = compute_level_bound(graph9, wd)
    master = solve_master(graph9, wd, lb)
    assert len(master) == example9["solution_count"]
    assert sorted(x.x for x in master) == sorted(tuple(v) for v in example9["solutions"])
    assert [(s.modulus, s.linear_count) for s in master.per_prime] == [(128, 2048)]


def test_master_product_overflow(graph13, setup13):
    wd, lb = setup13
    with pytest.raises(SolutionOverflowError) as info:
        solve_master(graph13, wd, lb, cap=20)
    assert info.value.stage == "product"
    assert info.value.count == 24


def test_master_solutions_of_k2(k2):
    wd = build_walk_data(k2)
    master = solve_master(k2, wd, compute_level_bound(k2, wd))
    assert [x.x for x in master] == [(2, 0), (0, 2)]
