"""Master system: per-prime congruences, CRT combination, perfect representatives.

The master system asks for integer vectors x with

    (W^(p_i))ᵀ x ≡ 0 (mod p_i^t_i) for every potential prime,
    eᵀx = L,  xᵀx = L²,  xᵀAx = 0.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd, prod

import numpy as np
from sympy.ntheory.modular import crt

from specmate.errors import InternalInconsistencyError, PreconditionError, SolutionOverflowError
from specmate.factorization import ord_p
from specmate.graph import Graph
from specmate.int_matrix import IntMatrix
from specmate.level_bound import LevelBound
from specmate.smith import smith_normal_form
from specmate.walk_matrix import WalkData

logger = logging.getLogger(__name__)

DEFAULT_CAP = 1 << 16
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class ResidueVector:
    modulus: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if any(not 0 <= x < self.modulus for x in self.entries):
            raise ValueError(f"entries must be reduced modulo {self.modulus}")

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class SolutionVector:
    x: tuple[int, ...]

    @property
    def trivial_index(self) -> int | None:
        """k when x = L·e_k, else None."""
        nonzero = [i for i, v in enumerate(self.x) if v]
        return nonzero[0] if len(nonzero) == 1 else None


@dataclass(frozen=True)
class PrimeStats:
    modulus: int
    linear_count: int
    filtered_count: int


@dataclass(frozen=True)
class MasterSolution:
    solutions: tuple[SolutionVector, ...]
    per_prime: tuple[PrimeStats, ...] = ()
    product_size: int = 1

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)


def _array(rows, bound: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64 if bound < _INT64_SAFE else object)


def solve_prime_system(
    Wp: IntMatrix,
    g: Graph,
    p: int,
    t: int,
    cap: int = DEFAULT_CAP,
    invariant_factors: tuple[int, ...] | None = None,
) -> list[ResidueVector]:
    """All ξ mod p^t with (Wp)ᵀξ ≡ 0, ξᵀξ ≡ 0 and ξᵀAξ ≡ 0.

    The linear solutions are Σ k_i (m / gcd(m, d_i)) V e_i with k_i < gcd(m, d_i),
    taken from the Smith form U·(Wp)ᵀ·V = diag(d) of the system reduced mod m.
    Coefficient vectors k run in lexicographic order.
    """
    m = p**t
    if m <= 1:
        raise PreconditionError(f"modulus p^t = {m} must exceed 1")
    n = g.n
    system = IntMatrix.from_rows([[v % m for v in row] for row in Wp.transpose().entries])
    snf = smith_normal_form(system, with_transforms=True)
    sizes = [gcd(m, di) for di in snf.d]
    count = prod(sizes)
    if invariant_factors is not None:
        expected = prod(gcd(m, di) for di in invariant_factors)
        if count != expected:
            raise InternalInconsistencyError(
                f"linear solution count {count} mod {m} disagrees with the Smith form prediction {expected}"
            )
    if count > cap:
        raise SolutionOverflowError("linear", count, cap, prime=p)

    V = snf.V
    free = [i for i, size in enumerate(sizes) if size > 1]
    zero = ResidueVector(m, (0,) * n)
    if not free:
        return [zero]

    basis = [[(m // sizes[i]) * V[r, i] % m for r in range(n)] for i in free]
    coeffs = list(product(*(range(sizes[i]) for i in free)))
    bound = n * n * m * m
    X = (_array(coeffs, bound) @ _array(basis, bound)) % m
    A = _array(g.matrix(), bound)
    norms = (X * X).sum(axis=1) % m
    quads = ((X @ A) * X).sum(axis=1) % m
    keep = (norms == 0) & (quads == 0)

    result = []
    rows = Wp.transpose().entries
    for row in X[keep]:
        entries = tuple(int(v) for v in row)
        if any(sum(a * b for a, b in zip(r, entries)) % m for r in rows):
            raise InternalInconsistencyError(f"enumerated vector violates the linear system mod {m}")
        result.append(ResidueVector(m, entries))
    logger.debug("mod %d: %d linear solutions, %d after quadratic filters", m, count, len(result))
    return result


def _idempotents(moduli: list[int]) -> list[int]:
    for a, b in combinations(moduli, 2):
        if gcd(a, b) != 1:
            raise PreconditionError(f"moduli {a} and {b} are not coprime")
    basis = []
    for i in range(len(moduli)):
        residues = [1 if j == i else 0 for j in range(len(moduli))]
        value, _ = crt(moduli, residues)
        basis.append(int(value))
    return basis


def _combine(parts, idempotents: list[int], modulus: int) -> ResidueVector:
    n = len(parts[0].entries)
    return ResidueVector(
        modulus,
        tuple(sum(c * part.entries[k] for c, part in zip(idempotents, parts)) % modulus for k in range(n)),
    )


def crt_combine(parts) -> ResidueVector:
    """Entrywise Chinese remaindering of residue vectors with pairwise coprime moduli."""
    parts = list(parts)
    if not parts:
        raise PreconditionError("nothing to combine")
    moduli = [part.modulus for part in parts]
    return _combine(parts, _idempotents(moduli), prod(moduli))


def shortest_representative(eta: ResidueVector) -> list[int]:
    """The representative with entries in (-m/2, m/2]."""
    m = eta.modulus
    return [r - m if 2 * r > m else r for r in eta.entries]


def perfect_representatives(eta: ResidueVector, g: Graph, L: int) -> list[SolutionVector]:
    """All x ≡ η (mod L) with eᵀx = L, xᵀx = L² and xᵀAx = 0."""
    n = len(eta.entries)
    if eta.is_zero:
        return [SolutionVector(tuple(L if i == k else 0 for i in range(n))) for k in range(n)]

    u = shortest_representative(eta)
    total = sum(u)
    norm = sum(v * v for v in u)
    target = L * L
    # pruning: a perfect representative keeps wᵀw <= m² and |eᵀw - m| <= 3m
    if norm > target or abs(total - L) > 3 * L or (total - L) % L:
        return []
    # each change moves the sum by -L (positive entry) or +L (negative entry)
    k = (total - L) // L
    positives = [i for i, v in enumerate(u) if v > 0]
    negatives = [i for i, v in enumerate(u) if v < 0]

    found = []
    for n_pos in range(4):
        n_neg = n_pos - k
        if n_neg < 0 or n_pos + n_neg > 3:
            continue
        for ups in combinations(positives, n_pos):
            gain = sum(target - 2 * L * u[i] for i in ups)
            for downs in combinations(negatives, n_neg):
                if norm + gain + sum(target + 2 * L * u[i] for i in downs) != target:
                    continue
                w = list(u)
                for i in ups:
                    w[i] -= L
                for i in downs:
                    w[i] += L
                if g.quadratic_form(w) == 0:
                    found.append(SolutionVector(tuple(w)))
    return found


def _check_solution(x: SolutionVector, g: Graph, lb: LevelBound):
    L = lb.L
    v = x.x
    if sum(v) != L or sum(a * a for a in v) != L * L or g.quadratic_form(v) != 0:
        raise InternalInconsistencyError(f"solution {v} violates the master system equalities")
    for pp in lb.primes:
        for row in pp.system.transpose().entries:
            if sum(a * b for a, b in zip(row, v)) % pp.modulus:
                raise InternalInconsistencyError(f"solution {v} violates the congruences mod {pp.modulus}")


def _solution_key(x: SolutionVector):
    k = x.trivial_index
    return (0, k, ()) if k is not None and x.x[k] > 0 else (1, 0, x.x)


def solve_master(g: Graph, wd: WalkData, lb: LevelBound, cap: int = DEFAULT_CAP) -> MasterSolution:
    n = g.n
    L = lb.L
    if L < 1:
        raise PreconditionError(f"level bound must be positive, got {L}")
    if L == 1:
        units = tuple(SolutionVector(tuple(int(i == k) for i in range(n))) for k in range(n))
        return MasterSolution(units)

    stats = []
    parts = []
    running = 1
    for pp in lb.primes:
        if pp.certified:
            expected = pp.p ** ord_p(prod(pp.invariant_factors), pp.p)
        else:
            expected = None
        residues = solve_prime_system(pp.system, g, pp.p, pp.t, cap, pp.invariant_factors)
        linear = prod(gcd(pp.modulus, di) for di in pp.invariant_factors)
        if expected is not None and linear != expected:
            raise InternalInconsistencyError(
                f"linear count {linear} mod {pp.modulus} differs from p^ord_p(det) = {expected}"
            )
        stats.append(PrimeStats(pp.modulus, linear, len(residues)))
        running *= len(residues)
        if running > cap:
            raise SolutionOverflowError("product", running, cap)
        parts.append(residues)

    idempotents = _idempotents([pp.modulus for pp in lb.primes])
    seen: set[tuple[int, ...]] = set()
    solutions = []
    for combo in product(*parts):
        eta = _combine(combo, idempotents, L)
        for x in perfect_representatives(eta, g, L):
            if x.x not in seen:
                seen.add(x.x)
                solutions.append(x)

    for x in solutions:
        _check_solution(x, g, lb)
    trivial = [x for x in solutions if x.trivial_index is not None]
    if len(trivial) != n:
        raise InternalInconsistencyError(f"expected {n} trivial solutions, found {len(trivial)}")
    solutions.sort(key=_solution_key)
    logger.info("master system mod L=%d: %d solutions from %d residue combinations", L, len(solutions), running)
    return MasterSolution(tuple(solutions), tuple(stats), running)
