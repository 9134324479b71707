import logging
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from math import gcd

import numpy as np

from specmate.canonical import CanonicalLabel, canonical_form, is_asymmetric
from specmate.congruence_solver import SolutionVector
from specmate.errors import InternalInconsistencyError, PreconditionError
from specmate.graph import Graph, complement
from specmate.int_matrix import IntMatrix
from specmate.int_poly import char_poly
from specmate.walk_matrix import Controllability, WalkData

logger = logging.getLogger(__name__)

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class OmegaGraph:
    """Compatibility graph on master-system solutions; adjacency rows are bitmasks."""

    vertices: tuple[SolutionVector, ...]
    adjacency: tuple[int, ...]
    L: int

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    @property
    def is_complete(self) -> bool:
        full = (1 << self.order) - 1
        return all(row == full & ~(1 << i) for i, row in enumerate(self.adjacency))


class VerdictStatus(Enum):
    DGS = "DGS"
    NON_DGS = "NonDGS"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class MateReport:
    clique: tuple[int, ...]
    Q_times_L: IntMatrix
    mate: Graph
    is_original: bool
    label: CanonicalLabel
    level: int
    symmetric: bool = False
    preimages: int = 1


@dataclass(frozen=True)
class VerdictStats:
    L: int = 1
    omega_vertices: int = 0
    omega_edges: int = 0
    clique_count: int = 0
    timings_ms: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    mates: tuple[MateReport, ...] = ()
    reason: str | None = None
    reason_code: str | None = None
    stats: VerdictStats = field(default_factory=VerdictStats)

    @classmethod
    def undecided(cls, code: str, reason: str, stats: VerdictStats | None = None) -> "Verdict":
        return cls(VerdictStatus.UNDECIDED, reason=reason, reason_code=code, stats=stats or VerdictStats())


def _products(vectors: list[tuple[int, ...]], g: Graph, L: int) -> tuple[np.ndarray, np.ndarray]:
    n = g.n
    dtype = np.int64 if n * n * L * L < _INT64_SAFE else object
    X = np.array(vectors, dtype=dtype)
    A = np.array(g.matrix(), dtype=dtype)
    return X @ X.T, X @ A @ X.T


def build_omega(solutions, g: Graph, L: int) -> OmegaGraph:
    vertices = tuple(solutions)
    if not vertices:
        raise PreconditionError("Omega needs at least one solution")
    gram, mixed = _products([v.x for v in vertices], g, L)
    square = L * L
    rows = []
    for i in range(len(vertices)):
        mask = 0
        for j in range(len(vertices)):
            if i != j and gram[i, j] == 0 and mixed[i, j] in (0, square):
                mask |= 1 << j
        rows.append(mask)
    return OmegaGraph(vertices, tuple(rows), L)


def enumerate_n_cliques(omega: OmegaGraph, n: int) -> list[tuple[int, ...]]:
    """Every clique of order n, by Bron–Kerbosch with pivoting.

    No clique of Ω exceeds order n, so the order-n cliques are exactly the
    maximal cliques that reach size n; branches that cannot reach n are cut.
    """
    if omega.order == n and omega.is_complete:
        return [tuple(range(n))]
    adj = omega.adjacency
    found: list[tuple[int, ...]] = []

    def expand(r: list[int], p: int, x: int):
        if len(r) + p.bit_count() < n:
            return
        if not p:
            if not x:
                if len(r) > n:
                    raise InternalInconsistencyError(f"Omega has a clique of order {len(r)} > {n}")
                found.append(tuple(sorted(r)))
            return
        pivot = max(_bits(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in _bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r + [v], p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand([], (1 << omega.order) - 1, 0)
    return sorted(found)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _generalized_char_polys(g: Graph):
    return (
        char_poly(IntMatrix.from_rows(g.matrix())),
        char_poly(IntMatrix.from_rows(complement(g).matrix())),
    )


def clique_to_mate(clique, omega: OmegaGraph, g: Graph) -> MateReport:
    n = g.n
    L = omega.L
    clique = tuple(sorted(clique))
    if len(clique) != n:
        raise PreconditionError(f"clique has {len(clique)} vertices, expected {n}")
    columns = [omega.vertices[i].x for i in clique]
    X = IntMatrix.from_columns(columns)
    square = L * L

    gram, mixed = _products(columns, g, L)
    for i in range(n):
        if sum(columns[i]) != L:
            raise InternalInconsistencyError(f"column {clique[i]} does not sum to L={L}")
        for j in range(n):
            if gram[i, j] != (square if i == j else 0):
                raise InternalInconsistencyError("clique columns are not orthogonal of norm L")
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            value = int(mixed[i, j])
            if value not in (0, square) or (i == j and value):
                raise InternalInconsistencyError(f"(LQ)ᵀA(LQ) entry ({i}, {j}) = {value} is not 0 or L²")
            b[i][j] = value // square
    mate = Graph.from_matrix(b)
    if _generalized_char_polys(mate) != _generalized_char_polys(g):
        raise InternalInconsistencyError("mate is not generalized cospectral with the input graph")

    content = 0
    for row in X.entries:
        for v in row:
            content = gcd(content, v)
    label = canonical_form(mate)
    return MateReport(
        clique=clique,
        Q_times_L=X,
        mate=mate,
        is_original=label == canonical_form(g),
        label=label,
        level=L // gcd(L, content),
    )


def render_verdict(g: Graph, wd: WalkData, omega: OmegaGraph, cliques) -> Verdict:
    n = g.n
    cliques = [tuple(c) for c in cliques]
    trivial = tuple(sorted(i for i, v in enumerate(omega.vertices) if v.trivial_index is not None))
    if trivial not in cliques:
        raise InternalInconsistencyError("the clique of trivial solutions is missing")
    stats = VerdictStats(omega.L, omega.order, omega.edge_count, len(cliques))
    reports = [clique_to_mate(c, omega, g) for c in cliques]

    groups: dict[CanonicalLabel, list[MateReport]] = defaultdict(list)
    for report in reports:
        groups[report.label].append(report)
    members = []
    for label, group in groups.items():
        symmetric = not is_asymmetric(group[0].mate)
        members.append(replace(group[0], symmetric=symmetric, preimages=len(group)))

    if wd.klass is Controllability.CONTROLLABLE:
        if any(m.preimages != 1 for m in members):
            raise InternalInconsistencyError("two cliques of a controllable graph give isomorphic graphs")
        threshold = 1
    elif wd.klass is Controllability.ALMOST_CONTROLLABLE:
        for m in members:
            if m.preimages != (1 if m.symmetric else 2):
                raise InternalInconsistencyError(
                    f"{'symmetric' if m.symmetric else 'asymmetric'} member of the cospectral class "
                    f"has {m.preimages} cliques"
                )
        threshold = 1 if not is_asymmetric(g) else 2
    else:
        raise PreconditionError("graph has rank W <= n-2")

    mates = tuple(m for m in members if not m.is_original)
    if len(cliques) <= threshold:
        if mates:
            raise InternalInconsistencyError("clique count within the DGS threshold but mates exist")
        return Verdict(VerdictStatus.DGS, stats=stats)
    if not mates:
        raise InternalInconsistencyError(f"{len(cliques)} cliques but no mate differs from the input")
    logger.info("%d generalized cospectral mates from %d cliques", len(mates), len(cliques))
    return Verdict(VerdictStatus.NON_DGS, mates=mates, stats=stats)
