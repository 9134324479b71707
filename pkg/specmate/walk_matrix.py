import logging
from dataclasses import dataclass
from enum import Enum
from math import lcm

from specmate.errors import InternalInconsistencyError, PreconditionError
from specmate.fp_poly import FpPoly, compute_Mp
from specmate.graph import Graph
from specmate.int_matrix import IntMatrix, det, rank_exact, rank_mod_p

logger = logging.getLogger(__name__)


class Controllability(Enum):
    CONTROLLABLE = "controllable"
    ALMOST_CONTROLLABLE = "almost-controllable"
    UNSUPPORTED = "unsupported"


def krylov_columns(g: Graph, start: list[int], count: int) -> list[list[int]]:
    """[v, Av, ..., A^(count-1)v] built by repeated matrix-vector products."""
    columns = []
    v = list(start)
    for _ in range(count):
        columns.append(v)
        v = g.mul_vector(v)
    return columns


def xi_scale(n: int) -> int:
    """2^(floor(n/2)-1), the power of two dividing every cofactor in xi."""
    return 1 << max(n // 2 - 1, 0)


@dataclass(frozen=True)
class WalkData:
    W: IntMatrix
    klass: Controllability
    rank: int
    xi: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return self.W.rows

    def w_delta(self, delta: int = 0) -> IntMatrix:
        """W_delta = [e, ..., A^(n-2)e, (-1)^delta xi / 2^(floor(n/2)-1)]."""
        if self.xi is None:
            raise PreconditionError("W_delta is only defined for almost controllable graphs")
        scale = xi_scale(self.n)
        sign = -1 if delta else 1
        columns = self.W.columns()[: self.n - 1]
        columns.append([sign * x // scale for x in self.xi])
        return IntMatrix.from_columns(columns)

    def base_matrix(self) -> IntMatrix:
        """W for controllable graphs, W_0 for almost controllable ones."""
        if self.klass is Controllability.CONTROLLABLE:
            return self.W
        if self.klass is Controllability.ALMOST_CONTROLLABLE:
            return self.w_delta(0)
        raise PreconditionError("graph has rank W <= n-2")


def _cofactor_vector(W: IntMatrix) -> tuple[int, ...]:
    n = W.rows
    last = n - 1
    # 1-based (i, n) cofactor sign is (-1)^(i+n)
    return tuple(
        (-1 if (i + 1 + n) % 2 else 1) * det(W.without(row=i, col=last)) for i in range(n)
    )


def build_walk_data(g: Graph) -> WalkData:
    n = g.n
    W = IntMatrix.from_columns(krylov_columns(g, [1] * n, n))
    rank = rank_exact(W)
    if rank == n:
        return WalkData(W, Controllability.CONTROLLABLE, rank)
    if rank < n - 1:
        logger.info("rank W = %d <= n-2, graph unsupported", rank)
        return WalkData(W, Controllability.UNSUPPORTED, rank)

    xi = _cofactor_vector(W)
    if not any(xi) or any(W.transpose() @ xi):
        raise InternalInconsistencyError("cofactor vector is not a nonzero left kernel vector of W")
    scale = xi_scale(n)
    if any(x % scale for x in xi):
        raise InternalInconsistencyError(f"cofactors of W are not all divisible by {scale}")
    return WalkData(W, Controllability.ALMOST_CONTROLLABLE, rank, xi)


def modified_walk_matrix(
    wd: WalkData,
    g: Graph,
    p: int,
    delta: int = 0,
    mp: FpPoly | None = None,
) -> IntMatrix:
    """W^(p) for controllable graphs, W_delta^(p) for almost controllable ones."""
    n = g.n
    base = wd.base_matrix() if delta == 0 else wd.w_delta(delta)
    if rank_mod_p(base, p) > n - 1:
        raise PreconditionError(f"{p} does not divide det of the walk matrix; nothing to modify")
    if mp is None:
        mp = compute_Mp(g, p)
    s = mp.degree
    almost = wd.klass is Controllability.ALMOST_CONTROLLABLE
    reduced = n - 1 if almost else n
    if s > reduced:
        raise InternalInconsistencyError(f"deg M_{p} = {s} exceeds {reduced} although rank_p is deficient")
    if almost and s == n - 1:
        return base

    head = wd.W.columns()[:s]
    top = mp.apply_to_ones(g)
    if any(x % p for x in top):
        raise InternalInconsistencyError(f"M_{p}(A)e is not divisible by {p}")
    tail = krylov_columns(g, [x // p for x in top], reduced - s)
    columns = head + tail
    if almost:
        divisor = lcm(xi_scale(n), p ** (n - 1 - s))
        if any(x % divisor for x in wd.xi):
            raise InternalInconsistencyError(f"cofactors of W are not all divisible by {divisor}")
        sign = -1 if delta else 1
        columns.append([sign * x // divisor for x in wd.xi])
    return IntMatrix.from_columns(columns)
