from dataclasses import dataclass
from functools import cached_property

import numpy as np

from specmate.errors import GraphFormatError

MAX_ORDER = 64


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; row i is a bitmask of the neighbours of vertex i."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise GraphFormatError(f"vertex count {self.n} outside 1..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise GraphFormatError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphFormatError(f"row {i} references a vertex >= {self.n}")
            if row >> i & 1:
                raise GraphFormatError(f"loop at vertex {i}")
            for j in range(i + 1, self.n):
                if (row >> j & 1) != (self.rows[j] >> i & 1):
                    raise GraphFormatError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        """Build from any square 0/1 nested sequence or numpy array."""
        entries = [[int(v) for v in row] for row in matrix]
        n = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != n:
                raise GraphFormatError(f"row {i} has {len(row)} entries, expected {n}")
            mask = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise GraphFormatError(f"entry ({i}, {j}) = {v} is not 0/1")
                if v:
                    mask |= 1 << j
            rows.append(mask)
        return cls(n, tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise GraphFormatError(f"loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.rows[i] >> j & 1]

    @cached_property
    def neighbor_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.neighbors(i)) for i in range(self.n))

    def mul_vector(self, v) -> list[int]:
        """A·v for an integer vector v."""
        return [sum(v[j] for j in nb) for nb in self.neighbor_lists]

    def quadratic_form(self, x, y=None) -> int:
        """xᵀ·A·y (y defaults to x)."""
        ay = self.mul_vector(x if y is None else y)
        return sum(a * b for a, b in zip(x, ay))

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.rows[i] >> j & 1]

    def matrix(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.matrix(), dtype=np.int64)

    def permuted(self, perm) -> "Graph":
        """Relabel vertex v as perm[v]."""
        rows = [0] * self.n
        for i, j in self.edges():
            a, b = perm[i], perm[j]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.rows)))


def random_gnp_half(n: int, seed: int) -> Graph:
    """Draw G(n, 1/2) from the raw PCG64 stream seeded with `seed`.

    The C(n,2) edge bits are taken least-significant bit first from consecutive
    64-bit outputs of ``PCG64(seed).random_raw``, assigned to pairs (i, j), i < j,
    in row-major order. The bit generator's raw stream is fixed by numpy's
    compatibility policy, so a seed reproduces the same graph across releases.
    """
    if not 1 <= n <= MAX_ORDER:
        raise GraphFormatError(f"vertex count {n} outside 1..{MAX_ORDER}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    pairs = n * (n - 1) // 2
    words = np.random.PCG64(seed).random_raw((pairs + 63) // 64) if pairs else []
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if int(words[k // 64]) >> (k % 64) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
