from dataclasses import dataclass
from math import gcd

from sympy import isprime

from specmate.errors import NotPrimeError, PreconditionError

# Mersenne prime used for the mod-p fast path of rank_exact
_FAST_PATH_PRIME = 2**61 - 1


@dataclass(frozen=True)
class IntMatrix:
    """Dense arbitrary-precision integer matrix, stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not match a {self.rows}x{self.cols} shape")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if not columns:
            return cls(0, 0, ())
        return cls.from_rows(zip(*columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values) -> "IntMatrix":
        values = list(values)
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            cols = other.columns()
            return IntMatrix.from_rows(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries]
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.cols} columns")
        return [sum(a * b for a, b in zip(r, vec)) for r in self.entries]

    def without(self, row: int | None = None, col: int | None = None) -> "IntMatrix":
        """Copy with one row and/or one column deleted."""
        rows = [r for i, r in enumerate(self.entries) if i != row]
        if col is not None:
            rows = [r[:col] + r[col + 1:] for r in rows]
        return IntMatrix(len(rows), self.cols - (col is not None), tuple(tuple(r) for r in rows))


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise PreconditionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def _rank_mod(m: IntMatrix, p: int) -> int:
    a = [[v % p for v in row] for row in m.entries]
    rank = 0
    for col in range(m.cols):
        pivot = next((i for i in range(rank, m.rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], -1, p)
        row_r = [v * inv % p for v in a[rank]]
        a[rank] = row_r
        for i in range(rank + 1, m.rows):
            factor = a[i][col]
            if factor:
                a[i] = [(x - factor * y) % p for x, y in zip(a[i], row_r)]
        rank += 1
        if rank == m.rows:
            break
    return rank


def rank_mod_p(m: IntMatrix, p: int) -> int:
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    return _rank_mod(m, p)


def rank_exact(m: IntMatrix) -> int:
    """Rank over the rationals."""
    full = min(m.rows, m.cols)
    if _rank_mod(m, _FAST_PATH_PRIME) == full:
        return full
    a = m.to_lists()
    rank = 0
    for col in range(m.cols):
        pivot = next((i for i in range(rank, m.rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        row_r = a[rank]
        p = row_r[col]
        for i in range(rank + 1, m.rows):
            factor = a[i][col]
            if not factor:
                continue
            row = [x * p - factor * y for x, y in zip(a[i], row_r)]
            content = 0
            for v in row:
                content = gcd(content, v)
            a[i] = [v // content for v in row] if content > 1 else row
        rank += 1
        if rank == m.rows:
            break
    return rank
