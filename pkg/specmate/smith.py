from dataclasses import dataclass

from specmate.int_matrix import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """Invariant factors d with optional transforms satisfying U·M·V = diag(d)."""

    d: tuple[int, ...]
    U: IntMatrix | None = None
    V: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for v in self.d if v)

    @property
    def last(self) -> int:
        """The last invariant factor d_n (0 for a singular square matrix)."""
        return self.d[-1] if self.d else 0

    def diagonal(self, rows: int, cols: int) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.d[i] if i == j and i < len(self.d) else 0 for j in range(cols)] for i in range(rows)]
        )


def _least_entry(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best_abs):
                best, best_abs = (i, j), abs(v)
                if best_abs == 1:
                    return best
    return best


def _swap_columns(a: list[list[int]], j: int, k: int):
    if j != k:
        for row in a:
            row[j], row[k] = row[k], row[j]


def smith_normal_form(m: IntMatrix, with_transforms: bool = False) -> SmithDecomposition:
    """Smith normal form by least-absolute-value pivoting.

    Each round moves the smallest nonzero entry of the trailing block to the pivot
    position and reduces its row and column by floor division; remainders become
    the next, smaller pivot. When row and column are clear but the pivot fails to
    divide the trailing block, the offending row is added to the pivot row.
    """
    a = m.to_lists()
    rows, cols = m.rows, m.cols
    u = IntMatrix.identity(rows).to_lists() if with_transforms else None
    v = IntMatrix.identity(cols).to_lists() if with_transforms else None
    size = min(rows, cols)

    for t in range(size):
        pos = _least_entry(a, t)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                a[t], a[i] = a[i], a[t]
                if u is not None:
                    u[t], u[i] = u[i], u[t]
            _swap_columns(a, t, j)
            if v is not None:
                _swap_columns(v, t, j)

            pivot = a[t][t]
            clean = True
            row_t = a[t]
            for i in range(t + 1, rows):
                q = a[i][t] // pivot
                if q:
                    row_i = a[i]
                    for k in range(t, cols):
                        row_i[k] -= q * row_t[k]
                    if u is not None:
                        u_i, u_t = u[i], u[t]
                        for k in range(rows):
                            u_i[k] -= q * u_t[k]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = a[t][j] // pivot
                if q:
                    for r in range(t, rows):
                        a[r][j] -= q * a[r][t]
                    if v is not None:
                        for r in range(cols):
                            v[r][j] -= q * v[r][t]
                if a[t][j]:
                    clean = False

            if not clean:
                pos = _least_entry(a, t)
                continue

            bad = next(
                (i for i in range(t + 1, rows) if any(a[i][k] % pivot for k in range(t + 1, cols))),
                None,
            )
            if bad is None:
                break
            for k in range(t, cols):
                a[t][k] += a[bad][k]
            if u is not None:
                for k in range(rows):
                    u[t][k] += u[bad][k]
            pos = _least_entry(a, t)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]

    d = tuple(a[i][i] for i in range(size))
    if not with_transforms:
        return SmithDecomposition(d)
    return SmithDecomposition(d, IntMatrix.from_rows(u), IntMatrix.from_rows(v))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(m).d
