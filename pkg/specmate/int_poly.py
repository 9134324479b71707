from dataclasses import dataclass

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from specmate.int_matrix import IntMatrix, det

_X = Symbol("x")


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, coefficients from the leading term down."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPoly":
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] == 1

    def coefficient(self, k: int) -> int:
        """Coefficient c_k of x^(degree-k), so c_0 is the leading one."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def derivative(self) -> "IntPoly":
        d = self.degree
        return IntPoly.from_coeffs([c * (d - k) for k, c in enumerate(self.coeffs[:-1])])

    def evaluate_matrix(self, m: IntMatrix) -> IntMatrix:
        """Horner evaluation f(M) for a square matrix."""
        n = m.rows
        result = IntMatrix.from_rows([[0] * n for _ in range(n)])
        ident = IntMatrix.identity(n)
        for c in self.coeffs:
            prod = result @ m
            result = IntMatrix.from_rows(
                [[prod[i, j] + c * ident[i, j] for j in range(n)] for i in range(n)]
            )
        return result

    def __str__(self) -> str:
        return str(Poly.from_list(list(self.coeffs), _X, domain=ZZ).as_expr()) if self.coeffs else "0"


def char_poly(m: IntMatrix) -> IntPoly:
    """det(xI - M), computed exactly by sympy's Berkowitz algorithm over ZZ."""
    if not m.is_square:
        raise ValueError(f"characteristic polynomial of a non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return IntPoly((1,))
    dm = DomainMatrix([[ZZ(v) for v in row] for row in m.entries], (m.rows, m.cols), ZZ)
    return IntPoly.from_coeffs(int(c) for c in dm.charpoly())


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f) via sympy's subresultant PRS."""
    if f.is_zero:
        raise ValueError("discriminant of the zero polynomial")
    if f.degree == 0:
        raise ValueError("discriminant of a constant polynomial")
    return int(Poly.from_list(list(f.coeffs), _X, domain=ZZ).discriminant())


def sylvester_matrix(f: IntPoly, g: IntPoly) -> IntMatrix:
    m, k = f.degree, g.degree
    size = m + k
    rows = []
    for shift in range(k):
        rows.append([0] * shift + list(f.coeffs) + [0] * (size - shift - m - 1))
    for shift in range(m):
        rows.append([0] * shift + list(g.coeffs) + [0] * (size - shift - k - 1))
    return IntMatrix.from_rows(rows)


def discriminant_sylvester(f: IntPoly) -> int:
    """Discriminant through the (2n-1)-square Sylvester determinant."""
    if f.is_zero or f.degree == 0:
        raise ValueError("discriminant needs degree >= 1")
    n = f.degree
    res = det(sylvester_matrix(f, f.derivative()))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    lead = f.coeffs[0]
    if res % lead:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return sign * res // lead
