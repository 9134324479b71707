import logging
from dataclasses import dataclass

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_div, gf_from_int_poly, gf_gcd, gf_monic, gf_sqf_part

from specmate.errors import InternalInconsistencyError, ModulusMismatchError, NotPrimeError
from specmate.graph import Graph
from specmate.int_matrix import IntMatrix
from specmate.int_poly import IntPoly, char_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FpPoly:
    """Dense polynomial over F_p, coefficients in 0..p-1 from the leading term down."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError(f"coefficients must be reduced modulo {self.p}")
        if self.coeffs and self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_ints(cls, p: int, coeffs) -> "FpPoly":
        return cls(p, tuple(int(c) for c in gf_from_int_poly([int(c) for c in coeffs], p)))

    @classmethod
    def from_int_poly(cls, f: IntPoly, p: int) -> "FpPoly":
        return cls.from_ints(p, f.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "FpPoly":
        if self.is_zero:
            return self
        _, f = gf_monic(list(self.coeffs), self.p, ZZ)
        return FpPoly.from_ints(self.p, f)

    def apply_to_ones(self, g: Graph) -> list[int]:
        """f(A)e over the integers, with the reduced coefficients of f."""
        v = [0] * g.n
        for c in self.coeffs:
            v = [x + c for x in g.mul_vector(v)]
        return v


def _check_same_field(a: FpPoly, b: FpPoly):
    if a.p != b.p:
        raise ModulusMismatchError(f"polynomials over F_{a.p} and F_{b.p}")


def fp_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    _check_same_field(a, b)
    return FpPoly.from_ints(a.p, gf_gcd(list(a.coeffs), list(b.coeffs), a.p, ZZ))


def fp_divmod(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly]:
    _check_same_field(a, b)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = gf_div(list(a.coeffs), list(b.coeffs), a.p, ZZ)
    return FpPoly.from_ints(a.p, q), FpPoly.from_ints(a.p, r)


def squarefree_part(f: FpPoly) -> FpPoly:
    """Product of the distinct monic irreducible factors of f.

    sympy's square-free decomposition takes the p-th root whenever f' vanishes, so
    inputs such as (x+1)^3 over F_3 are handled.
    """
    if f.is_zero:
        raise ValueError("square-free part of the zero polynomial")
    return FpPoly.from_ints(f.p, gf_sqf_part(list(f.coeffs), f.p, ZZ))


def _psi(chi: IntPoly) -> list[int]:
    n = chi.degree
    k = n // 2
    coeffs = [1] + [chi.coefficient(2 * j) for j in range(1, k + 1)]
    if n % 2:
        coeffs.append(0)
    return coeffs


def compute_Mp(
    g: Graph,
    p: int,
    chi: IntPoly | None = None,
    chi_plus_j: IntPoly | None = None,
) -> FpPoly:
    """The p-main polynomial that stays fixed under generalized cospectrality.

    Odd p: chi(A) / sfp(gcd(chi(A), chi(A+J))) over F_p. p = 2: the polynomial psi
    assembled from the even-indexed characteristic coefficients, reduced mod 2.
    Either way M_p(A)e = 0 (mod p) is checked before returning.
    """
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    if chi is None:
        chi = char_poly(IntMatrix.from_rows(g.matrix()))
    if p == 2:
        mp = FpPoly.from_ints(2, _psi(chi))
    else:
        if chi_plus_j is None:
            chi_plus_j = char_poly(IntMatrix.from_rows([[v + 1 for v in row] for row in g.matrix()]))
        chi_p = FpPoly.from_int_poly(chi, p)
        common = fp_gcd(chi_p, FpPoly.from_int_poly(chi_plus_j, p))
        q, r = fp_divmod(chi_p, squarefree_part(common))
        if not r.is_zero:
            raise InternalInconsistencyError(f"square-free part does not divide chi over F_{p}")
        mp = q
    if any(x % p for x in mp.apply_to_ones(g)):
        raise InternalInconsistencyError(f"M_{p}(A)e is not divisible by {p}")
    logger.debug("M_%d has degree %d", p, mp.degree)
    return mp
