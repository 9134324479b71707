import logging
from dataclasses import dataclass, field
from math import gcd, prod

from specmate.errors import InternalInconsistencyError, PreconditionError
from specmate.factorization import RHO_MAX_STEPS, RHO_RETRIES, TRIAL_DIVISION_LIMIT, factorize, ord_p
from specmate.fp_poly import compute_Mp
from specmate.graph import Graph
from specmate.int_matrix import IntMatrix
from specmate.int_poly import IntPoly, char_poly, discriminant
from specmate.smith import smith_normal_form
from specmate.walk_matrix import Controllability, WalkData, modified_walk_matrix

logger = logging.getLogger(__name__)

RULE_TWO_NOT_DIVIDING_D = "2-does-not-divide-d"
RULE_SQUARE_NOT_DIVIDING_DELTA = "p-squared-does-not-divide-delta"
RULE_ZERO_EXPONENT = "improved-exponent-zero"


@dataclass(frozen=True)
class PotentialPrime:
    """One modulus of the master system.

    For a certified entry `p` is prime and the congruences come from W^(p).
    An uncertified entry stands for an unfactored cofactor: `p` is then the part
    of d built from that cofactor's primes, t = 1, and the congruences use W
    (or W_0) itself.
    """

    p: int
    t: int
    basic_exponent: int
    system: IntMatrix
    invariant_factors: tuple[int, ...]
    certified: bool = True

    @property
    def modulus(self) -> int:
        return self.p**self.t

    @property
    def d_n(self) -> int:
        return self.invariant_factors[-1]


@dataclass(frozen=True)
class EliminatedPrime:
    p: int
    rule: str


@dataclass(frozen=True)
class LevelBound:
    primes: tuple[PotentialPrime, ...]
    d: int
    delta: int
    delta_gcd: int
    basic_L: int
    eliminated: tuple[EliminatedPrime, ...] = field(default_factory=tuple)
    incomplete_factorization: bool = False

    @property
    def L(self) -> int:
        return prod(pp.modulus for pp in self.primes)


def _smooth_part(d: int, cofactor: int) -> int:
    """Largest divisor of d whose primes all divide `cofactor`."""
    part = 1
    while True:
        g = gcd(d, cofactor)
        if g == 1:
            return part
        part *= g
        d //= g


def compute_level_bound(
    g: Graph,
    wd: WalkData,
    trial_limit: int = TRIAL_DIVISION_LIMIT,
    rho_steps: int = RHO_MAX_STEPS,
    rho_retries: int = RHO_RETRIES,
) -> LevelBound:
    if wd.klass is Controllability.UNSUPPORTED:
        raise PreconditionError("level bound needs a controllable or almost controllable graph")
    base = wd.base_matrix()
    base_factors = smith_normal_form(base).d
    d = abs(base_factors[-1])
    if d == 0:
        raise InternalInconsistencyError("walk matrix used for the level bound is singular")

    adjacency = g.matrix()
    chi = char_poly(IntMatrix.from_rows(adjacency))
    delta = discriminant(chi)
    delta_gcd = gcd(delta, d)
    factors = factorize(delta_gcd, trial_limit, rho_steps, rho_retries)
    logger.debug("d=%d delta_gcd=%d factors=%s", d, delta_gcd, factors.factors)

    eliminated: list[EliminatedPrime] = []
    candidates = []
    if d % 2:
        eliminated.append(EliminatedPrime(2, RULE_TWO_NOT_DIVIDING_D))
    else:
        candidates.append(2)
    for p in factors.primes:
        if p == 2:
            continue
        if delta % (p * p):
            eliminated.append(EliminatedPrime(p, RULE_SQUARE_NOT_DIVIDING_DELTA))
        else:
            candidates.append(p)

    chi_plus_j: IntPoly | None = None
    if any(p > 2 for p in candidates):
        chi_plus_j = char_poly(IntMatrix.from_rows([[v + 1 for v in row] for row in adjacency]))

    primes: list[PotentialPrime] = []
    basic_L = 1
    for p in candidates:
        basic = ord_p(d, p)
        basic_L *= p**basic
        mp = compute_Mp(g, p, chi=chi, chi_plus_j=chi_plus_j)
        wp = modified_walk_matrix(wd, g, p, mp=mp)
        factors_p = smith_normal_form(wp).d
        if factors_p[-1] == 0:
            raise InternalInconsistencyError(f"modified walk matrix for p={p} is singular")
        t = ord_p(factors_p[-1], p)
        if t > basic:
            raise InternalInconsistencyError(f"ord_{p} d_n(W^(p)) = {t} exceeds ord_{p} d = {basic}")
        logger.debug("p=%d: basic exponent %d, improved exponent %d", p, basic, t)
        if t == 0:
            eliminated.append(EliminatedPrime(p, RULE_ZERO_EXPONENT))
            continue
        primes.append(PotentialPrime(p, t, basic, wp, factors_p))

    uncertified = 1
    if not factors.complete:
        uncertified = _smooth_part(d, factors.cofactor)
        # the unsplit cofactor may still hold primes that were certified above
        for p in {2, *factors.primes}:
            while uncertified % p == 0:
                uncertified //= p
    if uncertified > 1:
        logger.warning("falling back to the basic estimate for unfactored modulus %d", uncertified)
        basic_L *= uncertified
        primes.append(PotentialPrime(uncertified, 1, 1, base, base_factors, certified=False))

    return LevelBound(
        primes=tuple(sorted(primes, key=lambda pp: pp.p)),
        d=d,
        delta=delta,
        delta_gcd=delta_gcd,
        basic_L=basic_L,
        eliminated=tuple(eliminated),
        incomplete_factorization=uncertified > 1,
    )
