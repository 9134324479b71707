import logging
from collections import Counter
from dataclasses import dataclass

from sympy import isprime, sieve
from sympy.ntheory import multiplicity, perfect_power, pollard_rho

logger = logging.getLogger(__name__)

TRIAL_DIVISION_LIMIT = 1_000_000
RHO_MAX_STEPS = 200_000
RHO_RETRIES = 5


@dataclass(frozen=True)
class Factorization:
    """Prime factors found within budget; `cofactor` is the unsplit remainder (1 if complete).

    Primality of large factors is decided by sympy's isprime (deterministic below
    2^64, strong BPSW above).
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def ord_p(value: int, p: int) -> int:
    """Exponent of p in a nonzero integer."""
    if value == 0:
        raise ValueError("ord_p(0) is unbounded")
    return multiplicity(p, abs(value))


def factorize(
    value: int,
    trial_limit: int = TRIAL_DIVISION_LIMIT,
    rho_steps: int = RHO_MAX_STEPS,
    rho_retries: int = RHO_RETRIES,
) -> Factorization:
    n = abs(value)
    if n == 0:
        raise ValueError("cannot factor 0")
    found: Counter[int] = Counter()
    for p in sieve.primerange(2, trial_limit + 1):
        if p * p > n:
            break
        while n % p == 0:
            found[p] += 1
            n //= p
    if n > 1 and n <= trial_limit * trial_limit:
        found[n] += 1
        n = 1

    cofactor = 1
    pending = [n] if n > 1 else []
    while pending:
        m = pending.pop()
        if isprime(m):
            found[m] += 1
            continue
        power = perfect_power(m)
        if power:
            base, exp = power
            pending.extend([base] * exp)
            continue
        divisor = pollard_rho(m, retries=rho_retries, max_steps=rho_steps)
        if divisor is None:
            logger.warning("Pollard rho budget exhausted on a %d-digit cofactor", len(str(m)))
            cofactor *= m
            continue
        pending.extend([divisor, m // divisor])
    return Factorization(abs(value), tuple(sorted(found.items())), cofactor)
