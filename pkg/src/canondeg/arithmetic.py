"""Exact integer primitives: squarefree factorizations, primality, residue symbols.

All values are plain Python integers, so every computation in the modules
built on top of this one is exact.  ``Rational`` is an alias for the
standard-library ``fractions.Fraction``, which already guarantees the
lowest-terms/positive-denominator invariants we need.
"""

from dataclasses import dataclass, field
from fractions import Fraction as Rational
from functools import lru_cache
from math import isqrt, prod
from typing import Iterator

from .errors import InvalidInput, NotSquarefree

__all__ = [
    "Rational",
    "FactoredSquarefree",
    "factor_squarefree",
    "kronecker",
    "is_prime",
    "primes_up_to",
    "squarefree_up_to",
]

# Witnesses making Miller-Rabin deterministic for n < 3.3e24, far beyond the
# supported input range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality test for the supported input range."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : n + 1 : p] = bytearray(len(range(start, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class FactoredSquarefree:
    """A positive squarefree integer together with its sorted prime factors.

    ``value == prod(primes)``, the primes are strictly increasing, and
    ``value == 1`` exactly when ``primes`` is empty.
    """

    value: int
    primes: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.value < 1:
            raise InvalidInput(f"expected a positive integer, got {self.value}")
        primes = tuple(self.primes)
        object.__setattr__(self, "primes", primes)
        if prod(primes) != self.value:
            raise InvalidInput(f"{primes} do not multiply to {self.value}")
        if any(primes[i] >= primes[i + 1] for i in range(len(primes) - 1)):
            raise NotSquarefree(f"prime factors {primes} not strictly increasing")
        for p in primes:
            if not is_prime(p):
                raise InvalidInput(f"{p} is not prime")

    @property
    def num_primes(self) -> int:
        return len(self.primes)

    def divides(self, other: "FactoredSquarefree") -> bool:
        return set(self.primes) <= set(other.primes)

    def is_coprime_to(self, other: "FactoredSquarefree") -> bool:
        return not set(self.primes) & set(other.primes)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def factor_squarefree(n: int) -> FactoredSquarefree:
    """Factor a positive squarefree integer by trial division.

    Raises NotSquarefree if a prime divides n twice, InvalidInput if n < 1.
    """
    if n < 1:
        raise InvalidInput(f"expected a positive integer, got {n}")
    primes = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise NotSquarefree(f"{p}^2 divides {n}")
            primes.append(p)
        p += 1 if p == 2 else 2
    if rest > 1:
        primes.append(rest)
    return FactoredSquarefree(n, tuple(primes))


def kronecker(a: int, p: int) -> int:
    """Quadratic residue symbol of a modulo a prime p, in {-1, 0, 1}.

    For odd p this is the Legendre symbol (0 when p | a).  For p = 2 the
    Kronecker extension is used: 0 for even a, +1 for a = +-1 mod 8 and
    -1 for a = +-3 mod 8.  With that convention kronecker(-4, p) and
    kronecker(-3, p) are exactly the mod-4 and mod-3 characters entering
    the elliptic-point counts, including at p = 2.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def squarefree_up_to(limit: int) -> Iterator[FactoredSquarefree]:
    """Yield every squarefree integer in [1, limit] with its factorization.

    Uses a smallest-prime-factor sieve, so iterating the full range is cheap
    compared with factoring each integer independently.
    """
    if limit < 1:
        return
    spf = list(range(limit + 1))
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == p:
            for multiple in range(p * p, limit + 1, p):
                if spf[multiple] == multiple:
                    spf[multiple] = p
    for n in range(1, limit + 1):
        m = n
        primes = []
        squarefree = True
        while m > 1:
            p = spf[m]
            m //= p
            if m % p == 0:
                squarefree = False
                break
            primes.append(p)
        if squarefree:
            yield FactoredSquarefree(n, tuple(primes))
