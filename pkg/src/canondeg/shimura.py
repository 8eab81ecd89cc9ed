"""Invariants of compact quaternionic Shimura curves X_0^D(N).

D is an indefinite rational quaternion algebra of reduced discriminant
delta > 1 (a product of an even number of distinct primes), and N is a
squarefree level coprime to delta.  The curves are compact, so there is no
cusp count; the Eichler-style formulas are

    index = prod_{l | N} (l + 1) * prod_{p | delta} (p - 1)
    e2    = prod_{p | delta} (1 - kronecker(-4, p)) * prod_{q | N} (1 + kronecker(-4, q))
    e3    = prod_{p | delta} (1 - kronecker(-3, p)) * prod_{q | N} (1 + kronecker(-3, q))
    genus = 1 + index/12 - e2/4 - e3/3

validated against published genus tables in the test suite.  A level with
e2 = e3 = 0 is called torsion free: the curve is then a smooth quotient and
the degeneracy maps between such levels are finite etale.
"""

from dataclasses import dataclass
from math import prod

from .arithmetic import FactoredSquarefree, factor_squarefree, kronecker
from .errors import InternalInconsistency, InvalidDiscriminant, NotCoprime, NotDivisor
from .modular import Level, psi_index

__all__ = [
    "QuaternionCurveInvariants",
    "shimura_invariants",
    "shimura_degeneracy_degree",
]


def _as_factored(n: Level) -> FactoredSquarefree:
    return n if isinstance(n, FactoredSquarefree) else factor_squarefree(n)


def _check_discriminant(delta: Level) -> FactoredSquarefree:
    delta = _as_factored(delta)
    if delta.num_primes == 0 or delta.num_primes % 2 != 0:
        raise InvalidDiscriminant(
            f"discriminant {delta.value} must have an even number (>= 2) of prime factors"
        )
    return delta


@dataclass(frozen=True)
class QuaternionCurveInvariants:
    """Signature data of the compact curve X_0^delta(N)."""

    discriminant: FactoredSquarefree
    level: FactoredSquarefree
    index: int
    e2: int
    e3: int
    genus: int
    chi: int

    @property
    def torsion_free(self) -> bool:
        return self.e2 == 0 and self.e3 == 0


def shimura_invariants(delta: Level, n: Level) -> QuaternionCurveInvariants:
    """Invariants of X_0^delta(N) for squarefree N coprime to delta."""
    delta = _check_discriminant(delta)
    n = _as_factored(n)
    if not delta.is_coprime_to(n):
        raise NotCoprime(f"level {n.value} shares a prime with discriminant {delta.value}")
    index = psi_index(n) * prod(p - 1 for p in delta.primes)
    e2 = prod(1 - kronecker(-4, p) for p in delta.primes) * prod(
        1 + kronecker(-4, q) for q in n.primes
    )
    e3 = prod(1 - kronecker(-3, p) for p in delta.primes) * prod(
        1 + kronecker(-3, q) for q in n.primes
    )
    twelve_g = 12 + index - 3 * e2 - 4 * e3
    if twelve_g % 12 != 0 or twelve_g < 0:
        raise InternalInconsistency(
            f"genus formula gave {twelve_g}/12 for delta={delta.value}, N={n.value}"
        )
    genus = twelve_g // 12
    return QuaternionCurveInvariants(
        discriminant=delta,
        level=n,
        index=index,
        e2=e2,
        e3=e3,
        genus=genus,
        chi=2 - 2 * genus,
    )


def shimura_degeneracy_degree(delta: Level, n: Level, m: Level) -> int:
    """Degree of either degeneracy map X_0^delta(N) -> X_0^delta(M), M | N.

    Same product formula prod_{l | N/M} (l + 1) as in the split case.
    """
    delta = _check_discriminant(delta)
    n, m = _as_factored(n), _as_factored(m)
    for level in (n, m):
        if not delta.is_coprime_to(level):
            raise NotCoprime(
                f"level {level.value} shares a prime with discriminant {delta.value}"
            )
    if not m.divides(n):
        raise NotDivisor(f"{m.value} does not divide {n.value}")
    return prod(p + 1 for p in n.primes if p not in m.primes)
