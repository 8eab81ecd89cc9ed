"""Invariants of the modular curves X_0(N) for squarefree levels N.

Everything is computed with exact integer arithmetic from the classical
formulas for the congruence subgroup Gamma_0(N):

    index   mu   = prod_{l | N} (l + 1)                    (squarefree N)
    nu2          = prod_{p | N} (1 + kronecker(-4, p))
    nu3          = prod_{p | N} (1 + kronecker(-3, p))
    cusps        = 2^r            (r = number of prime factors)
    genus   g    = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2
    chi          = 2 - 2g

The genus formula must produce a nonnegative integer; that integrality is
asserted on every call and acts as a built-in self-check.
"""

from dataclasses import dataclass
from math import prod

from .arithmetic import FactoredSquarefree, Rational, factor_squarefree, kronecker
from .errors import InternalInconsistency, NotDivisor

__all__ = [
    "Gamma0Invariants",
    "psi_index",
    "degree_degeneracy",
    "elliptic_counts",
    "gamma0_invariants",
    "check_chi_window",
    "chi_window_upper",
    "check_chi_negative",
]

Level = FactoredSquarefree | int


def _as_level(n: Level) -> FactoredSquarefree:
    return n if isinstance(n, FactoredSquarefree) else factor_squarefree(n)


@dataclass(frozen=True)
class Gamma0Invariants:
    """Signature data of X_0(N): index, elliptic points, cusps, genus, chi."""

    level: FactoredSquarefree
    index: int
    nu2: int
    nu3: int
    cusps: int
    genus: int
    chi: int


def psi_index(n: Level) -> int:
    """Index of Gamma_0(N) in PSL(2,Z): prod of (l+1) over the primes of N."""
    n = _as_level(n)
    return prod(p + 1 for p in n.primes)


def degree_degeneracy(n: Level, m: Level) -> int:
    """Degree of either degeneracy map X_0(N) -> X_0(M) for M | N.

    For squarefree N the degree is prod_{l | N/M} (l + 1); the forgetful
    and quotient maps have the same degree.
    """
    n, m = _as_level(n), _as_level(m)
    if not m.divides(n):
        raise NotDivisor(f"{m.value} does not divide {n.value}")
    return prod(p + 1 for p in n.primes if p not in m.primes)


def elliptic_counts(n: Level) -> tuple[int, int]:
    """Counts (nu2, nu3) of elliptic points of order 2 and 3 on X_0(N)."""
    n = _as_level(n)
    nu2 = prod(1 + kronecker(-4, p) for p in n.primes)
    nu3 = prod(1 + kronecker(-3, p) for p in n.primes)
    return nu2, nu3


def gamma0_invariants(n: Level) -> Gamma0Invariants:
    """All signature invariants of X_0(N) for squarefree N."""
    n = _as_level(n)
    index = psi_index(n)
    nu2, nu3 = elliptic_counts(n)
    cusps = 2 ** n.num_primes
    # 12*(g - 1) = index - 3*nu2 - 4*nu3 - 6*cusps, and g must be an integer >= 0
    twelve_g = 12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps
    if twelve_g % 12 != 0 or twelve_g < 0:
        raise InternalInconsistency(
            f"genus formula gave {twelve_g}/12 for N={n.value}"
        )
    genus = twelve_g // 12
    return Gamma0Invariants(
        level=n,
        index=index,
        nu2=nu2,
        nu3=nu3,
        cusps=cusps,
        genus=genus,
        chi=2 - 2 * genus,
    )


def check_chi_window(n: Level) -> Rational:
    """Residual s = psi(N)/6 + chi(X_0(N)); expected to satisfy 0 <= s <= (13/6)*2^r."""
    inv = gamma0_invariants(n)
    return Rational(inv.index, 6) + inv.chi


def chi_window_upper(n: Level) -> Rational:
    """Upper end (13/6)*2^r of the window the residual of check_chi_window lives in."""
    n = _as_level(n)
    return Rational(13, 6) * 2 ** n.num_primes


def check_chi_negative(n: Level) -> bool:
    """True when chi(X_0(N)) < 0; holds for every squarefree N >= 22."""
    return gamma0_invariants(n).chi < 0
