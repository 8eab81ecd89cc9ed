"""Curve families C_N -> X mapping into d-fold products of a fixed curve.

The base X is either X_0(p)^d (split case, p >= 23) or (X_0^delta(p))^d
(quaternionic case, p > 4 coprime to delta).  For N = p * l_1 * ... * l_{d-1}
the curve C_N is the level-N curve of the same kind, mapped to X through the
d degeneracy-map components.  The canonical-bundle pullback degree is

    deg = -d * (l_1 + 1) * ... * (l_{d-1} + 1) * chi(level-p curve)

and the quantity of interest is the ratio deg / (-chi(C_N)).  In the split
case the ratio is bounded below by d * (1 - 26/(p+1)); in the quaternionic
case, with every level torsion free, the maps are etale and the ratio
equals d exactly.
"""

import itertools
from dataclasses import dataclass
from math import prod

from .arithmetic import (
    FactoredSquarefree,
    Rational,
    factor_squarefree,
    is_prime,
    primes_up_to,
)
from .errors import InternalInconsistency, InvalidInput, NotCoprime, NotTorsionFree
from .modular import gamma0_invariants
from .shimura import shimura_invariants

__all__ = [
    "PrimeConfig",
    "FamilyMember",
    "modular_family_member",
    "quaternionic_family_member",
    "family_member",
    "lemma1_lower_bound",
    "search_configs",
    "chi_divergence_check",
]

MIN_MODULAR_PRIME = 23
MIN_QUATERNIONIC_PRIME = 5


@dataclass(frozen=True)
class PrimeConfig:
    """Primes (p; l_1, ..., l_{d-1}) defining one family member of dimension d.

    ``delta`` is None for the split modular family and the quaternion
    discriminant otherwise.
    """

    d: int
    p: int
    ells: tuple[int, ...] = ()
    delta: FactoredSquarefree | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "ells", tuple(self.ells))
        if self.d < 1:
            raise InvalidInput(f"dimension d={self.d} must be >= 1")
        if len(self.ells) != self.d - 1:
            raise InvalidInput(f"need {self.d - 1} auxiliary primes, got {len(self.ells)}")
        primes = (self.p, *self.ells)
        if len(set(primes)) != len(primes):
            raise InvalidInput(f"primes {primes} are not distinct")
        for q in primes:
            if not is_prime(q):
                raise InvalidInput(f"{q} is not prime")
        if self.delta is None:
            if self.p < MIN_MODULAR_PRIME:
                raise InvalidInput(f"base prime {self.p} < {MIN_MODULAR_PRIME}")
        else:
            if self.p <= 4:
                raise InvalidInput(f"base prime {self.p} must exceed 4")
            if any(q in self.delta.primes for q in primes):
                raise NotCoprime(f"primes {primes} must avoid discriminant {self.delta.value}")

    @property
    def kind(self) -> str:
        return "modular" if self.delta is None else "quaternionic"

    @property
    def level(self) -> FactoredSquarefree:
        n = self.p * prod(self.ells)
        return FactoredSquarefree(n, tuple(sorted((self.p, *self.ells))))


@dataclass(frozen=True)
class FamilyMember:
    """One curve of the family with its exact degree, chi, ratio, and bound."""

    config: PrimeConfig
    level: FactoredSquarefree
    canonical_degree: int
    chi: int
    ratio: Rational
    lower_bound: Rational | None


def lemma1_lower_bound(p: int, d: int) -> Rational:
    """Exact lower bound d * (1 - 26/(p+1)) for the split-family ratio.

    Negative (hence vacuous) for p < 26 - 1, but still reported.
    """
    if d < 1:
        raise InvalidInput(f"dimension d={d} must be >= 1")
    if not is_prime(p) or p < MIN_MODULAR_PRIME:
        raise InvalidInput(f"base prime {p} must be a prime >= {MIN_MODULAR_PRIME}")
    return d * (1 - Rational(26, p + 1))


def modular_family_member(config: PrimeConfig) -> FamilyMember:
    """Family member for X = X_0(p)^d, with exact chi values throughout."""
    if config.kind != "modular":
        raise InvalidInput("config describes a quaternionic family")
    chi_base = gamma0_invariants(factor_squarefree(config.p)).chi
    degree = -config.d * prod(l + 1 for l in config.ells) * chi_base
    chi_n = gamma0_invariants(config.level).chi
    if chi_n >= 0 or degree <= 0:
        raise InternalInconsistency(f"non-hyperbolic member for config {config}")
    ratio = Rational(degree, -chi_n)
    bound = lemma1_lower_bound(config.p, config.d)
    if ratio < bound:
        raise InternalInconsistency(f"ratio {ratio} below bound {bound} for {config}")
    return FamilyMember(config, config.level, degree, chi_n, ratio, bound)


def quaternionic_family_member(config: PrimeConfig) -> FamilyMember:
    """Family member for X = (X_0^delta(p))^d; requires torsion-free levels.

    Every level the degeneracy maps pass through (p, each l_i * p, and N)
    must have e2 = e3 = 0, so all maps are etale between smooth curves and
    the ratio equals d exactly.
    """
    if config.kind != "quaternionic":
        raise InvalidInput("config describes a modular family")
    delta = config.delta
    levels = [config.p, *(l * config.p for l in config.ells), config.level.value]
    for level in levels:
        inv = shimura_invariants(delta, factor_squarefree(level))
        if not inv.torsion_free:
            raise NotTorsionFree(
                f"level {level} of discriminant {delta.value} has e2={inv.e2}, e3={inv.e3}"
            )
    chi_base = shimura_invariants(delta, factor_squarefree(config.p)).chi
    degree = -config.d * prod(l + 1 for l in config.ells) * chi_base
    chi_n = shimura_invariants(delta, config.level).chi
    ratio = Rational(degree, -chi_n)
    if ratio != config.d:
        raise InternalInconsistency(f"etale ratio {ratio} != d={config.d} for {config}")
    return FamilyMember(config, config.level, degree, chi_n, ratio, None)


def family_member(config: PrimeConfig) -> FamilyMember:
    if config.kind == "modular":
        return modular_family_member(config)
    return quaternionic_family_member(config)


def search_configs(
    d: int,
    p_max: int,
    ell_max: int,
    delta: FactoredSquarefree | None = None,
) -> list[FamilyMember]:
    """All admissible members within the given prime bounds.

    Sorted by ratio descending, ties broken by (p, ells) ascending, so the
    output order is reproducible.  Quaternionic configs that fail the
    torsion-free requirement are not admissible and are skipped.
    """
    if d < 1:
        raise InvalidInput(f"dimension d={d} must be >= 1")
    p_min = MIN_MODULAR_PRIME if delta is None else MIN_QUATERNIONIC_PRIME
    excluded = set(delta.primes) if delta is not None else set()
    base_primes = [p for p in primes_up_to(p_max) if p >= p_min and p not in excluded]
    aux_primes = [l for l in primes_up_to(ell_max) if l not in excluded]
    members = []
    for p in base_primes:
        for ells in itertools.combinations([l for l in aux_primes if l != p], d - 1):
            config = PrimeConfig(d=d, p=p, ells=ells, delta=delta)
            try:
                members.append(family_member(config))
            except NotTorsionFree:
                continue
    members.sort(key=lambda m: (-m.ratio, m.config.p, m.config.ells))
    return members


def chi_divergence_check(
    d: int,
    p: int,
    ells_sequence: list[tuple[int, ...]],
    delta: FactoredSquarefree | None = None,
) -> list[int]:
    """Values of -chi(C_N) along a sequence of auxiliary-prime choices.

    The family exhausts hyperbolic area, so the values should increase
    strictly along any sequence of growing levels; callers assert that.
    """
    values = []
    for ells in ells_sequence:
        member = family_member(PrimeConfig(d=d, p=p, ells=tuple(ells), delta=delta))
        values.append(-member.chi)
    return values
