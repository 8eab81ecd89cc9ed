"""Holomorphic sectional curvature of classical bounded symmetric domains.

For each classical type the reciprocal curvature -1/S is the supremum of an
explicit scale-invariant trace-ratio functional over nonzero matrices:

    type I(n,m)  (n >= m >= 1, dim nm):       (n+m)/2 * Tr(Z*Z)^2 / Tr((Z*Z)^2)
    type II(n)   (symmetric, dim n(n+1)/2):   (n+1)/2 * same ratio
    type III(n)  (skew,      dim n(n-1)/2):   (n-1)/2 * same ratio
    type IV(n)   (vectors,   dim n):          1 / (1/n + sum |zb_j z_k - zb_k z_j|^2
                                                       / (2n (sum |z_j|^2)^2))

Cauchy-Schwarz on the eigenvalues of the Hermitian matrix H = Z*Z gives
Tr(H)^2 <= rank(H) Tr(H^2), with equality when H is a homothety; this yields
the closed forms

    I(n,m): m(m+n)/2      II(n): n(n+1)/2      IV(n): n

Skew-symmetric matrices have doubly paired singular values, so for type III
the same argument gives (n-1)*floor(n/2).  That value is derived from the
pairing structure rather than quoted from tables, and is always
cross-checked numerically.  In every case -1/S <= dim holds, and for
products -1/S combines additively over the factors.

The numerical route maximizes the functional by projected gradient ascent on
the unit sphere Tr(Z*Z) = 1 (legal because the functional is scale
invariant) with Armijo backtracking and seeded random restarts; results are
deterministic given (domain, options).
"""

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import Rational
from .errors import (
    EmptyProduct,
    InvalidDomain,
    InvalidInput,
    ShapeMismatch,
    ZeroInput,
)

__all__ = [
    "ClassicalDomain",
    "CurvatureEstimate",
    "TashiroCheck",
    "DegreeChainCheck",
    "dimension",
    "tashiro_functional",
    "functional_gradient",
    "curvature_inverse_closed",
    "numerical_curvature_inverse",
    "product_curvature_inverse",
    "verify_tashiro",
    "canonical_degree_bound",
    "check_degree_chain",
]

_KINDS = ("I", "II", "III", "IV")

# Armijo backtracking parameters for the ascent line search.
_ARMIJO_SLOPE = 1e-4
_ARMIJO_FACTOR = 0.5
_MIN_STEP = 1e-18


@dataclass(frozen=True)
class ClassicalDomain:
    """One irreducible classical domain: I(n,m), II(n), III(n) or IV(n)."""

    kind: str
    n: int
    m: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise InvalidDomain(f"unknown domain kind {self.kind!r}")
        if self.kind == "I":
            if self.m is None:
                raise InvalidDomain("type I needs both dimensions n and m")
            if not 1 <= self.m <= self.n:
                raise InvalidDomain(f"type I requires n >= m >= 1, got ({self.n}, {self.m})")
        else:
            if self.m is not None:
                raise InvalidDomain(f"type {self.kind} takes a single parameter")
            if self.n < 1:
                raise InvalidDomain(f"parameter n={self.n} must be >= 1")
            if self.kind == "III" and self.n < 2:
                raise InvalidDomain("III(1) has dimension 0")

    @property
    def dimension(self) -> int:
        if self.kind == "I":
            return self.n * self.m
        if self.kind == "II":
            return self.n * (self.n + 1) // 2
        if self.kind == "III":
            return self.n * (self.n - 1) // 2
        return self.n

    def __str__(self) -> str:
        if self.kind == "I":
            return f"I({self.n},{self.m})"
        return f"{self.kind}({self.n})"


def dimension(domain: ClassicalDomain) -> int:
    """Complex dimension of the domain."""
    return domain.dimension


def _check_point(domain: ClassicalDomain, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if domain.kind == "I":
        if z.shape != (domain.n, domain.m):
            raise ShapeMismatch(f"expected shape {(domain.n, domain.m)}, got {z.shape}")
    elif domain.kind == "IV":
        if z.shape != (domain.n,):
            raise ShapeMismatch(f"expected a vector of length {domain.n}, got {z.shape}")
    else:
        if z.shape != (domain.n, domain.n):
            raise ShapeMismatch(f"expected shape {(domain.n, domain.n)}, got {z.shape}")
        if domain.kind == "II" and not np.array_equal(z, z.T):
            raise ShapeMismatch("type II points must be symmetric")
        if domain.kind == "III" and not np.array_equal(z, -z.T):
            raise ShapeMismatch("type III points must be skew-symmetric")
    if not z.any():
        raise ZeroInput("the functional is undefined at Z = 0")
    return z


def _coefficient(domain: ClassicalDomain) -> float:
    if domain.kind == "I":
        return (domain.n + domain.m) / 2
    if domain.kind == "II":
        return (domain.n + 1) / 2
    return (domain.n - 1) / 2


def _raw_value(domain: ClassicalDomain, z: np.ndarray) -> float:
    # trusted input; the type IV infimand is used in the algebraically
    # reduced form 1/n * (2 - |sum z_j^2|^2 / (sum |z_j|^2)^2), equal to the
    # displayed double sum by the Lagrange identity
    if domain.kind == "IV":
        s = np.vdot(z, z).real
        u = abs((z * z).sum()) ** 2
        return domain.n * s * s / (2.0 * s * s - u)
    h = z.conj().T @ z
    t1 = np.vdot(z, z).real
    t2 = np.vdot(h, h).real
    return _coefficient(domain) * t1 * t1 / t2


def _raw_gradient(domain: ClassicalDomain, z: np.ndarray) -> np.ndarray:
    if domain.kind == "IV":
        s = np.vdot(z, z).real
        q = (z * z).sum()
        u = abs(q) ** 2
        g = (2.0 * s * s - u) / (domain.n * s * s)
        grad_g = 4.0 * (u * z - s * q * z.conj()) / (domain.n * s**3)
        return -grad_g / (g * g)
    h = z.conj().T @ z
    t1 = np.vdot(z, z).real
    t2 = np.vdot(h, h).real
    grad = (4.0 * _coefficient(domain) * t1 / (t2 * t2)) * (t2 * z - t1 * (z @ h))
    if domain.kind == "II":
        grad = (grad + grad.T) / 2
    elif domain.kind == "III":
        grad = (grad - grad.T) / 2
    return grad


def tashiro_functional(domain: ClassicalDomain, z) -> float:
    """Value of the trace-ratio functional at Z; its supremum is -1/S.

    Scale invariant: the value at lambda*Z equals the value at Z for any
    nonzero scalar lambda.  For type IV the infimand is evaluated in its
    displayed double-sum form.
    """
    z = _check_point(domain, z)
    if domain.kind == "IV":
        s = np.vdot(z, z).real
        w = np.outer(z.conj(), z)
        anti = np.abs(w - w.T) ** 2
        infimand = 1.0 / domain.n + anti.sum() / (2.0 * domain.n * s * s)
        return 1.0 / infimand
    return _raw_value(domain, z)


def functional_gradient(domain: ClassicalDomain, z) -> np.ndarray:
    """Gradient of the functional over the independent real and imaginary parts.

    Returned packed as a complex array G with G = df/dRe(Z) + i df/dIm(Z),
    so that the derivative along a direction V is Re(<G, V>).  For types II
    and III the gradient is projected onto the symmetric/skew subspace.
    """
    return _raw_gradient(domain, _check_point(domain, z))


def curvature_inverse_closed(domain: ClassicalDomain) -> Rational:
    """Exact value of -1/S for an irreducible classical domain."""
    if domain.kind == "I":
        return Rational(domain.m * (domain.m + domain.n), 2)
    if domain.kind == "II":
        return Rational(domain.n * (domain.n + 1), 2)
    if domain.kind == "III":
        return Rational((domain.n - 1) * (domain.n // 2))
    return Rational(domain.n)


def product_curvature_inverse(factors) -> Rational:
    """-1/S of a product domain: the sum of the factor values."""
    factors = list(factors)
    if not factors:
        raise EmptyProduct("a product needs at least one factor")
    return sum((curvature_inverse_closed(f) for f in factors), Rational(0))


@dataclass(frozen=True, eq=False)
class CurvatureEstimate:
    """Outcome of the numerical maximization of the trace-ratio functional."""

    domain: ClassicalDomain
    closed_form: Rational
    value: float
    maximizer: np.ndarray
    restarts: int
    iterations: int
    seed: int
    converged: bool


def _normalized(z: np.ndarray) -> np.ndarray:
    return z / math.sqrt(np.vdot(z, z).real)


def _random_start(domain: ClassicalDomain, rng: np.random.Generator) -> np.ndarray:
    if domain.kind == "IV":
        shape = (domain.n,)
    elif domain.kind == "I":
        shape = (domain.n, domain.m)
    else:
        shape = (domain.n, domain.n)
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if domain.kind == "II":
        z = (z + z.T) / 2
    elif domain.kind == "III":
        z = (z - z.T) / 2
    return _normalized(z)


def _ascend(domain, z, max_iter, tol):
    value = _raw_value(domain, z)
    iterations = 0
    prev_step = 1.0
    for _ in range(max_iter):
        iterations += 1
        grad = _raw_gradient(domain, z)
        # remove any radial component; scale invariance makes it zero up to
        # rounding, and the iterate stays on the unit sphere
        grad = grad - np.vdot(z, grad).real * z
        gnorm2 = np.vdot(grad, grad).real
        if math.sqrt(gnorm2) <= tol:
            return z, value, iterations, True
        # warm start the backtracking from the previous accepted step
        step = min(1.0, 4.0 * prev_step)
        while step > _MIN_STEP:
            candidate = _normalized(z + step * grad)
            cand_value = _raw_value(domain, candidate)
            if cand_value >= value + _ARMIJO_SLOPE * step * gnorm2:
                break
            step *= _ARMIJO_FACTOR
        else:
            # no ascent step exists at floating-point resolution
            return z, value, iterations, True
        # the first acceptable step can sit at the far edge of the Armijo
        # window where the actual gain is tiny; one extra half-step probe
        # keeps the gain within a constant factor of the optimal one
        half = _normalized(z + step * _ARMIJO_FACTOR * grad)
        half_value = _raw_value(domain, half)
        if half_value > cand_value:
            candidate, cand_value, step = half, half_value, step * _ARMIJO_FACTOR
        if cand_value <= value:
            # the accepted step no longer strictly increases the value:
            # stationary at floating-point resolution
            return z, value, iterations, True
        prev_step = step
        z, value = candidate, cand_value
    return z, value, iterations, False


def numerical_curvature_inverse(
    domain: ClassicalDomain,
    restarts: int = 32,
    max_iter: int = 2000,
    tol: float = 1e-9,
    seed: int = 0,
) -> CurvatureEstimate:
    """Maximize the trace-ratio functional from seeded random restarts.

    Each restart draws its start from an independent stream keyed by
    (seed, restart index), so the result does not depend on evaluation
    order.  The best value wins; ties keep the earliest restart.  If no
    restart meets the first-order tolerance the best iterate is still
    returned, flagged with converged=False.
    """
    if restarts < 1:
        raise InvalidInput(f"restarts={restarts} must be >= 1")
    best_value = -math.inf
    best_z = None
    total_iterations = 0
    converged = False
    for k in range(restarts):
        rng = np.random.default_rng([seed, k])
        z, value, iterations, ok = _ascend(domain, _random_start(domain, rng), max_iter, tol)
        total_iterations += iterations
        converged = converged or ok
        if value > best_value:
            best_value, best_z = value, z
    return CurvatureEstimate(
        domain=domain,
        closed_form=curvature_inverse_closed(domain),
        value=best_value,
        maximizer=best_z,
        restarts=restarts,
        iterations=total_iterations,
        seed=seed,
        converged=converged,
    )


@dataclass(frozen=True)
class TashiroCheck:
    """Comparison of -1/S against the dimension (the sectional-curvature bound)."""

    value: Rational
    dim: int
    passed: bool


def verify_tashiro(domain_or_factors) -> TashiroCheck:
    """Check -1/S <= dim exactly, for one domain or a product of domains."""
    if isinstance(domain_or_factors, ClassicalDomain):
        factors = [domain_or_factors]
    else:
        factors = list(domain_or_factors)
    value = product_curvature_inverse(factors)
    dim = sum(f.dimension for f in factors)
    return TashiroCheck(value=value, dim=dim, passed=value <= dim)


def canonical_degree_bound(inv_s, chi: int) -> Rational:
    """Largest canonical degree allowed by curvature: (-1/S) * (-chi).

    With -1/S equal to the dimension of the target this is the product
    upper bound dim * (-chi).
    """
    inv_s = Rational(inv_s)
    if inv_s <= 0:
        raise InvalidInput(f"reciprocal curvature {inv_s} must be positive")
    if chi >= 0:
        raise InvalidInput(f"chi={chi} must be negative")
    return inv_s * (-chi)


@dataclass(frozen=True)
class DegreeChainCheck:
    """Result of the two-link chain -chi >= -chi - branch >= deg / (-1/S)."""

    branch_ok: bool
    curvature_ok: bool
    curvature_equality: bool

    @property
    def passed(self) -> bool:
        return self.branch_ok and self.curvature_ok

    def __bool__(self) -> bool:
        return self.passed


def check_degree_chain(
    chi: int,
    branch_degree: int,
    canonical_degree: int,
    inv_s,
) -> DegreeChainCheck:
    """Exact check of -chi >= -chi - branch_degree >= canonical_degree / inv_s."""
    inv_s = Rational(inv_s)
    if chi >= 0:
        raise InvalidInput(f"chi={chi} must be negative")
    if branch_degree < 0:
        raise InvalidInput(f"branch degree {branch_degree} must be >= 0")
    if canonical_degree <= 0:
        raise InvalidInput(f"canonical degree {canonical_degree} must be positive")
    if inv_s <= 0:
        raise InvalidInput(f"reciprocal curvature {inv_s} must be positive")
    middle = Rational(-chi - branch_degree)
    right = canonical_degree / inv_s
    return DegreeChainCheck(
        branch_ok=Rational(-chi) >= middle,
        curvature_ok=middle >= right,
        curvature_equality=middle == right,
    )
