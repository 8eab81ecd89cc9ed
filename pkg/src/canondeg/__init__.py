"""Exact invariants of modular and Shimura curves, canonical-degree ratios of
curve families in product varieties, and holomorphic sectional curvature
bounds of classical bounded symmetric domains."""

from .arithmetic import (
    FactoredSquarefree,
    Rational,
    factor_squarefree,
    is_prime,
    kronecker,
    primes_up_to,
    squarefree_up_to,
)
from .curvature import (
    ClassicalDomain,
    CurvatureEstimate,
    canonical_degree_bound,
    check_degree_chain,
    curvature_inverse_closed,
    dimension,
    functional_gradient,
    numerical_curvature_inverse,
    product_curvature_inverse,
    tashiro_functional,
    verify_tashiro,
)
from .family import (
    FamilyMember,
    PrimeConfig,
    chi_divergence_check,
    family_member,
    lemma1_lower_bound,
    modular_family_member,
    quaternionic_family_member,
    search_configs,
)
from .modular import (
    Gamma0Invariants,
    check_chi_negative,
    check_chi_window,
    chi_window_upper,
    degree_degeneracy,
    elliptic_counts,
    gamma0_invariants,
    psi_index,
)
from .shimura import (
    QuaternionCurveInvariants,
    shimura_degeneracy_degree,
    shimura_invariants,
)

__version__ = "0.1.0"
