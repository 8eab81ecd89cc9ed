from fractions import Fraction

import pytest

from canondeg.arithmetic import FactoredSquarefree, factor_squarefree, squarefree_up_to
from canondeg.errors import NotDivisor
from canondeg.modular import (
    check_chi_negative,
    check_chi_window,
    chi_window_upper,
    degree_degeneracy,
    elliptic_counts,
    gamma0_invariants,
    psi_index,
)

from oracles import gamma0_by_cosets, p1_points

# genus values from published modular-curve tables, reproduced independently
# by the coset oracle
GENUS_TABLE = {1: 0, 11: 1, 23: 2, 29: 2, 37: 2, 58: 6, 101: 8, 202: 24}


def test_psi_index_examples():
    assert psi_index(1) == 1
    assert psi_index(6) == 12
    assert psi_index(58) == 90 == len(p1_points(58))


def test_psi_index_matches_coset_count():
    for n in squarefree_up_to(120):
        assert psi_index(n) == len(p1_points(n.value)), n.value


def test_degree_degeneracy_examples():
    assert degree_degeneracy(6, 1) == 12
    assert degree_degeneracy(58, 29) == 3
    assert degree_degeneracy(23, 23) == 1
    with pytest.raises(NotDivisor):
        degree_degeneracy(58, 3)


def test_degree_degeneracy_transitivity():
    # deg(N -> M') = deg(N -> M) * deg(M -> M') whenever M' | M | N
    for n in squarefree_up_to(10_000):
        primes = n.primes
        r = len(primes)
        for mid_mask in range(1 << r):
            mid_primes = tuple(p for i, p in enumerate(primes) if mid_mask >> i & 1)
            mid = factor_squarefree_from(mid_primes)
            sub_mask = mid_mask
            while True:
                low_primes = tuple(p for i, p in enumerate(primes) if sub_mask >> i & 1)
                low = factor_squarefree_from(low_primes)
                assert degree_degeneracy(n, mid) * degree_degeneracy(mid, low) == degree_degeneracy(n, low)
                if sub_mask == 0:
                    break
                sub_mask = (sub_mask - 1) & mid_mask


def factor_squarefree_from(primes):
    value = 1
    for p in primes:
        value *= p
    return FactoredSquarefree(value, primes)


def test_psi_equals_full_degeneracy():
    one = factor_squarefree(1)
    for n in squarefree_up_to(10_000):
        assert psi_index(n) == degree_degeneracy(n, one)


def test_elliptic_counts_examples():
    assert elliptic_counts(1) == (1, 1)
    assert elliptic_counts(2) == (1, 0)
    assert elliptic_counts(23) == (0, 0)


def test_invariants_match_coset_oracle():
    for n in squarefree_up_to(150):
        inv = gamma0_invariants(n)
        oracle = gamma0_by_cosets(n.value)
        assert inv.index == oracle["index"]
        assert (inv.nu2, inv.nu3) == (oracle["nu2"], oracle["nu3"])
        assert inv.cusps == oracle["cusps"]
        assert inv.genus == oracle["genus"]
        assert inv.chi == oracle["chi"]


def test_genus_table():
    for n, genus in GENUS_TABLE.items():
        inv = gamma0_invariants(n)
        assert inv.genus == genus
        assert inv.chi == 2 - 2 * genus


def test_genus_integrality_large_range():
    for n in squarefree_up_to(100_000):
        assert gamma0_invariants(n).genus >= 0  # construction asserts integrality


def test_chi_window_examples():
    assert check_chi_window(1) == Fraction(13, 6) == chi_window_upper(1)
    assert check_chi_window(23) == 2
    assert chi_window_upper(23) == Fraction(13, 3)
    assert check_chi_window(58) == 5


def test_chi_window_range():
    for n in squarefree_up_to(2000):
        residual = check_chi_window(n)
        assert 0 <= residual <= chi_window_upper(n), n.value


def test_chi_negative():
    assert check_chi_negative(23)
    assert not check_chi_negative(1)
    assert not check_chi_negative(21)
    for n in squarefree_up_to(2000):
        if n.value >= 22:
            assert check_chi_negative(n), n.value
