import pytest

from canondeg.arithmetic import (
    FactoredSquarefree,
    factor_squarefree,
    is_prime,
    kronecker,
    primes_up_to,
    squarefree_up_to,
)
from canondeg.errors import InvalidInput, NotSquarefree

from oracles import residue_symbol_by_search, sieve_factorizations


def test_factor_examples():
    assert factor_squarefree(58).primes == (2, 29)
    assert factor_squarefree(1).primes == ()
    assert factor_squarefree(1).value == 1
    with pytest.raises(NotSquarefree):
        factor_squarefree(12)
    with pytest.raises(InvalidInput):
        factor_squarefree(0)
    with pytest.raises(InvalidInput):
        factor_squarefree(-5)


def test_factored_invariants_enforced():
    with pytest.raises(InvalidInput):
        FactoredSquarefree(6, (2, 5))  # wrong product
    with pytest.raises(NotSquarefree):
        FactoredSquarefree(4, (2, 2))
    with pytest.raises(InvalidInput):
        FactoredSquarefree(8, (8,))  # 8 is not prime
    n = FactoredSquarefree(15, (3, 5))
    assert n.num_primes == 2 and int(n) == 15


def test_factor_against_sieve_oracle():
    table = sieve_factorizations(10_000)
    for n, factors in table.items():
        if len(set(factors)) == len(factors):
            assert factor_squarefree(n).primes == factors
        else:
            with pytest.raises(NotSquarefree):
                factor_squarefree(n)


def test_factor_product_property_large_range():
    # exhaustive on a medium range, seeded random sample up to 1e6
    for n in squarefree_up_to(200_000):
        assert factor_squarefree(n.value).value == n.value
    import random

    rng = random.Random(0)
    checked = 0
    while checked < 2000:
        n = rng.randrange(200_000, 1_000_001)
        try:
            fact = factor_squarefree(n)
        except NotSquarefree:
            continue
        prod = 1
        for p in fact.primes:
            prod *= p
        assert prod == n
        checked += 1


def test_squarefree_iterator_matches_trial_division():
    values = [n.value for n in squarefree_up_to(2000)]
    table = sieve_factorizations(2000)
    expected = [n for n, f in table.items() if len(set(f)) == len(f)]
    assert values == expected


def test_kronecker_examples():
    assert kronecker(-1, 29) == 1
    assert kronecker(-1, 23) == -1
    assert kronecker(-3, 13) == 1


def test_kronecker_against_search_oracle():
    for p in primes_up_to(1000):
        if p == 2:
            continue
        for a in range(-10, 11):
            assert kronecker(a, p) == residue_symbol_by_search(a, p), (a, p)


def test_kronecker_multiplicative():
    for p in primes_up_to(100):
        if p == 2:
            continue
        for a in range(1, p):
            for b in range(1, p):
                assert kronecker(a, p) * kronecker(b, p) == kronecker(a * b, p)


def test_kronecker_at_two():
    # the convention at p = 2: kronecker(-4, 2) = 0 and kronecker(-3, 2) = -1,
    # matching the mod-4 and mod-3 characters used by the elliptic-point counts
    assert kronecker(-4, 2) == 0
    assert kronecker(-3, 2) == -1
    assert kronecker(6, 2) == 0
    assert kronecker(7, 2) == 1
    assert kronecker(3, 2) == -1


def test_kronecker_rejects_composite_modulus():
    with pytest.raises(InvalidInput):
        kronecker(3, 6)
    with pytest.raises(InvalidInput):
        kronecker(3, 1)


def test_is_prime_against_sieve():
    primes = set(primes_up_to(10_000))
    for n in range(-2, 10_001):
        assert is_prime(n) == (n in primes)
