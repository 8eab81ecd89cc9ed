"""Independent oracles the tests check the library against.

Nothing in this module uses the multiplicative formulas from the package:
congruence-subgroup invariants come from an explicit permutation action on
cosets, residue symbols from exhaustive square searches, squarefree
factorizations from a smallest-prime-factor sieve, and curvature values
from finite differencing and brute-force sampling.
"""

from math import gcd

import numpy as np


# ---------------------------------------------------------------------------
# coset enumeration for Gamma_0(N)
# ---------------------------------------------------------------------------

def p1_table(n: int):
    """Cosets of Gamma_0(N) in SL(2,Z) as canonical points of P^1(Z/N).

    Returns (points, canon) where canon maps every admissible bottom row
    (c, d) to the representative of its unit orbit.
    """
    if n == 1:
        return [(0, 0)], {(0, 0): (0, 0)}
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    canon = {}
    points = []
    for c in range(n):
        for d in range(n):
            if (c, d) in canon or gcd(gcd(c, d), n) != 1:
                continue
            orbit = [((u * c) % n, (u * d) % n) for u in units]
            rep = min(orbit)
            for pt in orbit:
                canon[pt] = rep
            points.append(rep)
    return sorted(points), canon


def p1_points(n: int) -> list:
    return p1_table(n)[0]


def gamma0_by_cosets(n: int) -> dict:
    """Invariants of X_0(N) read off the permutation action on P^1(Z/N).

    The order-2 and order-3 elliptic counts are the fixed points of the
    rotations S and ST acting on cosets, the cusps are the orbits of the
    translation T, and the genus follows from the orbifold Euler
    characteristic of the quotient.
    """
    points, canon = p1_table(n)
    index = len(points)
    nu2 = sum(1 for (c, d) in points if canon[(d % n, -c % n)] == (c, d))
    nu3 = sum(1 for (c, d) in points if canon[(d % n, (d - c) % n)] == (c, d))
    unseen = set(points)
    cusps = 0
    while unseen:
        c, d = next(iter(unseen))
        cusps += 1
        while (c, d) in unseen:
            unseen.remove((c, d))
            c, d = canon[(c, (c + d) % n)]
    numerator = 12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps
    assert numerator % 12 == 0 and numerator >= 0
    genus = numerator // 12
    return {
        "index": index,
        "nu2": nu2,
        "nu3": nu3,
        "cusps": cusps,
        "genus": genus,
        "chi": 2 - 2 * genus,
    }


# ---------------------------------------------------------------------------
# elementary number theory
# ---------------------------------------------------------------------------

def residue_symbol_by_search(a: int, p: int) -> int:
    """Quadratic residue symbol mod an odd prime by exhaustive square search."""
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def sieve_factorizations(limit: int) -> dict:
    """Map n -> sorted prime factors (with multiplicity) for 1 <= n <= limit."""
    spf = list(range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    table = {1: ()}
    for n in range(2, limit + 1):
        m, factors = n, []
        while m > 1:
            factors.append(spf[m])
            m //= spf[m]
        table[n] = tuple(factors)
    return table


# ---------------------------------------------------------------------------
# curvature oracles
# ---------------------------------------------------------------------------

def tangent_basis(domain) -> list:
    """Real basis of the admissible directions at a point of the domain."""
    if domain.kind == "IV":
        shape = (domain.n,)
    elif domain.kind == "I":
        shape = (domain.n, domain.m)
    else:
        shape = (domain.n, domain.n)
    basis = []
    if domain.kind in ("I", "IV"):
        for idx in np.ndindex(*shape):
            for unit in (1.0, 1.0j):
                v = np.zeros(shape, dtype=complex)
                v[idx] = unit
                basis.append(v)
        return basis
    sign = 1.0 if domain.kind == "II" else -1.0
    for i in range(domain.n):
        for j in range(i, domain.n):
            if i == j and domain.kind == "III":
                continue
            for unit in (1.0, 1.0j):
                v = np.zeros(shape, dtype=complex)
                v[i, j] = unit
                if i != j:
                    v[j, i] = sign * unit
                basis.append(v)
    return basis


def fd_directional(func, z, v, step=1e-5) -> float:
    """Central finite difference of func at z along direction v."""
    return (func(z + step * v) - func(z - step * v)) / (2 * step)


def random_point(domain, rng) -> np.ndarray:
    if domain.kind == "IV":
        return rng.standard_normal(domain.n) + 1j * rng.standard_normal(domain.n)
    shape = (domain.n, domain.m if domain.kind == "I" else domain.n)
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    if domain.kind == "II":
        z = (z + z.T) / 2
    elif domain.kind == "III":
        z = (z - z.T) / 2
    return z


def sample_skew_supremum(n: int, samples: int, seed: int = 123) -> float:
    """Brute-force supremum of the skew trace-ratio functional by sampling."""
    rng = np.random.default_rng(seed)
    best = 0.0
    chunk = 50_000
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        remaining -= size
        z = rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))
        z = (z - np.swapaxes(z, 1, 2)) / 2
        h = np.einsum("bji,bjk->bik", z.conj(), z)
        t1 = np.einsum("bii->b", h).real
        t2 = np.einsum("bij,bij->b", h.conj(), h).real
        best = max(best, float(((n - 1) / 2 * t1 * t1 / t2).max()))
    return best
