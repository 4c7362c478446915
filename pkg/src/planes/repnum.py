"""Representation numbers: sums of three squares and plane counts.

The plane count of discriminant -4d has a closed form in terms of r3 of
the squarefree core of d; `r24_formula` evaluates it with exact rational
arithmetic and `r24_oracle` recounts by two independent enumerations
(Plucker solutions and Klein pairs) that must agree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from planes import lattice


# ---------------------------------------------------------------------------
# elementary number theory helpers


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = n0 * m^2 with n0 squarefree; returns (n0, m)."""
    if n < 1:
        raise ValueError("need a positive integer")
    n0, m = 1, 1
    p = 2
    rest = n
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            m *= p ** (e // 2)
            if e % 2:
                n0 *= p
        p += 1 if p == 2 else 2
    n0 *= rest
    return n0, m


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol for an odd prime p, by Euler's criterion."""
    if p == 2 or p < 2:
        raise ValueError("p must be an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    if r == p - 1:
        return -1
    return r


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        t = 0
        while n % 2 == 0:
            n //= 2
            t += 1
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    if n != 1:
        return 0
    return sign * result


def is_admissible_disc(d: int) -> bool:
    """Whether any plane has discriminant -4d (d not 0, 7, 12, 15 mod 16)."""
    return d >= 1 and d % 16 not in (0, 7, 12, 15)


# ---------------------------------------------------------------------------
# sums of three squares


_sphere_lock = threading.Lock()
_sphere_cache: dict[int, np.ndarray] = {}
_sphere_nmax = -1

_EMPTY3 = np.empty((0, 3), dtype=np.int64)


def _bulk_spheres(nmax: int) -> dict[int, np.ndarray]:
    R = isqrt(nmax)
    rng = np.arange(-R, R + 1, dtype=np.int64)
    X, Y, Z = np.meshgrid(rng, rng, rng, indexing="ij")
    X, Y, Z = X.ravel(), Y.ravel(), Z.ravel()
    N = X * X + Y * Y + Z * Z
    keep = (N >= 1) & (N <= nmax)
    X, Y, Z, N = X[keep], Y[keep], Z[keep], N[keep]
    order = np.lexsort((Z, Y, X, N))
    X, Y, Z, N = X[order], Y[order], Z[order], N[order]
    pts = np.stack([X, Y, Z], axis=1)
    table: dict[int, np.ndarray] = {}
    bounds = np.flatnonzero(np.diff(N)) + 1
    for chunk_n, chunk in zip(np.split(N, bounds), np.split(pts, bounds)):
        table[int(chunk_n[0])] = chunk
    return table


def warm_sphere_cache(nmax: int) -> None:
    global _sphere_cache, _sphere_nmax
    if nmax <= _sphere_nmax:
        return
    with _sphere_lock:
        if nmax <= _sphere_nmax:
            return
        target = max(nmax, 2 * _sphere_nmax, 64)
        _sphere_cache = _bulk_spheres(target)
        _sphere_nmax = target


def sphere_points(n: int) -> np.ndarray:
    """Integer triples of norm exactly n, lexicographically sorted."""
    if n < 1:
        raise ValueError("norm must be positive")
    warm_sphere_cache(n)
    return _sphere_cache.get(n, _EMPTY3)


def r3(n: int) -> int:
    """Number of ways to write n as an ordered sum of three squares."""
    if n == 0:
        return 1
    return len(sphere_points(n))


def _r3_prim_brute(n: int) -> int:
    pts = sphere_points(n)
    if not len(pts):
        return 0
    g = np.gcd.reduce(np.abs(pts), axis=1)
    return int((g == 1).sum())


def r3_prim(n: int) -> int:
    """Primitive representations by three squares.

    When the square part of n is odd the multiplicative formula applies and
    is checked against the direct count before being returned.
    """
    if n < 1:
        raise ValueError("need a positive integer")
    brute = _r3_prim_brute(n)
    n0, m = squarefree_decompose(n)
    if m % 2 == 1:
        val = Fraction(r3(n0) * m)
        for p in prime_factors(m):
            val *= 1 - Fraction(legendre_symbol(-n0, p), p)
        assert val.denominator == 1 and int(val) == brute, \
            f"primitive count formula disagrees at n={n}: {val} vs {brute}"
    return brute


# ---------------------------------------------------------------------------
# plane counts


@dataclass(frozen=True)
class RepDecomposition:
    """Shape d = d0 * 4^e * f^2 with d0 squarefree and f odd, e in {0, 1}."""

    d: int
    d0: int
    e: int
    f: int

    def __post_init__(self):
        if self.d != self.d0 * 4 ** self.e * self.f ** 2:
            raise ValueError("inconsistent decomposition")
        if self.f % 2 == 0:
            raise ValueError("square part must be odd")
        if not is_squarefree(self.d0):
            raise ValueError("core must be squarefree")


def decompose(d: int) -> RepDecomposition:
    """Split an admissible d as d0 * 4^e * f^2; admissibility keeps f odd."""
    if not is_admissible_disc(d):
        raise ValueError(f"{d} is not an admissible discriminant over 4")
    e = 1 if d % 4 == 0 else 0
    rest = d // 4 ** e
    d0, f = squarefree_decompose(rest)
    return RepDecomposition(d=d, d0=d0, e=e, f=f)


def _exp_ef(p: int, n: int) -> int:
    # exponent rule of the divisor sum: squared factor iff p divides n
    return 2 if n % p == 0 else 1


def _divisors_of(f: int, primes: list[int]) -> list[tuple[int, int]]:
    """(divisor, number of distinct prime factors) pairs for all c | f."""
    divs = [(1, 0)]
    for p in primes:
        e = 0
        ff = f
        while ff % p == 0:
            ff //= p
            e += 1
        divs = [(d * p ** k, w + (1 if k else 0))
                for d, w in divs for k in range(e + 1)]
    return divs


def f_sum(d0: int, f: int) -> Fraction:
    """f^2 times the divisor sum over c | f in the closed-form count."""
    if f < 1 or f % 2 == 0:
        raise ValueError("square part must be a positive odd integer")
    primes = prime_factors(f)
    eps = {p: legendre_symbol(-d0, p) for p in primes}
    total = Fraction(0)
    for c, omega in _divisors_of(f, primes):
        term = Fraction(2 ** omega, c)
        fc = f // c
        for p in primes:
            term *= (1 - Fraction(eps[p], p)) ** _exp_ef(p, fc)
        total += term
    return f * f * total


def r24_formula(d: int) -> int:
    """Closed-form count of planes of discriminant -4d."""
    if d < 1:
        raise ValueError("need a positive integer")
    if not is_admissible_disc(d):
        return 0
    dec = decompose(d)
    cd = {0: Fraction(1, 3), 1: Fraction(1, 6),
          2: Fraction(1, 6), 3: Fraction(1, 2)}[d % 4]
    val = cd * r3(dec.d0) ** 2 * f_sum(dec.d0, dec.f)
    assert val.denominator == 1, f"count came out non-integral at d={d}"
    return int(val)


class OracleMismatchError(RuntimeError):
    """The two independent plane counts disagree."""

    def __init__(self, d: int, plucker_count: int, klein_count: int):
        self.d = d
        self.plucker_count = plucker_count
        self.klein_count = klein_count
        super().__init__(
            f"oracles disagree at d={d}: "
            f"plucker={plucker_count}, klein={klein_count}"
        )


def r24_oracle(d: int) -> int:
    """Plane count by direct enumeration, double-checked two ways.

    Counts sign classes of primitive decomposable six-tuples of norm d and,
    independently, Klein pairs of three-square vectors of norm d; raises
    OracleMismatchError if the counts differ.
    """
    from planes import klein

    plucker_count = lattice.plane_count(d)
    klein_count = klein.pair_count(d)
    if plucker_count != klein_count:
        raise OracleMismatchError(d, plucker_count, klein_count)
    return plucker_count


@dataclass(frozen=True)
class DirichletCoeffs:
    """Finitely supported coefficient table of a Dirichlet series."""

    dmax: int
    values: tuple[tuple[int, int], ...]

    def get(self, d: int) -> int:
        return dict(self.values).get(d, 0)

    def items(self):
        return list(self.values)


def rs3_coeffs(dmax: int) -> DirichletCoeffs:
    """Coefficients of the plane-count series supported on d = 3 mod 4."""
    if dmax < 0:
        raise ValueError("bound must be nonnegative")
    vals = tuple((d, r24_formula(d)) for d in range(3, dmax + 1, 4))
    return DirichletCoeffs(dmax=dmax, values=vals)
