"""Exact integer primitives: square detection, factorization, square-free
parts, and the solutions of x^2 = 1 (mod a).

Factorization below the sieve bound (10**7 entries by default, overridable
via the DIOGRAPH_SIEVE_BOUND environment variable) walks a smallest-prime-
factor table; larger inputs fall back to trial division with a deterministic
Miller-Rabin shortcut for prime cofactors.  The sieve is built once on first
use and is read-only afterwards, so everything here is safe for concurrent
callers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator

import numpy as np

__all__ = [
    "Factorization",
    "UnitRootsModA",
    "count_unit_roots",
    "crt_combine",
    "factorize",
    "is_prime",
    "is_square",
    "isqrt",
    "iter_primes",
    "same_square_free_part",
    "square_free_part",
    "unit_roots_mod",
]

SIEVE_BOUND_ENV = "DIOGRAPH_SIEVE_BOUND"
DEFAULT_SIEVE_BOUND = 10_000_000

_spf_table: np.ndarray | None = None

# Miller-Rabin with these bases is deterministic below 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def _sieve_bound() -> int:
    raw = os.environ.get(SIEVE_BOUND_ENV)
    if raw is None:
        return DEFAULT_SIEVE_BOUND
    bound = int(raw)
    if bound < 4:
        raise ValueError(f"{SIEVE_BOUND_ENV} must be at least 4, got {bound}")
    return bound


def _spf() -> np.ndarray:
    """Smallest-prime-factor table for [0, bound), built lazily."""
    global _spf_table
    if _spf_table is None:
        bound = _sieve_bound()
        spf = np.zeros(bound, dtype=np.int64)
        for i in range(2, isqrt(bound - 1) + 1):
            if spf[i] == 0:
                sl = spf[i * i :: i]
                sl[sl == 0] = i
        untouched = spf == 0
        spf[untouched] = np.nonzero(untouched)[0]
        _spf_table = spf
    return _spf_table


def is_square(n: int) -> bool:
    """True iff n is a perfect square.  Negative input is rejected."""
    if n < 0:
        raise ValueError(f"is_square expects a nonnegative integer, got {n}")
    r = isqrt(n)
    return r * r == n


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid for n below ~3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC_LIMIT:
        raise ValueError(f"n={n} exceeds the deterministic Miller-Rabin range")
    d = n - 1
    s = 0
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


def iter_primes() -> Iterator[int]:
    """Primes in increasing order, without an upper bound."""
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


@dataclass
class Factorization:
    """Prime-exponent map of n, keys strictly increasing."""

    n: int
    factors: dict[int, int]

    @property
    def omega(self) -> int:
        """Number of distinct prime factors; omega(1) == 0."""
        return len(self.factors)


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    m = n
    factors: dict[int, int] = {}
    spf = _spf()
    bound = spf.shape[0]
    if m < bound:
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors[p] = e
        return Factorization(n, factors)
    # Trial division for large inputs; a prime cofactor is detected early.
    for p in iter_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors[p] = e
            if m > 1 and is_prime(m):
                break
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return Factorization(n, dict(sorted(factors.items())))


def square_free_part(n: int) -> int:
    """Product of the primes dividing n to an odd power."""
    f = factorize(n)
    out = 1
    for p, e in f.factors.items():
        if e % 2 == 1:
            out *= p
    return out


def same_square_free_part(a: int, b: int) -> bool:
    """True iff a and b have equal square-free parts.

    Equivalent to a*b being a perfect square, which avoids factoring and
    therefore works for arbitrarily large inputs.
    """
    if a < 1 or b < 1:
        raise ValueError("inputs must be positive")
    return is_square(a * b)


def crt_combine(residues_mods: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine congruences x = r (mod m) with pairwise coprime moduli.

    Returns (x, M) with 0 <= x < M = product of the moduli.
    """
    x, m = 0, 1
    for r, mod in residues_mods:
        if gcd(m, mod) != 1:
            raise ValueError("moduli must be pairwise coprime")
        # x' = x + m * t with t = (r - x) / m  (mod `mod`)
        t = ((r - x) * pow(m, -1, mod)) % mod
        x += m * t
        m *= mod
    return x % m, m


@dataclass
class UnitRootsModA:
    """All residues x in [0, a) with x^2 = 1 (mod a)."""

    a: int
    roots: tuple[int, ...]
    count: int


def _prime_power_unit_roots(p: int, e: int) -> tuple[int, ...]:
    pe = p**e
    if p != 2:
        return (1, pe - 1)
    if e == 1:
        return (1,)
    if e == 2:
        return (1, 3)
    half = pe // 2
    return (1, half - 1, half + 1, pe - 1)


def unit_roots_mod(a: int) -> UnitRootsModA:
    """Enumerate the roots of x^2 = 1 (mod a), assembled by CRT.

    For a == 1 the single residue 0 is returned (everything is 1 mod 1).
    """
    if a < 1:
        raise ValueError(f"modulus must be positive, got {a}")
    if a == 1:
        return UnitRootsModA(1, (0,), 1)
    roots = [0]
    mod = 1
    for p, e in factorize(a).factors.items():
        pe = p**e
        inv = pow(mod, -1, pe)
        local = _prime_power_unit_roots(p, e)
        roots = [r + mod * (((s - r) * inv) % pe) for r in roots for s in local]
        mod *= pe
    roots.sort()
    return UnitRootsModA(a, tuple(roots), len(roots))


def count_unit_roots(a: int) -> int:
    """Closed-form S(a): the number of solutions of x^2 = 1 (mod a).

    2^omega(a) for odd a, halved when a = 2 (mod 4), unchanged when 4
    divides a exactly, doubled when 8 | a.  S(1) is defined as 1.
    """
    if a < 1:
        raise ValueError(f"modulus must be positive, got {a}")
    if a == 1:
        return 1
    f = factorize(a)
    omega = f.omega
    v2 = f.factors.get(2, 0)
    if v2 == 0:
        return 2**omega
    if v2 == 1:
        return 2 ** (omega - 1)
    if v2 == 2:
        return 2**omega
    return 2 ** (omega + 1)
