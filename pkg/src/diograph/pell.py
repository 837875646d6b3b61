"""Pell and generalized Pell equations: fundamental units via continued
fractions, solution orbits under the fundamental unit, and the
multiplicative order of the unit modulo m.

Everything is exact arbitrary-precision integer arithmetic; fundamental
solutions grow exponentially with the period of the continued fraction
of sqrt(D), so 64-bit arithmetic would overflow almost immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

__all__ = [
    "PellInstance",
    "PellOrbit",
    "PellUnit",
    "fundamental_unit",
    "iter_orbit",
    "orbit",
    "unit_order_mod",
]


@dataclass(frozen=True)
class PellInstance:
    """The equation x^2 - D*y^2 = N with D >= 2 non-square and N != 0."""

    D: int
    N: int

    def __post_init__(self) -> None:
        if self.D < 2:
            raise ValueError(f"D must be at least 2, got {self.D}")
        r = isqrt(self.D)
        if r * r == self.D:
            raise ValueError(f"D must not be a perfect square, got {self.D}")
        if self.N == 0:
            raise ValueError("N must be nonzero")

    def residual(self, x: int, y: int) -> int:
        return x * x - self.D * y * y - self.N


@dataclass(frozen=True)
class PellUnit:
    """Minimal positive solution (mu, nu) of mu^2 - D*nu^2 = 1."""

    mu: int
    nu: int


def fundamental_unit(D: int) -> PellUnit:
    """Minimal positive solution of x^2 - D*y^2 = 1 for non-square D >= 2.

    Runs the continued-fraction expansion of sqrt(D); if the period is odd
    the first convergent hits norm -1, and its square is returned.
    """
    if D < 2:
        raise ValueError(f"D must be at least 2, got {D}")
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise ValueError(f"D must not be a perfect square, got {D}")
    m, d, a = 0, 1, a0
    num1, num = 1, a0
    den1, den = 0, 1
    while True:
        t = num * num - D * den * den
        if t == 1:
            return PellUnit(num, den)
        if t == -1:
            return PellUnit(num * num + D * den * den, 2 * num * den)
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        num, num1 = a * num + num1, num
        den, den1 = a * den + den1, den


@dataclass(frozen=True)
class PellOrbit:
    """A finite prefix of the solution stream seed * unit^t, t = 0, 1, ..."""

    instance: PellInstance
    seed: tuple[int, int]
    unit: PellUnit
    solutions: tuple[tuple[int, int], ...]


def iter_orbit(
    instance: PellInstance,
    seed: tuple[int, int],
    unit: PellUnit | None = None,
) -> Iterator[tuple[int, int]]:
    """Yield seed, then its successors under multiplication by the unit.

    Only the positive branch is emitted: the seed must have X > 0, Y > 0,
    and successors are then strictly increasing in both coordinates.
    """
    x, y = seed
    if x < 1 or y < 1:
        raise ValueError(f"seed must be strictly positive, got {seed}")
    res = instance.residual(x, y)
    if res != 0:
        raise ValueError(
            f"seed {seed} does not satisfy x^2 - {instance.D}*y^2 = "
            f"{instance.N}: residual {res}"
        )
    if unit is None:
        unit = fundamental_unit(instance.D)
    mu, nu, D = unit.mu, unit.nu, instance.D
    while True:
        yield x, y
        x, y = x * mu + y * nu * D, x * nu + y * mu


def orbit(instance: PellInstance, seed: tuple[int, int], count: int) -> PellOrbit:
    """The seed and its first `count` successors under the fundamental unit."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    unit = fundamental_unit(instance.D)
    gen = iter_orbit(instance, seed, unit)
    solutions = tuple(next(gen) for _ in range(count + 1))
    return PellOrbit(instance, seed, unit, solutions)


def unit_order_mod(unit: PellUnit, D: int, m: int) -> int:
    """Smallest t >= 1 with (mu + nu*sqrt(D))^t = 1 (mod m).

    Computed by iterated multiplication of reduced coefficient pairs; the
    order exists because the unit has norm 1, hence is invertible mod m.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    mu, nu = unit.mu % m, unit.nu % m
    x, y = mu, nu
    t = 1
    limit = m * m + 1  # order divides |(Z/m)[sqrt(D)]^*| < m^2
    while (x, y) != (1, 0):
        x, y = (x * mu + y * nu * D) % m, (x * nu + y * mu) % m
        t += 1
        if t > limit:
            raise RuntimeError(f"unit order mod {m} not found below {limit}")
    return t
