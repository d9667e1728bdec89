"""Exact arithmetic in Z/mZ and the multiplicative order functions."""

from __future__ import annotations

import math
from dataclasses import dataclass

MAX_MODULUS = 2**32 - 1


class NotInvertible(ArithmeticError):
    """Raised when a residue shares a factor with the modulus."""

    def __init__(self, x: int, m: int):
        self.x = x
        self.m = m
        self.gcd = math.gcd(x, m)
        super().__init__(f"{x} is not invertible mod {m} (gcd={self.gcd})")


def check_modulus(m: int) -> int:
    if not 1 <= m <= MAX_MODULUS:
        raise ValueError(f"modulus must lie in [1, 2^32-1], got {m}")
    return m


def inv(x: int, m: int) -> int:
    x %= m
    if math.gcd(x, m) != 1:
        raise NotInvertible(x, m)
    if m == 1:
        return 0
    return pow(x, -1, m)


def ord_(x: int, m: int) -> int:
    """Smallest k >= 1 with x^k = 1 (mod m)."""
    x %= m
    if math.gcd(x, m) != 1:
        raise NotInvertible(x, m)
    if m == 1:
        return 1
    y, k = x, 1
    while y != 1:
        y = y * x % m
        k += 1
    return k


def pord(x: int, m: int) -> int:
    """Order of x in the quotient of the unit group by {-1, 1}."""
    x %= m
    if math.gcd(x, m) != 1:
        raise NotInvertible(x, m)
    if m <= 2:
        return 1
    y, k = x, 1
    while y != 1 and y != m - 1:
        y = y * x % m
        k += 1
    return k


def size_period(sigma: int, m: int) -> int:
    """lcm(ord_m(sigma), m): the size period of the main balance results."""
    return math.lcm(ord_(sigma, m), m)


def v2(m: int) -> int:
    if m < 1:
        raise ValueError("v2 needs a positive integer")
    return (m & -m).bit_length() - 1


def is_unit(x: int, m: int) -> bool:
    return math.gcd(x % m, m) == 1


def factorize(m: int) -> dict[int, int]:
    """Trial-division factorization, fine for desk-scale moduli."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def units(m: int) -> list[int]:
    return [u for u in range(m) if math.gcd(u, m) == 1]


@dataclass(frozen=True)
class Residue:
    """A canonical element of Z/mZ."""

    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError("moduli differ")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, k: int):
        return Residue(pow(self.value, k, self.modulus), self.modulus)

    def __int__(self):
        return self.value

    def inverse(self) -> Residue:
        return Residue(inv(self.value, self.modulus), self.modulus)

    def order(self) -> int:
        return ord_(self.value, self.modulus)

    def pm_order(self) -> int:
        return pord(self.value, self.modulus)

    def is_unit(self) -> bool:
        return is_unit(self.value, self.modulus)
