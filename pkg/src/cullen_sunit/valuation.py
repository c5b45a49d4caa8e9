"""Exact and truncated p-adic valuations."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ZeroArgument

WIDTHS = (24, 32, 64)


class _Saturated(enum.Enum):
    SATURATED = "saturated"

    def __repr__(self) -> str:
        return "SATURATED"


#: Returned by :func:`nu2_truncated` when the residue is 0, i.e. nu_2(x) >= width.
SATURATED = _Saturated.SATURATED


def nu(x: int, p: int) -> int:
    """Largest e with p**e dividing x."""
    if x == 0:
        raise ZeroArgument("valuation of 0 is undefined")
    x = abs(x)
    if p == 2:
        return (x & -x).bit_length() - 1
    e = 0
    # strip p**(2^i) blocks first so huge valuations stay logarithmic in cost
    powers = [p]
    while True:
        q, r = divmod(x, powers[-1])
        if r:
            break
        x = q
        e += 1 << (len(powers) - 1)
        powers.append(powers[-1] * powers[-1])
    for i in range(len(powers) - 2, -1, -1):
        q, r = divmod(x, powers[i])
        if not r:
            x = q
            e += 1 << i
    return e


def nu_factorial(m: int, p: int) -> int:
    """Legendre's formula: sum of floor(m / p**i)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = 0
    while m:
        m //= p
        total += m
    return total


def digit_sum(m: int, base: int) -> int:
    s = 0
    while m:
        m, r = divmod(m, base)
        s += r
    return s


def factorial_mod(m: int, modulus: int) -> int:
    """m! mod modulus by running product, never forming m! itself."""
    acc = 1 % modulus
    for i in range(2, m + 1):
        acc = acc * i % modulus
        if acc == 0:
            break
    return acc


@dataclass(frozen=True)
class TruncatedResidue:
    residue: int
    width: int

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("width must be positive")
        if not 0 <= self.residue < (1 << self.width):
            raise ValueError(f"residue {self.residue} out of range for width {self.width}")

    @classmethod
    def of(cls, x: int, width: int) -> "TruncatedResidue":
        return cls(x & ((1 << width) - 1), width)


def nu2_truncated(r: TruncatedResidue) -> int | _Saturated:
    """Trailing zeros of a residue mod 2**w.

    A nonzero residue gives nu_2 of every integer in its class exactly; a zero
    residue only says nu_2 >= w and the caller has to widen or go exact.
    """
    if r.residue == 0:
        return SATURATED
    return (r.residue & -r.residue).bit_length() - 1
