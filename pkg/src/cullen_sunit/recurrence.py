"""Ternary recurrences whose characteristic polynomial has a double root.

A sequence with u_{n+3} = r1*u_{n+2} + r2*u_{n+1} + r3*u_n and characteristic
polynomial (X - alpha)^2 (X - beta) has the closed form

    u_n = (a*n + c) * alpha**n + b * beta**n

with rational a, b, c.  This module recovers alpha, beta and the coefficients
exactly (Cramer's rule on the first three terms) and evaluates terms both by
iteration and through the closed form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import (
    DegenerateRatio,
    HeightTooSmall,
    NoDoubleRoot,
    NotCoprime,
    ZeroLinearCoefficient,
    ZeroRoot,
)

ITERATION_LIMIT = 10**6


@dataclass(frozen=True)
class RecurrenceSpec:
    r1: int
    r2: int
    r3: int
    u0: int
    u1: int
    u2: int

    @property
    def r(self) -> tuple[int, int, int]:
        return (self.r1, self.r2, self.r3)

    @property
    def u(self) -> tuple[int, int, int]:
        return (self.u0, self.u1, self.u2)

    @property
    def height(self) -> int:
        """Y = max |r_i|, |u_i|."""
        return max(abs(v) for v in self.r + self.u)

    def to_json(self) -> str:
        return json.dumps({"r": list(self.r), "u": list(self.u)})

    @classmethod
    def from_dict(cls, d: dict) -> "RecurrenceSpec":
        r, u = d["r"], d["u"]
        if len(r) != 3 or len(u) != 3:
            raise ValueError("expected three coefficients and three initial terms")
        return cls(*(int(v) for v in r), *(int(v) for v in u))

    @classmethod
    def from_json(cls, text: str) -> "RecurrenceSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_roots(cls, alpha: int, beta: int, u: Sequence[int]) -> "RecurrenceSpec":
        # (X - a)^2 (X - b) = X^3 - (2a + b) X^2 + (a^2 + 2ab) X - a^2 b
        return cls(2 * alpha + beta, -(alpha * alpha + 2 * alpha * beta),
                   alpha * alpha * beta, *u)


PRESETS = {
    "cullen": RecurrenceSpec(5, -8, 4, 1, 3, 9),
    "woodall": RecurrenceSpec(5, -8, 4, -1, 1, 7),
}


def preset(name: str) -> RecurrenceSpec:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: {sorted(PRESETS)}") from None


def _det3(m: Sequence[Sequence[int]]) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _poly_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    # coefficient lists, highest degree first
    num = list(num)
    while len(num) >= len(den) and any(num):
        q = num[0] / den[0]
        for i in range(len(den)):
            num[i] -= q * den[i]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return num


def _poly_gcd(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    while g:
        f, g = g, _poly_rem(f, g)
    return [c / f[0] for c in f]


def double_root(r1: int, r2: int, r3: int) -> tuple[int, int]:
    """Return (alpha, beta) with X^3 - r1 X^2 - r2 X - r3 = (X - alpha)^2 (X - beta)."""
    f = [Fraction(1), Fraction(-r1), Fraction(-r2), Fraction(-r3)]
    df = [Fraction(3), Fraction(-2 * r1), Fraction(-r2)]
    g = _poly_gcd(f, df)
    if len(g) == 3:
        # triple root: alpha == beta
        raise DegenerateRatio("characteristic polynomial has a triple root")
    if len(g) != 2:
        raise NoDoubleRoot(f"X^3 - {r1}X^2 - {r2}X - {r3} is squarefree")
    root = -g[1]
    if root.denominator != 1:
        raise NoDoubleRoot(f"repeated root {root} is not an integer")
    alpha = int(root)
    beta = r1 - 2 * alpha
    if (2 * alpha + beta != r1 or alpha * alpha + 2 * alpha * beta != -r2
            or alpha * alpha * beta != r3):
        raise NoDoubleRoot("Viete relations fail for the extracted roots")
    return alpha, beta


@dataclass(frozen=True)
class ClosedForm:
    """u_n = (a n + c) alpha^n + b beta^n, with a = delta1/delta etc.

    The raw Cramer data (delta, delta1..3) is kept unreduced next to the
    reduced fractions a, c, b.
    """

    spec: RecurrenceSpec
    alpha: int
    beta: int
    delta: int
    delta1: int
    delta2: int
    delta3: int
    a: Fraction = field(init=False)
    c: Fraction = field(init=False)
    b: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.delta1, self.delta))
        object.__setattr__(self, "c", Fraction(self.delta2, self.delta))
        object.__setattr__(self, "b", Fraction(self.delta3, self.delta))

    def linear_part(self, n: int) -> Fraction:
        """p(n) = a n + c."""
        return self.a * n + self.c

    def term(self, n: int) -> int:
        v = self.linear_part(n) * Fraction(self.alpha) ** n + self.b * Fraction(self.beta) ** n
        if v.denominator != 1:
            raise ArithmeticError(f"closed form gave non-integer {v} at n={n}")
        return int(v)

    def max_coefficient_height(self) -> float:
        return max(rational_height(q) for q in (self.a, self.b, self.c))


def validate(spec: RecurrenceSpec) -> tuple[int, int]:
    """Check every structural assumption; return (alpha, beta)."""
    if math.gcd(spec.r1, spec.r2, spec.r3) != 1:
        raise NotCoprime(f"gcd(r1, r2, r3) = {math.gcd(spec.r1, spec.r2, spec.r3)}")
    alpha, beta = double_root(spec.r1, spec.r2, spec.r3)
    if alpha == 0 or beta == 0:
        raise ZeroRoot(f"alpha={alpha}, beta={beta}")
    if abs(alpha) == abs(beta):
        raise DegenerateRatio(f"|alpha| = |beta| = {abs(alpha)}")
    if math.gcd(alpha, beta) != 1:
        raise NotCoprime(f"gcd(alpha, beta) = {math.gcd(alpha, beta)}")
    if spec.height < 3:
        raise HeightTooSmall(f"Y = {spec.height} < 3")
    return alpha, beta


def derive_closed_form(spec: RecurrenceSpec) -> ClosedForm:
    alpha, beta = validate(spec)
    u0, u1, u2 = spec.u
    al2, be2 = alpha * alpha, beta * beta
    # unknowns ordered (a, c, b)
    delta = _det3([(0, 1, 1), (alpha, alpha, beta), (2 * al2, al2, be2)])
    delta1 = _det3([(u0, 1, 1), (u1, alpha, beta), (u2, al2, be2)])
    delta2 = _det3([(0, u0, 1), (alpha, u1, beta), (2 * al2, u2, be2)])
    delta3 = _det3([(0, 1, u0), (alpha, alpha, u1), (2 * al2, al2, u2)])
    if delta1 == 0:
        raise ZeroLinearCoefficient("a = 0: initial terms carry no n*alpha^n component")
    cf = ClosedForm(spec, alpha, beta, delta, delta1, delta2, delta3)
    for n, un in enumerate(spec.u):
        if cf.term(n) != un:
            raise ArithmeticError(f"closed form does not reproduce u_{n}")
    return cf


def iterate_terms(spec: RecurrenceSpec, count: int) -> list[int]:
    """First ``count`` terms by the linear recurrence."""
    out = list(spec.u[:count])
    while len(out) < count:
        out.append(spec.r1 * out[-1] + spec.r2 * out[-2] + spec.r3 * out[-3])
    return out


def iterate_term(spec: RecurrenceSpec, n: int) -> int:
    x, y, z = spec.u
    for _ in range(n):
        x, y, z = y, z, spec.r1 * z + spec.r2 * y + spec.r3 * x
    return x


def eval_term(obj: RecurrenceSpec | ClosedForm, n: int, method: str = "auto") -> int:
    """u_n by recurrence iteration ("recurrence"), closed form ("closed"), or
    iteration up to ``ITERATION_LIMIT`` and closed form beyond ("auto")."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "auto":
        method = "recurrence" if n <= ITERATION_LIMIT else "closed"
    if method == "recurrence":
        spec = obj.spec if isinstance(obj, ClosedForm) else obj
        return iterate_term(spec, n)
    if method == "closed":
        cf = obj if isinstance(obj, ClosedForm) else derive_closed_form(obj)
        return cf.term(n)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def _factorial(m: int) -> int:
    return math.factorial(m)


def is_degenerate(cf: ClosedForm, A: int, m: int, n: int) -> bool:
    """True iff A*m! equals b*beta^n or p(n)*alpha^n."""
    lhs = A * _factorial(m)
    return lhs == cf.b * Fraction(cf.beta) ** n or lhs == cf.linear_part(n) * Fraction(cf.alpha) ** n


def rational_height(q: Fraction | int) -> float:
    q = Fraction(q)
    if q == 0:
        return 0.0
    return math.log(max(abs(q.numerator), q.denominator))
