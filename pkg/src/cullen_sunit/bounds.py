"""Evaluators for the explicit bounds behind the effective finiteness result.

Every function returns a number; none of them decides anything.  All
logarithms are natural.  ``bound_report`` strings the evaluators together for
one recurrence and keeps an audit trail whose entries can be recomputed from
their logged inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, HypothesisViolated, ParameterOutOfRange
from .recurrence import RecurrenceSpec, derive_closed_form


def compute_XY(spec: RecurrenceSpec, p_k: int, K: int) -> tuple[int, int]:
    """X = max(|u_i|, |r_i|, p_k, K, 11) and Y = max(|r_i|, |u_i|)."""
    Y = spec.height
    return max(Y, p_k, K, 11), Y


def decimal_exponent(log_bound: float) -> int:
    """Least e with e^log_bound < 10^e."""
    # e^{12X} is never a power of ten, so the ceiling is strict
    return math.floor(log_bound / math.log(10)) + 1


def theorem2_bound(X: int) -> tuple[float, int]:
    """(12X, smallest power of ten above e^{12X})."""
    if X < 11:
        raise DomainError("X >= 11 required")
    log_bound = 12.0 * X
    return log_bound, 10 ** decimal_exponent(log_bound)


def zero_bound(Y: float) -> float:
    if Y < 3:
        raise DomainError("Y >= 3 required")
    return 39.0 * Y * math.log(Y)


def nu_upper(Y: float, p: int, n: float) -> float:
    """1.2e12 * p/log p * (log p + log Y) * (log n)^2."""
    if Y < 3:
        raise DomainError("Y >= 3 required")
    if n <= 1:
        raise DomainError("n > 1 required")
    lp = math.log(p)
    return 1.2e12 * (p / lp) * (lp + math.log(Y)) * math.log(n) ** 2


def lemma_bounds(Y: float, p: int, n: float, alpha: int | None = None,
                 beta: int | None = None) -> dict[str, float]:
    """zero_bound, nu_upper and, when the roots are given, the log of the
    lower bound on |u_n| that applies to the dominant root."""
    out = {"zero_bound": zero_bound(Y), "nu_upper": nu_upper(Y, p, n)}
    if alpha is not None and beta is not None:
        out["n_exceeds_Y8"] = float(n > Y**8)
        if abs(beta) > abs(alpha):
            out["log_un_lower"] = n * math.log(abs(beta)) - math.log(2 * Y**3)
        else:
            out["log_un_lower"] = math.log(n) + n * math.log(abs(alpha)) - math.log(6 * Y**3)
    return out


def invert_log_bound(T: float, s: int) -> float:
    """If T > x/(log x)^s and T > (4 s^2)^s, then x < 2^s T (log T)^s."""
    if s < 1:
        raise ParameterOutOfRange("s >= 1 required")
    if T <= (4 * s * s) ** s:
        raise HypothesisViolated(f"T = {T} <= (4s^2)^s = {(4 * s * s) ** s}")
    return 2.0**s * T * math.log(T) ** s


def matveev_log_lower(l: int, D: int, A: Sequence[float], B_star: float) -> float:
    """Lower bound for log|Lambda| of a nonzero real linear form in l logarithms."""
    if l < 1 or D < 1 or len(A) != l:
        raise ParameterOutOfRange("need l >= 1, D >= 1 and len(A) == l")
    if any(a < 0.16 for a in A):
        raise ParameterOutOfRange("each A_j must be >= 0.16")
    if B_star < 3:
        raise ParameterOutOfRange("B* >= 3 required")
    omega = math.prod(A)
    return (-1.4 * 30.0 ** (l + 3) * l**4.5 * D * D * omega
            * math.log(math.e * D) * math.log(math.e * B_star))


def yu_valuation_upper(l: int, D: int, p: int, e_pi: int, f_pi: int,
                       H: Sequence[float], B_star: float) -> float:
    """Upper bound for the pi-adic valuation of a nonzero linear form."""
    if l < 1 or D < 1 or e_pi < 1 or f_pi < 1 or len(H) != l:
        raise ParameterOutOfRange("need positive l, D, e_pi, f_pi and len(H) == l")
    lp = math.log(p)
    if any(h < lp * (1 - 1e-12) for h in H):
        raise ParameterOutOfRange("each H_j must be >= log p")
    if B_star <= 1:
        raise ParameterOutOfRange("B* > 1 required")
    return (19.0 * (20.0 * math.sqrt(l + 1) * D) ** (2 * (l + 1)) * e_pi ** (l - 1)
            * p**f_pi / (f_pi * lp) ** 2 * math.log(math.e**5 * l * D)
            * math.prod(H) * math.log(B_star))


def consolidated_yu_constant() -> float:
    """19 (20 sqrt 3)^6 * 4.4 * log(2 e^5): the constant folded into 1.1e12."""
    return 19.0 * (20.0 * math.sqrt(3)) ** 6 * 4.4 * math.log(2 * math.e**5)


def sieve(N: int) -> np.ndarray:
    is_p = np.ones(N + 1, dtype=bool)
    is_p[: min(2, N + 1)] = False
    for i in range(2, math.isqrt(N) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return is_p


def prime_pi(X: int) -> int:
    return int(np.count_nonzero(sieve(X)))


def prime_pi_and_M(X: int) -> tuple[int, float, float]:
    """(pi(X), 1.25 X / log X, log M(X) = pi(X) log log X)."""
    if X < 2:
        raise DomainError("X >= 2 required")
    pi = prime_pi(X)
    return pi, 1.25 * X / math.log(X), pi * math.log(math.log(X))


# ---------------------------------------------------------------------------
# audit trail


def _case1_n(X):
    return invert_log_bound(7.3e12 * X * X, 2)


def _case1_published(X):
    return 6.1e15 * X * X * math.log(X) ** 2


def _case2_n(X):
    return invert_log_bound(1e14 * X, 3)


def _case2_published(X):
    return 2.5e18 * X * math.log(X) ** 3


def _case3_log_small_m(X, k):
    # log of X^{6.5} (30 log X)^{k+6}; must stay below 8X
    return 6.5 * math.log(X) + (k + 6) * math.log(30 * math.log(X))


def _case3_log_large_m(X):
    # log of 2.8e35 X^9 log X; must stay below 12X
    return math.log(2.8e35) + 9 * math.log(X) + math.log(math.log(X))


def _height_formula(r1, r2, r3, u0, u1, u2):
    return derive_closed_form(RecurrenceSpec(r1, r2, r3, u0, u1, u2)).max_coefficient_height()


FORMULAS: dict[str, Callable[..., float]] = {
    "zero_bound": zero_bound,
    "nu_upper": nu_upper,
    "log_n_bound": lambda X: theorem2_bound(X)[0],
    "pi": lambda X: float(prime_pi_and_M(X)[0]),
    "pi_upper": lambda X: prime_pi_and_M(X)[1],
    "log_M": lambda X: prime_pi_and_M(X)[2],
    "case1_n_exact": _case1_n,
    "case1_n_published": _case1_published,
    "case2_n_exact": _case2_n,
    "case2_n_published": _case2_published,
    "case3_log_n_small_m": _case3_log_small_m,
    "case3_log_n_large_m": _case3_log_large_m,
    "consolidated_yu_constant": consolidated_yu_constant,
    "max_coefficient_height": _height_formula,
}


@dataclass(frozen=True)
class AuditEntry:
    name: str
    inputs: dict
    value: float
    note: str = ""


def recompute(entry: AuditEntry) -> float:
    return FORMULAS[entry.name](**entry.inputs)


@dataclass
class BoundReport:
    Y: int
    X: int
    log_n_bound: float
    decimal_threshold: int
    zero_bound: float
    nu_bounds: dict[int, float]
    audit: list[AuditEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "Y": self.Y, "X": self.X, "log_n_bound": self.log_n_bound,
            "decimal_threshold": f"1e{decimal_exponent(self.log_n_bound)}",
            "zero_bound": self.zero_bound,
            "nu_bounds": {str(p): v for p, v in self.nu_bounds.items()},
            "audit": [{"name": e.name, "inputs": e.inputs, "value": e.value, "note": e.note}
                      for e in self.audit],
        }

    def lines(self) -> list[str]:
        out = [f"Y = {self.Y}", f"X = {self.X}",
               f"n < e^{self.log_n_bound:g} < {self.to_dict()['decimal_threshold']}"]
        for e in self.audit:
            args = ", ".join(f"{k}={v}" for k, v in e.inputs.items())
            tag = f"  [{e.note}]" if e.note else ""
            out.append(f"{e.name}({args}) = {e.value:.6g}{tag}")
        return out


def bound_report(spec: RecurrenceSpec, p_k: int, K: int,
                 primes: Sequence[int] | None = None) -> BoundReport:
    X, Y = compute_XY(spec, p_k, K)
    log_n, thresh = theorem2_bound(X)
    if primes is None:
        primes = [int(q) for q in np.flatnonzero(sieve(p_k))]
    n_top = math.exp(log_n)
    audit: list[AuditEntry] = []

    def log(name, note="", **inputs):
        v = FORMULAS[name](**inputs)
        audit.append(AuditEntry(name, inputs, v, note))
        return v

    spec_inputs = dict(zip(("r1", "r2", "r3", "u0", "u1", "u2"), spec.r + spec.u))
    log("max_coefficient_height", "must not exceed log(4Y^3)", **spec_inputs)
    zb = log("zero_bound", Y=Y)
    log("log_n_bound", X=X)
    nu_bounds = {p: log("nu_upper", "at n = e^{12X}", Y=Y, p=p, n=n_top) for p in primes}
    log("pi", X=X)
    log("pi_upper", X=X)
    log("log_M", X=X)
    log("consolidated_yu_constant", "published-rounded: <= 1.1e12")
    log("case1_n_exact", X=X)
    log("case1_n_published", "published-rounded", X=X)
    log("case2_n_exact", X=X)
    log("case2_n_published", "published-rounded", X=X)
    log("case3_log_n_small_m", "must stay below 8X", X=X, k=len(primes))
    log("case3_log_n_large_m", "must stay below 12X", X=X)
    return BoundReport(Y, X, log_n, thresh, zb, nu_bounds, audit)
