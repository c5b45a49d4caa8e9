"""Digit-by-digit lifting of solutions of p^k | n*2^n + 1 - t.

For an odd prime p, the condition p | n*2^n + 1 - t pins n down modulo
p(p-1) to exactly p-1 classes.  Inside a class n0 every further power of p
fixes one more base-p digit of (n - n0) / (p(p-1)), so the least n with
p^k | n*2^n + 1 - t in that class is computed in k-1 cheap steps.  Running
the lift past a search limit certifies an upper bound on the valuation for
every n below the limit.

Shifts used by the factorial equations: t = -eps*m! encodes C_n + eps*m!,
t = 2 - eps*m! encodes W_n + eps*m!.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import (
    BadSeed,
    EvenPrime,
    InternalCertificateFailure,
    UnboundedValuation,
)


def _check_odd_prime(p: int) -> None:
    if p == 2:
        raise EvenPrime("lifting needs the inverse of 2 mod p; p = 2 is excluded")
    if p < 3 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not an odd prime")


def _expr_mod(n: int, t: int, modulus: int, phi: int) -> int:
    """(n * 2^n + 1 - t) mod modulus, where phi = phi(modulus) and p is odd."""
    return (n * pow(2, n % phi, modulus) + 1 - t) % modulus


def find_residues(p: int, t: int) -> list[int]:
    """The p-1 classes n0 in [0, p(p-1)) with p | n0*2^n0 + 1 - t."""
    _check_odd_prime(p)
    out = [n for n in range(p * (p - 1)) if (n * pow(2, n, p) + 1 - t) % p == 0]
    if len(out) != p - 1:
        raise InternalCertificateFailure(f"expected {p - 1} residues, found {len(out)}")
    return out


@dataclass(frozen=True)
class LiftTask:
    p: int
    t: int
    n0: int
    k: int

    def __post_init__(self):
        _check_odd_prime(self.p)
        if not 0 <= self.n0 < self.p * (self.p - 1):
            raise ValueError(f"n0 must lie in [0, {self.p * (self.p - 1)})")
        if self.k < 1:
            raise ValueError("depth k must be >= 1")


@dataclass(frozen=True)
class LiftResult:
    p: int
    t: int
    n0: int
    k: int
    digits: tuple[int, ...]
    n_final: int
    # prefixes[j-1] = n_{j-1}; stage j certifies p^j | n_{j-1} 2^{n_{j-1}} + 1 - t
    prefixes: tuple[int, ...] = field(repr=False)

    def verify(self) -> bool:
        """Re-check every stage divisibility from scratch."""
        p, t = self.p, self.t
        n = self.n0
        for j, pref in enumerate(self.prefixes, start=1):
            if pref != n:
                return False
            pj = p**j
            if _expr_mod(pref, t, pj, (p - 1) * p ** (j - 1)) != 0:
                return False
            if j < self.k:
                n += (p - 1) * p**j * self.digits[j - 1]
        return n == self.n_final and 0 <= self.n_final < (p - 1) * p**self.k

    def to_dict(self) -> dict:
        return {
            "p": self.p, "t": str(self.t), "n0": self.n0, "k": self.k,
            "digits": list(self.digits), "n_final": str(self.n_final),
        }


def _step(p: int, t: int, n: int, j: int) -> int:
    """Digit l_j given n = n_{j-1} with p^j | n 2^n + 1 - t."""
    mod = p ** (j + 1)
    v = _expr_mod(n, t % mod, mod, (p - 1) * p**j)
    pj = p**j
    if v % pj:
        raise InternalCertificateFailure(f"stage {j}: p^{j} does not divide at n={n}")
    inv2n = pow(2, (p - 1) - n % (p - 1), p)
    return inv2n * (v // pj) % p


def lift(task: LiftTask) -> LiftResult:
    p, t, n = task.p, task.t, task.n0
    if (n * pow(2, n, p) + 1 - t) % p:
        raise BadSeed(f"{p} does not divide n0*2^n0 + 1 - t for n0={n}")
    digits = []
    prefixes = [n]
    for j in range(1, task.k):
        d = _step(p, t, n, j)
        digits.append(d)
        n += (p - 1) * p**j * d
        prefixes.append(n)
    pk = p**task.k
    if _expr_mod(n, t % pk, pk, (p - 1) * p ** (task.k - 1)):
        raise InternalCertificateFailure(f"final stage {task.k} fails at n={n}")
    return LiftResult(p, t, task.n0, task.k, tuple(digits), n, tuple(prefixes))


def zero_below(t: int, limit: int) -> int | None:
    """Smallest n < limit with n*2^n + 1 - t == 0, if any."""
    target = t - 1
    n = 0
    while n < limit and n * (1 << n) <= abs(target):
        if n * (1 << n) == target:
            return n
        n += 1
    return None


@dataclass(frozen=True)
class ValuationBound:
    p: int
    t: int
    limit: int
    k_max: int
    # (n0, least n in that class with p^k_max | n 2^n + 1 - t)
    witnesses: tuple[tuple[int, int], ...]


def max_valuation_below(p: int, t: int, limit: int, max_depth: int = 100_000) -> ValuationBound:
    """Least k such that nu_p(n*2^n + 1 - t) < k for every 0 <= n < limit.

    At depth k each class n0 has a single least representative; once all of
    them reach ``limit`` no smaller n can have valuation k or more.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    _check_odd_prime(p)
    z = zero_below(t, limit)
    if z is not None:
        raise UnboundedValuation(f"n={z} makes n*2^n + 1 - t vanish")
    branches = find_residues(p, t)
    current = list(branches)
    k = 1
    while min(current) < limit:
        if k >= max_depth:
            raise RuntimeError(f"depth {max_depth} reached without passing limit")
        current = [n + (p - 1) * p**k * _step(p, t, n, k) for n in current]
        k += 1
    return ValuationBound(p, t, limit, k, tuple(zip(branches, current)))


def shift_target(family: str, eps: int, m_factorial: int) -> int:
    """t with n*2^n + 1 - t = u_n + eps*m! for u = Cullen or Woodall."""
    b = {"cullen": 1, "woodall": -1}[family]
    return 1 - b - eps * m_factorial


def _case_worker(args):
    family, eps, p, m, limit = args
    vb = max_valuation_below(p, shift_target(family, eps, math.factorial(m)), limit)
    return m, vb.k_max


def factorial_shift_caps(family: str, eps: int, primes, m_values, limit: int,
                         workers: int = 1) -> dict[int, tuple[int, int]]:
    """For each p, the largest k_max over m of max_valuation_below for u_n + eps*m!.

    Returns {p: (k_max, m attaining it first)}.
    """
    jobs = [(family, eps, p, m, limit) for p in primes for m in m_values]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_case_worker, jobs, chunksize=16))
    else:
        results = [_case_worker(j) for j in jobs]
    out: dict[int, tuple[int, int]] = {}
    for (_, _, p, _, _), (m, k) in zip(jobs, results):
        if p not in out or k > out[p][0]:
            out[p] = (k, m)
    return out
