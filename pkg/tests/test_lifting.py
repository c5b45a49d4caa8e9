import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_nu
from cullen_sunit.errors import BadSeed, EvenPrime, UnboundedValuation
from cullen_sunit.lifting import (
    LiftTask,
    factorial_shift_caps,
    find_residues,
    lift,
    max_valuation_below,
    shift_target,
    zero_below,
)


def expr(n, t):
    return n * 2**n + 1 - t


def brute_least(p, t, n0, k):
    step = p * (p - 1)
    n = n0
    while expr(n, t) % p**k:
        n += step
    return n


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("t", range(-6, 7))
def test_lift_matches_brute_force(p, t):
    for n0 in find_residues(p, t):
        for k in range(1, 6):
            res = lift(LiftTask(p, t, n0, k))
            assert res.n_final == brute_least(p, t, n0, k)
            assert res.n_final < (p - 1) * p**k
            assert res.verify()


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("t", range(-6, 7))
def test_residue_count_and_membership(p, t):
    res = find_residues(p, t)
    assert len(res) == p - 1
    assert res == [n for n in range(p * (p - 1)) if expr(n, t) % p == 0]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(-10**6, 10**6), st.integers(1, 30))
def test_lift_certificate_and_prefix_growth(p, t, k):
    n0 = find_residues(p, t)[0]
    res = lift(LiftTask(p, t, n0, k))
    assert res.verify()
    q = p**k
    assert (res.n_final * pow(2, res.n_final, q) + 1 - t) % q == 0
    # prefixes are congruent, each one refining the last
    for j, pref in enumerate(res.prefixes[1:], start=1):
        assert (pref - res.prefixes[j - 1]) % ((p - 1) * p**j) == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(-6, 6), st.integers(1, 8))
def test_depth_monotone(p, t, k):
    n0 = find_residues(p, t)[-1]
    a = lift(LiftTask(p, t, n0, k)).n_final
    b = lift(LiftTask(p, t, n0, k + 1)).n_final
    assert b >= a and (b - a) % ((p - 1) * p**k) == 0


def test_lift_deterministic():
    a = lift(LiftTask(5, 2, 13, 99))
    b = lift(LiftTask(5, 2, 13, 99))
    assert a == b and a.to_dict() == b.to_dict()


def test_lift_rejects_bad_inputs():
    with pytest.raises(BadSeed):
        lift(LiftTask(3, 0, 0, 4))
    with pytest.raises(EvenPrime):
        LiftTask(2, 0, 1, 4)
    with pytest.raises(ValueError):
        LiftTask(9, 0, 1, 4)
    with pytest.raises(ValueError):
        LiftTask(3, 0, 6, 4)
    with pytest.raises(ValueError):
        LiftTask(3, 0, 1, 0)


def brute_cap(p, t, limit):
    return 1 + max(brute_nu(expr(n, t), p) for n in range(limit))


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("t", [0, 2, -4, 5, -119, 121])
@pytest.mark.parametrize("limit", [1, 2, 14, 100, 2000])
def test_max_valuation_below_matches_brute_force(p, t, limit):
    assert max_valuation_below(p, t, limit).k_max == brute_cap(p, t, limit)


def test_small_limit_example():
    # the largest 3-adic valuation below 14 is nu_3(13*2^13 + 1) = 2
    assert brute_nu(13 * 2**13 + 1, 3) == 2
    assert max_valuation_below(3, 0, 14).k_max == 3


def test_unbounded_valuation_detected():
    # t = 1: n = 0 gives 0; t = 3: n = 1 gives 0
    assert zero_below(1, 10) == 0 and zero_below(3, 10) == 1 and zero_below(2, 10) is None
    with pytest.raises(UnboundedValuation):
        max_valuation_below(3, 3, 10**58)
    # the same t is fine when the zero lies at or beyond the limit
    assert max_valuation_below(3, 3, 1).k_max == brute_cap(3, 3, 1)


@pytest.mark.parametrize("family, b", [("cullen", 1), ("woodall", -1)])
@pytest.mark.parametrize("eps", [1, -1])
def test_shift_target_encodes_equation(family, b, eps):
    for m in range(2, 8):
        t = shift_target(family, eps, math.factorial(m))
        for n in range(10):
            assert expr(n, t) == n * 2**n + b + eps * math.factorial(m)


def test_factorial_shift_caps_against_brute_force():
    limit = 300
    got = factorial_shift_caps("woodall", 1, [3, 5], range(2, 9), limit)
    for p in (3, 5):
        want = max(brute_cap(p, shift_target("woodall", 1, math.factorial(m)), limit)
                   for m in range(2, 9))
        assert got[p][0] == want


def test_factorial_shift_caps_workers_agree():
    a = factorial_shift_caps("cullen", -1, [3, 7], range(2, 30), 10**20, workers=1)
    b = factorial_shift_caps("cullen", -1, [3, 7], range(2, 30), 10**20, workers=2)
    assert a == b
