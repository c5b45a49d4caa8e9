import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import brute_nu
from cullen_sunit.errors import ZeroArgument
from cullen_sunit.valuation import (
    SATURATED,
    TruncatedResidue,
    digit_sum,
    factorial_mod,
    nu,
    nu2_truncated,
    nu_factorial,
)


@given(st.integers().filter(bool), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_nu_matches_repeated_division(x, p):
    assert nu(x, p) == brute_nu(x, p)


@given(st.integers(0, 400), st.integers(1, 10**6).filter(lambda u: u % 3), st.booleans())
def test_nu_of_large_power(e, unit, neg):
    x = 3**e * unit * (-1 if neg else 1)
    assert nu(x, 3) == e


def test_nu_zero_raises():
    with pytest.raises(ZeroArgument):
        nu(0, 3)


@pytest.mark.parametrize("m", range(0, 41))
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_legendre_matches_factorization(m, p):
    assert nu_factorial(m, p) == brute_nu(math.factorial(m), p)


@given(st.integers(0, 5000), st.sampled_from([2, 3, 5, 7]))
def test_legendre_digit_sum_identity(m, p):
    assert nu_factorial(m, p) * (p - 1) == m - digit_sum(m, p)


def test_legendre_500():
    assert [nu_factorial(500, p) for p in (2, 3, 5, 7)] == [494, 247, 124, 82]


@given(st.integers(0, 300), st.integers(1, 10**9))
def test_factorial_mod(m, mod):
    assert factorial_mod(m, mod) == math.factorial(m) % mod


def test_truncated_vs_exact_10k_samples():
    rng = random.Random(12345)
    for _ in range(10_000):
        x = rng.getrandbits(rng.randint(1, 200)) * rng.choice((1, -1))
        if x == 0:
            continue
        for w in (24, 32, 64):
            got = nu2_truncated(TruncatedResidue.of(x, w))
            if nu(x, 2) >= w:
                assert got is SATURATED
            else:
                assert got == nu(x, 2)


def test_truncated_saturates_on_zero_residue():
    assert nu2_truncated(TruncatedResidue.of(2**40, 32)) is SATURATED
    assert nu2_truncated(TruncatedResidue.of(2**31, 32)) == 31


def test_truncated_residue_range():
    with pytest.raises(ValueError):
        TruncatedResidue(1 << 32, 32)
