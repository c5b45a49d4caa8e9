"""Certified valuation caps below 1e58, frozen from full runs."""

import pytest

from cullen_sunit import reference as ref
from cullen_sunit.lifting import factorial_shift_caps, max_valuation_below

SHIFT_KMAX = {(3, 0): 123, (5, 0): 85, (7, 0): 69, (3, 2): 122, (5, 2): 84, (7, 2): 70}

CASE_KMAX = {
    ("cullen", -1): {3: 126, 5: 87, 7: 73},
    ("woodall", 1): {3: 127, 5: 88, 7: 72},
    ("cullen", 1): {3: 129, 5: 87, 7: 73},
    ("woodall", -1): {3: 129, 5: 87, 7: 73},
}


@pytest.mark.parametrize("key", sorted(SHIFT_KMAX))
def test_shift_caps(key):
    vb = max_valuation_below(*key, ref.SEARCH_LIMIT)
    assert vb.k_max == SHIFT_KMAX[key] <= ref.SHIFT_CAPS[key]
    assert all(w >= ref.SEARCH_LIMIT for _, w in vb.witnesses)


@pytest.mark.parametrize("case", sorted(CASE_KMAX))
def test_factorial_case_caps(case):
    family, eps = case
    got = factorial_shift_caps(family, eps, [3, 5, 7], range(2, 501), ref.SEARCH_LIMIT)
    assert {p: k for p, (k, _) in got.items()} == CASE_KMAX[case]
    # the published caps hold; for p = 3 they are attained exactly
    for p, cap in ref.FACTORIAL_CASE_CAPS[case].items():
        assert got[p][0] <= cap
    assert got[3][0] == ref.FACTORIAL_CASE_CAPS[case][3]
