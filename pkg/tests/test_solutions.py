"""The enumeration against a table frozen from an independent trial-division run
(n <= 30, m in [2, 500], caps 130/100/80)."""

from cullen_sunit import reference as ref
from cullen_sunit.pipeline import compare_solutions
from cullen_sunit.search import SUnitBox, solve_factorial_sunit

FROZEN = {
    -25: ["W_0-4!"],
    -21: ["C_1-4!"],
    -15: ["C_2-4!"],
    -7: ["W_0-3!"],
    -5: ["C_0-3!", "W_1-3!"],
    -3: ["C_1-3!", "W_0-2!"],
    -1: ["C_0-2!", "W_1-2!", "W_3-4!"],
    1: ["C_1-2!", "C_3-4!", "W_0+2!", "W_2-3!"],
    3: ["C_0+2!", "C_2-3!", "W_1+2!"],
    5: ["C_1+2!", "W_0+3!", "W_2-2!"],
    7: ["C_0+3!", "C_2-2!", "W_1+3!"],
    9: ["C_1+3!", "W_2+2!"],
    15: ["C_2+3!"],
    21: ["W_3-2!"],
    25: ["C_0+4!", "W_1+4!", "W_3+2!"],
    27: ["C_1+4!", "C_3+2!"],
    49: ["C_3+4!"],
    63: ["C_4-2!"],
    135: ["W_5-4!"],
    175: ["W_7-6!"],
    729: ["C_2+6!"],
    2025: ["C_8-4!"],
    5103: ["W_4+7!"],
}


def _solve():
    return solve_factorial_sunit(("cullen", "woodall"), 30, (2, 500), SUnitBox(*ref.FACTORIAL_BOX))


def test_enumeration_matches_frozen_table():
    res = _solve()
    got = {v: sorted(r.identity for r in recs) for v, recs in res.by_value().items()}
    assert got == FROZEN
    assert len(res.values) == 23 and all(v % 2 for v in res.values)


def test_printed_set_is_frozen_set_minus_two_values():
    printed = ref.parse_printed_set(ref.INTERSECTION_PRINTED)
    assert len(printed) == 21
    assert set(FROZEN) - set(printed) == {1, -15}
    assert set(printed) <= set(FROZEN)


def test_comparison_report():
    cmp = compare_solutions(_solve())
    wrong = sorted(r["printed"] for r in cmp["table"] if not r["holds"])
    assert wrong == ["-25 = W_1-4!", "175 = W_7-5!"]
    assert sorted(cmp["unlisted_records"]) == sorted(
        ["C_0+4! = 25", "C_1+4! = 27", "C_2-4! = -15", "W_0-4! = -25", "W_1+4! = 25", "W_7-6! = 175"])


def test_extending_n_adds_nothing():
    res = solve_factorial_sunit(("cullen", "woodall"), 60, (2, 60), SUnitBox(*ref.FACTORIAL_BOX))
    assert res.values == sorted(FROZEN)
