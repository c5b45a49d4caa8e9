import math

from hypothesis import strategies as st

from cullen_sunit.errors import InvalidRecurrence
from cullen_sunit.recurrence import RecurrenceSpec, derive_closed_form


@st.composite
def valid_specs(draw, root_bound=6, term_bound=40):
    """Double-root recurrences that pass validation, with a != 0."""
    alpha = draw(st.integers(-root_bound, root_bound).filter(bool))
    beta = draw(st.integers(-root_bound, root_bound).filter(
        lambda b: b and abs(b) != abs(alpha) and math.gcd(alpha, b) == 1))
    u = draw(st.tuples(*[st.integers(-term_bound, term_bound)] * 3))
    spec = RecurrenceSpec.from_roots(alpha, beta, u)
    try:
        derive_closed_form(spec)
    except InvalidRecurrence:
        from hypothesis import assume
        assume(False)
    return spec


def brute_nu(x: int, p: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


# criterion -> list of (check, ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, check: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((check, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[crit]
        ok = all(c[1] for c in checks)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        for name, good, detail in checks:
            tail = f"  ({detail})" if detail else ""
            tr.write_line(f"    [{'ok' if good else 'FAIL'}] {name}{tail}")
