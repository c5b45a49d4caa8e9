"""Valuation bounds and S-unit searches for Cullen and Woodall numbers.

The general machinery (double-root recurrences, Hensel-style lifting of
n 2^n + 1 - t, nu_2 box scans, explicit-bound evaluators) is parameterised;
the Cullen/Woodall instance and its published constants live in
:mod:`cullen_sunit.reference`.
"""

from .bounds import bound_report, invert_log_bound, matveev_log_lower, yu_valuation_upper
from .errors import CullenSunitError
from .lifting import LiftResult, LiftTask, find_residues, lift, max_valuation_below
from .recurrence import ClosedForm, RecurrenceSpec, derive_closed_form, eval_term, preset, validate
from .search import (
    ScanReport,
    SUnitBox,
    factorial_shifts,
    max_shifted_nu2,
    pm1_shifts,
    scan_shift_set,
    smooth_decompose,
    solve_factorial_sunit,
)
from .valuation import nu, nu_factorial

__all__ = [
    "ClosedForm", "CullenSunitError", "LiftResult", "LiftTask", "RecurrenceSpec", "SUnitBox",
    "ScanReport", "bound_report", "derive_closed_form", "eval_term", "factorial_shifts",
    "find_residues", "invert_log_bound", "lift", "matveev_log_lower", "max_shifted_nu2",
    "max_valuation_below", "nu", "nu_factorial", "pm1_shifts", "preset", "scan_shift_set",
    "smooth_decompose", "solve_factorial_sunit", "validate", "yu_valuation_upper",
]
