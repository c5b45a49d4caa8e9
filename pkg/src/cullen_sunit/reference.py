"""Published values for the Cullen/Woodall instance, kept verbatim.

Large integers are stored exactly as typeset, including stray whitespace
from line breaks; ``normalize_digits`` joins them before comparison.  The
solution table is stored one identity per entry so that the enumeration can
be diffed against it entry by entry.
"""

from __future__ import annotations

import re

# (p, t, n0, k, printed n_{k-1})
LIFT_CONSTANTS = [
    (3, 0, 1, 124, "14096601226371925780354191137048938941051110799238395669157"),
    (3, 0, 2, 124, "131916531426323976413079495561663150351720433293832571666642"),
    (5, 0, 3, 99, "3402055567449187211072479894744526992631911429806123056986882546322203"),
    (5, 0, 4, 99, "5860318539126309542028901497378642627938750361916774422262903402988764"),
    (5, 0, 6, 99, "6211271813369046855320209665842033651445457938030806323641242413003566"),
    (5, 0, 17, 99, "1900239201139363261324476300084028074211927656029119121314580491907717"),
    (7, 0, 5, 79, "23376667116957912273395168878053596583934978592913658754638298386469"),
    (7, 0, 6, 79, "26944746689754581236007271009151875823474002652201195796068635289134"),
    (7, 0, 10, 79, "24069582378334816208567848014057127858216459565384781083488608965992"),
    (7, 0, 26, 79, "6004003289610317916795511974189307812131311913908480006270103623040"),
    (7, 0, 27, 79, "9572082862406986879407614105287587051670335973196017047700440525705"),
    (7, 0, 31, 79, "6696918550987221851968191110192839086412792886379602335120414202563"),
    (3, 2, 4, 126, "1324117109863992278171562286849551012905296843274331852235486"),
    (3, 2, 5, 126, "2024168377236220040978157856035277257188964269091189786706895"),
    (5, 2, 7, 99, "50556828220234104829713905612151729929047533964652111403956962145639\n\t67"),
    (5, 2, 13, 99, "246611946565139989425565633613382073939085689370031037905766823665953"),
    (5, 2, 14, 99, "27048749182422623203819872362474977092459246214806824031817876803325\n\t14"),
    (5, 2, 16, 99, "30558281924849996336732954047108887327526321975947143045601266903473\n\t16"),
    (7, 2, 2, 79, "3070945089242253569511128531703 7993482895779452876147449227324975278"),
    (7, 2, 4, 79, "4084723421753861202636449976\n\t25665865881992651094052930276211831026"),
    (7, 2, 15, 79, "2157106343186897994855204068753 0035249121277125785855969465402463679"),
    (7, 2, 23, 79, "13336787065074941338511628413173 704711092112773870968700859130211849"),
    (7, 2, 25, 79, "177811361695229804768633019014899 54637685659330099231678644406594455"),
    (7, 2, 36, 79, "4198399604521385591952383783665746 477317610446780677221097207700250"),
]

RESIDUES = {
    (3, 0): [1, 2],
    (5, 0): [3, 4, 6, 17],
    (7, 0): [5, 6, 10, 26, 27, 31],
    (3, 2): [4, 5],
    (5, 2): [7, 13, 14, 16],
    (7, 2): [2, 4, 15, 23, 25, 36],
}

LEGENDRE_500 = {2: 494, 3: 247, 5: 124, 7: 82}

SEARCH_LIMIT = 10**58

# nu_p(n 2^n + 1 - t) < cap for n < 1e58
SHIFT_CAPS = {
    (3, 0): 124, (5, 0): 99, (7, 0): 79,
    (3, 2): 126, (5, 2): 99, (7, 2): 79,
}

# (family, eps) -> {p: strict cap on nu_p(u_n + eps*m!)} for m in [2, 500]
FACTORIAL_CASE_CAPS = {
    ("cullen", -1): {3: 126, 5: 100, 7: 80},
    ("woodall", 1): {3: 127, 5: 100, 7: 80},
    ("cullen", 1): {3: 129, 5: 100, 7: 80},
    ("woodall", -1): {3: 129, 5: 100, 7: 80},
}

PM1_BOX = ((3, 5, 7), (125, 99, 79))
PM1_MAX = 19
FACTORIAL_BOX = ((3, 5, 7), (130, 100, 80))
FACTORIAL_M_RANGE = (2, 500)
FACTORIAL_NU2_BOUND = 30
N_MAX = 30

INTERSECTION_PRINTED = "{-25,-21,-7,-5-3,-1,3,5,7,9,15,21,25,27,49,63,135,175,729,2025,5103}"

# value -> identities as typeset; a trailing dagger marks a degenerate solution
SOLUTION_TABLE = {
    1: ["W_0+2!", "C_1-2!†", "W_2-3!", "C_3-4!†"],
    -1: ["C_0-2!", "W_1-2!†", "W_3-4!†"],
    3: ["C_0+2!", "W_1+2!", "C_2-3!"],
    -3: ["W_0-2!", "C_1-3!"],
    5: ["W_0+3!", "C_1+2!", "W_2-2!"],
    -5: ["C_0-3!", "W_1-3!"],
    7: ["C_0+3!", "W_1+3!", "C_2-2!"],
    -7: ["W_0-3!"],
    9: ["C_1+3!", "W_2+2!"],
    15: ["C_2+3!"],
    21: ["W_3-2!"],
    -21: ["C_1-4!"],
    25: ["W_3+2!"],
    -25: ["W_1-4!"],
    27: ["C_3+2!"],
    49: ["C_3+4!"],
    63: ["C_4-2!"],
    135: ["W_5-4!"],
    175: ["W_7-5!"],
    729: ["C_2+6!"],
    2025: ["C_8-4!"],
    5103: ["W_4+7!"],
}

HEADLINE = {"max_n": 8, "max_n_identity": "C_8-4!", "max_m": 7, "max_m_identity": "W_4+7!"}


def normalize_digits(s: str) -> str:
    return re.sub(r"\s+", "", s)


def parse_printed_set(s: str) -> list[int]:
    """Integers in a printed set, splitting run-together entries like '-5-3'."""
    return sorted(int(x) for x in re.findall(r"[-+]?\d+", s))


_IDENT = re.compile(r"([CW])_(\d+)([+-])(\d+)!(†?)$")


def parse_identity(s: str) -> tuple[str, int, int, int, bool]:
    """'C_8-4!' -> ('cullen', 8, -1, 4, False)."""
    m = _IDENT.match(s)
    if not m:
        raise ValueError(f"cannot parse identity {s!r}")
    fam = {"C": "cullen", "W": "woodall"}[m.group(1)]
    return fam, int(m.group(2)), 1 if m.group(3) == "+" else -1, int(m.group(4)), bool(m.group(5))
