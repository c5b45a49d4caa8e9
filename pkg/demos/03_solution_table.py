"""Every C_n +- m! and W_n +- m! that is +- a {3,5,7}-unit, and how it compares with the printed table."""
from cullen_sunit import SUnitBox, solve_factorial_sunit
from cullen_sunit import reference as ref
from cullen_sunit.pipeline import compare_solutions

res = solve_factorial_sunit(("cullen", "woodall"), 30, (2, 500), SUnitBox((3, 5, 7), (130, 100, 80)))
print(res.to_csv())
print("max n, max m (nondegenerate):", res.headline())

cmp = compare_solutions(res)
print("found, not in the printed set:", cmp["missing_from_printed_set"])
for row in cmp["table"]:
    if not row["holds"]:
        print(f"printed {row['printed']} but it evaluates to {row['actual_value']}")
print("true identities missing from the table:", cmp["unlisted_records"])
print("printed set as typeset:", ref.INTERSECTION_PRINTED)
