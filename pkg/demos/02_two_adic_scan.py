"""How large can nu_2(3^a 5^b 7^c +- 1) get?  A whole box at once with numpy."""
import time

import numpy as np

from cullen_sunit import SUnitBox, pm1_shifts, scan_shift_set
from cullen_sunit.search import factorial_shifts, nu2_grid

box = SUnitBox((3, 5, 7), (125, 99, 79))
print("cells:", box.size)

# residues mod 2^32 are enough unless a cell is divisible by 2^32; those get rechecked
grid = nu2_grid(box, 1, width=32)
at = tuple(int(i) for i in np.unravel_index(grid.argmax(), grid.shape))
print("largest nu_2(s + 1):", grid.max(), "at", at)
print("histogram of nu_2(s + 1):", np.bincount(grid.ravel())[:12].tolist(), "...")

t0 = time.perf_counter()
rep = scan_shift_set(box, pm1_shifts())
print(f"max* over +-1: {rep.max_val} at {rep.argmax[:3]} ({rep.shift_label}), "
      f"{rep.count_skipped_zero} exact zero skipped, {time.perf_counter() - t0:.2f} s")

# the same with +-1 +- m!, m up to 60 on a smaller box
small = SUnitBox((3, 5, 7), (60, 50, 40))
shifts = factorial_shifts(2, 60)
strict = scan_shift_set(small, shifts)
literal = scan_shift_set(small, shifts, skip_cancelling=False)
print("max* nu_2(s +- 1 +- m!):", strict.max_val, strict.shift_label)
# with s = 1 the shift -1 +- m! leaves +-m!, whose 2-adic valuation is Legendre's
print("without excluding s - 1 = 0:", literal.max_val, literal.shift_label)
