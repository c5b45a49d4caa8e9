"""Walk through the lifting certificate for Cullen numbers mod powers of 3."""
import numpy as np

from cullen_sunit import derive_closed_form, find_residues, lift, max_valuation_below, preset
from cullen_sunit.lifting import LiftTask
from cullen_sunit.valuation import nu

# Cullen numbers satisfy a ternary recurrence whose characteristic
# polynomial is (X - 2)^2 (X - 1); the closed form comes back as n 2^n + 1.
cf = derive_closed_form(preset("cullen"))
print("alpha, beta =", cf.alpha, cf.beta, " a, c, b =", cf.a, cf.c, cf.b)

# which n make 3 divide C_n?  exactly p - 1 classes modulo p(p - 1)
print("3 | C_n for n mod 6 in", find_residues(3, 0))

# the valuations themselves, for a first look
n = np.arange(1, 60)
vals = np.array([nu(int(k) * 2 ** int(k) + 1, 3) for k in n])
print("nu_3(C_n), n = 1..59:", vals.tolist())

# each extra power of 3 fixes one more base-3 digit of n inside the class
res = lift(LiftTask(3, 0, 1, 8))
print("digits:", res.digits)
print("least n = 1 (mod 6) with 3^8 | C_n:", res.n_final, "check:", nu(res.n_final * 2**res.n_final + 1, 3))

# push the depth until every class passes 1e58: that caps nu_3(C_n) below 1e58
vb = max_valuation_below(3, 0, 10**58)
print(f"nu_3(C_n) < {vb.k_max} for all n < 1e58")
for n0, w in vb.witnesses:
    print(f"  class {n0}: next n with 3^{vb.k_max} | C_n is {w} (~1e{len(str(w)) - 1})")
