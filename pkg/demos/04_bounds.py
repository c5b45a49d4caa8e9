"""The explicit bounds for Cullen numbers with S = {2, 3, 5, 7}."""
import math

import numpy as np

from cullen_sunit import bound_report, preset
from cullen_sunit.bounds import prime_pi_and_M, sieve

rep = bound_report(preset("cullen"), 7, 1)
print("\n".join(rep.lines()))

# pi(X) against 1.25 X / log X on a range
X = np.arange(11, 2001)
pi = np.cumsum(sieve(2000))[X]
ratio = pi / (1.25 * X / np.log(X))
print("max pi(X) / (1.25 X / log X) on [11, 2000]:", ratio.max().round(4), "at X =", X[ratio.argmax()])
print("pi(113) =", prime_pi_and_M(113)[0], " 1.25*113/log 113 =", round(1.25 * 113 / math.log(113), 3))
