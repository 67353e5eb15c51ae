#!/usr/bin/env python3
"""Scan semigroup-kernel positivity over the (gamma, lambda) plane.

The kernel of exp(-t |xi|^g / log^b(lam + |xi|)) is known to be positive
for large lam at small gamma; outside that regime it can go negative, which
is exactly why the generalized maximum principle needs its exponential
factor. The scan reports the negative-mass fraction per cell; no direction
is asserted, the numbers are the data.
"""

import numpy as np

from logdiss import DissipationSpec, make_grid
from logdiss.kernels import positivity_scan

grid = make_grid(1, 2**13, 200.0)
gammas = (0.25, 0.5, 1.0, 1.5)
lambdas = (1.5, 2.0, 8.0, float(np.exp(8.0)))
specs = [DissipationSpec("A", g, 1.0, lam) for g in gammas for lam in lambdas]

reports = positivity_scan(specs, t=1.0, grid=grid)

print("negative mass fraction of the semigroup kernel at t = 1, beta = 1")
header = "gamma \\ lam " + "".join(f"{lam:>12.4g}" for lam in lambdas)
print(header)
it = iter(reports)
for g in gammas:
    row = [f"{g:<11.2f}"]
    for _ in lambdas:
        rep = next(it)
        row.append(f"{rep.negative_mass_fraction:12.3e}")
    print(" ".join(row))

print("\nlam = e^8 sits inside the classically positive regime; small lam at")
print("larger gamma shows measurable negative mass.")
