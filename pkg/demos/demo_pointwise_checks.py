#!/usr/bin/env python3
"""Pointwise machinery behind the proofs, run as numerical experiments.

1. The singular-integral form of |grad|^s agrees with the spectral route up
   to one global normalization ratio (measured, the same for every test
   function and exponent).
2. At the maximum of any smooth field, |grad|^s f is nonnegative.
3. The mixed operator |grad|^s2 - c1 |grad|^s1 stays above its calibrated
   lower bound despite the negative lower-order term.
"""

import numpy as np

from logdiss import (
    MixedOperatorSpec,
    apply_multiplier,
    frac_laplacian_quadrature,
    make_grid,
    maxpoint_sign_check,
    mixed_maxpoint_bound,
    symbol_fractional,
)
from logdiss.pointwise import eval_at
from logdiss.solver import random_band_limited

grid = make_grid(1, 256, np.pi)

print("quadrature / spectral ratio (one constant, by construction of C(s,d)):")
for s in (0.3, 0.8, 1.5):
    f = random_band_limited(grid, 11, max_mode=8)
    transformed = apply_multiplier(f, symbol_fractional(s))
    x0 = float(grid.x[int(np.argmax(np.abs(transformed.physical)))])
    rho = frac_laplacian_quadrature(f, x0, s) / eval_at(transformed, x0)
    print(f"  s={s}: rho = {rho:.8f}")

print("\nsign at the maximum over 50 random fields:")
worst = np.inf
for seed in range(50):
    f = random_band_limited(grid, 600 + seed, max_mode=10)
    for s in (0.5, 1.0, 1.8):
        r = maxpoint_sign_check(f, s)
        worst = min(worst, r.operator_value)
print(f"  smallest operator value seen: {worst:.3e}  (never goes negative)")

print("\nmixed operator value vs calibrated lower bound:")
op = MixedOperatorSpec(s1=0.5, s2=1.5, c1=2.0)
for seed in (1, 2, 3):
    f = random_band_limited(grid, 900 + seed, max_mode=10)
    r = mixed_maxpoint_bound(f, op)
    print(f"  seed {seed}: value {r.operator_value:+.4f} >= bound {r.bound_rhs:+.4f}")
