#!/usr/bin/env python3
"""One-time calibration of the mixed-operator bound constants.

Runs seeded suites of random band-limited fields against the three bound
forms whose dimensional constants are only known to exist, records the worst
observed violation ratio, and prints the values to paste into
src/logdiss/calibration.py (max ratio * 1.25 safety margin, rounded up to
3 decimals).

Usage: python scripts/calibrate_constants.py [n_samples]
"""

import sys

import numpy as np

sys.path.insert(0, "src")

from logdiss.grid import RadialSymbol, make_grid  # noqa: E402
from logdiss.pointwise import (  # noqa: E402
    eval_at,
    lp_dissipation_functional,
    refine_argmax,
)
from logdiss.grid import apply_multiplier  # noqa: E402
from logdiss.solver import norm_lp, random_band_limited  # noqa: E402

MASTER_SEED = 20240614


def mixed_value_at_max(f, s1, s2, c1):
    idx, refined = refine_argmax(f)
    sym = RadialSymbol(lambda x: x**s2 - c1 * x**s1, "mixed")
    return eval_at(apply_multiplier(f, sym), refined)


def main(n_samples: int = 1000) -> None:
    rng = np.random.default_rng(MASTER_SEED)
    g1 = make_grid(1, 256, np.pi)
    g2 = make_grid(2, 64, np.pi)
    worst_gen = worst_adj = worst_lp = 0.0

    for i in range(n_samples):
        seed = int(rng.integers(2**31))
        two_d = i % 10 == 9
        grid = g2 if two_d else g1
        f = random_band_limited(grid, seed, max_mode=6 if two_d else 10)
        f_inf = float(np.max(np.abs(f.physical)))
        c1 = float(rng.choice([0.1, 0.5, 1.0, 3.0, 10.0]))

        # general-exponent max-point form
        s2 = float(rng.uniform(0.05, 1.95))
        s1 = float(rng.uniform(0.5 * s2, 0.98 * s2))
        val = mixed_value_at_max(f, s1, s2, c1)
        denom = c1 * f_inf * (2 - s1) * (1 + (s2 * (2 - s2)) ** (-s1 / (s2 - s1)))
        if val < 0:
            worst_gen = max(worst_gen, -val / denom)

        # adjacent family s1 = s2 - 1
        s2a = float(rng.uniform(1.05, 1.95))
        val = mixed_value_at_max(f, s2a - 1.0, s2a, c1)
        denom = c1 * f_inf * (1 + (2 - s2a) ** (1 - s2a))
        if val < 0:
            worst_adj = max(worst_adj, -val / denom)

        # L^p functional form, L = |grad|^s - c1 (gamma - s) |grad|^(s-1)
        gam = float(rng.uniform(1.05, 2.0))
        s = float(rng.uniform(1.0 + 1e-3, gam))
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0, 7.0]))
        sym = RadialSymbol(
            lambda x, s=s, c1=c1, gam=gam: x**s - c1 * (gam - s) * x ** (s - 1.0), "L"
        )
        val = lp_dissipation_functional(f, sym, p)
        if val < 0:
            worst_lp = max(worst_lp, -val / (c1 * norm_lp(f, p) ** p))

    margin = 1.25
    print(f"samples: {n_samples}  (master seed {MASTER_SEED})")
    print(f"worst general ratio:  {worst_gen:.6f}  ->  MIXED_BOUND_GENERAL_CONST = {np.ceil(worst_gen * margin * 1000) / 1000}")
    print(f"worst adjacent ratio: {worst_adj:.6f}  ->  MIXED_BOUND_ADJACENT_CONST = {np.ceil(worst_adj * margin * 1000) / 1000}")
    print(f"worst L^p ratio:      {worst_lp:.6f}  ->  LP_MIXED_BOUND_CONST = {np.ceil(worst_lp * margin * 1000) / 1000}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1000)
