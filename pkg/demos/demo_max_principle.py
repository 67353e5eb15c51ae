#!/usr/bin/env python3
"""One full maximum-principle experiment, end to end.

Advects a random band-limited scalar with a divergence-free stirring field
under log-modulated dissipation, certifies the empirical growth rate of
each norm, and compares it against the assembled theoretical bound
nu * (residual kernel L^1 + lambda-correction).
"""

import math

from logdiss.config import parse_sim_config
from logdiss.experiments import run_max_principle

config = parse_sim_config({
    "dim": 2,
    "n": 128,
    "half_width": math.pi,
    "spec": {"variant": "A", "gamma": 1.5, "beta": 1.0, "lambda": 2.0, "nu": 0.1},
    "velocity": {"kind": "STREAM", "amplitude": 1.0, "seed": 7},
    "theta_seed": 3,
    "p_list": [1.0, 2.0, "inf"],
    "t_final": 2.0,
    "sample_every": 5,
})

report, series = run_max_principle(config)

print(f"operator: variant A, gamma={config.spec.gamma}, beta={config.spec.beta}, "
      f"lam={config.spec.lam}, nu={config.spec.nu}")
print(f"residual kernel L1 estimate: {report.residual_l1_estimate:.4f} "
      f"(windowed certification converged: {report.residual_l1_converged})")
print(f"assembled growth bound:      {report.bound_constant:.4f}")
print()
print(f"{'p':>5}  {'certified growth rate':>22}")
for p, rate in report.growth_constant.items():
    print(f"{p:>5}  {rate:22.5f}")
print()
verdict = "holds" if report.passed else "violated"
print(f"maximum principle {verdict}: every rate is below the bound "
      f"(negative rates mean the norms decayed, consistent with the")
print("conjecture that the sharp constant is zero).")
