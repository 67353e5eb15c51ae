"""Property suite: every module invariant as an executable, seeded check.

Each check returns {"name", "pass", ...stats}; :func:`verify_suite` runs the
registry in a fixed order and aggregates. Seeds are pinned so the suite is
reproducible run to run.
"""

from __future__ import annotations

import math

import numpy as np

from logdiss.config import SimConfig, VelocitySpec
from logdiss.experiments import bound_constant, run_max_principle
from logdiss.grid import RadialSymbol, SpectralField, apply_multiplier, make_grid
from logdiss.kernels import default_kernel_grid, kernel_of_symbol, l1_norm_certified
from logdiss.pointwise import (
    eval_at,
    frac_laplacian_quadrature,
    lp_dissipation_functional,
    maxpoint_sign_check,
    symmetrized_form_oracle,
)
from logdiss.reports import dumps_json, write_norms_csv
from logdiss.solver import make_velocity, norm_lp, random_band_limited, simulate
from logdiss.symbols import (
    DissipationSpec,
    decompose,
    full_symbol,
    main_term_high,
    main_term_low,
    power_weighted_integral,
    residual_symbol,
    symbol_fractional,
)

__all__ = ["verify_suite", "CHECKS"]

SUITE_SEED = 90210

STANDARD_SPECS = [
    DissipationSpec("A", 0.5, 1.0, 2.0),
    DissipationSpec("A", 1.0, 0.5, 1.5),
    DissipationSpec("A", 1.5, 1.0, 2.0),
    DissipationSpec("A", 2.0, 2.0, 4.0),
    DissipationSpec("A1", 0.7, 1.0, 2.0),
    DissipationSpec("A1", 2.0, 0.5, 3.0),
]

RESIDUAL_TEST_GAMMAS = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0)
RESIDUAL_TEST_BETAS = (0.5, 1.0, 2.0)
RESIDUAL_TEST_LAMBDAS = (1.5, 2.0, 4.0)

# window large enough that the 1/log^2 R tail drift of the residual kernels
# sits near the 1% certification threshold (see notes on the slow specs)
RESIDUAL_CERT_GRID = (2**21, 12800.0)


def check_parseval() -> dict:
    grid = make_grid(1, 256, np.pi)
    grid2 = make_grid(2, 64, 2.0)
    worst = 0.0
    for i in range(100):
        g = grid if i % 2 == 0 else grid2
        f = random_band_limited(g, SUITE_SEED + i)
        phys = np.sum(np.abs(f.physical) ** 2) * g.cell_volume
        spec = np.sum(np.abs(f.spectral * g.cell_volume) ** 2) * g.freq_step**g.dim
        spec /= (2.0 * np.pi) ** g.dim
        worst = max(worst, abs(phys - spec) / phys)
    return {"name": "grid.parseval", "pass": worst <= 1e-10, "worst_rel_err": worst}


def check_multiplier_composition() -> dict:
    grid = make_grid(1, 512, np.pi)
    m1 = RadialSymbol(lambda x: 1.0 / (1.0 + x**2), "m1")
    m2 = RadialSymbol(lambda x: np.sqrt(1.0 + x), "m2")
    worst = 0.0
    for i in range(10):
        f = random_band_limited(grid, SUITE_SEED + 300 + i)
        once = apply_multiplier(apply_multiplier(f, m1), m2).physical
        both = apply_multiplier(f, m1 * m2).physical
        scale = float(np.max(np.abs(both))) or 1.0
        worst = max(worst, float(np.max(np.abs(once - both))) / scale)
    return {"name": "grid.multiplier_composition", "pass": worst <= 1e-10, "worst_rel_err": worst}


def check_annihilates_constants() -> dict:
    grid = make_grid(1, 128, 3.0)
    f = SpectralField.from_physical(grid, np.full(grid.shape, 2.5))
    worst = 0.0
    for spec in STANDARD_SPECS:
        out = apply_multiplier(f, full_symbol(spec)).physical
        worst = max(worst, float(np.max(np.abs(out))))
    return {"name": "grid.annihilates_constants", "pass": worst <= 1e-12, "worst_abs": worst}


def check_roundtrip() -> dict:
    worst = 0.0
    for i in range(20):
        grid = make_grid(1, 256, np.pi) if i % 2 == 0 else make_grid(2, 32, 1.5)
        f = random_band_limited(grid, SUITE_SEED + 600 + i)
        back = SpectralField.from_spectral(grid, f.spectral).physical
        worst = max(worst, float(np.max(np.abs(back - f.physical))) / float(np.max(np.abs(f.physical))))
    return {"name": "grid.roundtrip", "pass": worst <= 1e-12, "worst_rel_err": worst}


def check_decomposition_identity() -> dict:
    xi = np.concatenate([[0.0], np.logspace(-3, 2, 40)])
    worst = 0.0
    for spec in STANDARD_SPECS:
        parts = decompose(spec)
        full = full_symbol(spec)(xi)
        err = np.abs(parts.main(xi) + parts.residual(xi) - full)
        worst = max(worst, float(np.max(err / (1.0 + np.abs(full)))))
    return {"name": "symbols.decomposition_identity", "pass": worst <= 1e-10, "worst_rel_err": worst}


def check_regime_continuity() -> dict:
    xi = np.array([0.3, 1.0, 2.0, 7.5])
    gaps = []
    for eps in (1e-2, 1e-3):
        low = main_term_low(DissipationSpec("A", 1.0, 1.0, 2.0))(xi)
        high = main_term_high(DissipationSpec("A", 1.0 + eps, 1.0, 2.0))(xi)
        gaps.append(float(np.max(np.abs(high - low) / (1.0 + np.abs(low)))))
    ok = gaps[1] < gaps[0] and gaps[0] < 0.1
    return {"name": "symbols.regime_continuity", "pass": ok, "gaps": gaps}


def check_main_low_nonnegative() -> dict:
    xi = np.concatenate([[0.0], np.logspace(-6, 3, 60)])
    worst = 0.0
    for spec in STANDARD_SPECS:
        if spec.regime != "LOW":
            continue
        worst = min(worst, float(np.min(main_term_low(spec)(xi))))
    return {"name": "symbols.main_low_nonnegative", "pass": worst >= -1e-14, "min_value": worst}


def check_quadrature_monotone() -> dict:
    ok = True
    stats = []
    for tol in (1e-6, 1e-8, 1e-10):
        a = power_weighted_integral(lambda t: np.exp(-0.7 * t), 0.0, 3.0, 0.5, tol)
        b = power_weighted_integral(lambda t: np.exp(-0.7 * t), 0.0, 3.0, 0.5, tol / 2.0)
        stats.append(abs(a - b))
        ok = ok and abs(a - b) <= tol * abs(a) + 1e-300
    return {"name": "symbols.quadrature_monotone", "pass": ok, "changes": stats}


def check_large_xi_asymptotics() -> dict:
    ok = True
    ratios_all = {}
    for spec in STANDARD_SPECS:
        if spec.beta == 0.0:
            continue
        parts = decompose(spec)
        xi = np.array([1e3, 1e4, 1e5])
        ratios = full_symbol(spec)(xi) / parts.main(xi)
        gaps = np.abs(ratios - 1.0)
        ok = ok and bool(np.all(gaps < 0.10)) and bool(np.all(np.diff(gaps) < 0))
        ratios_all[f"{spec.variant}:g{spec.gamma}b{spec.beta}l{spec.lam}"] = ratios.tolist()
    return {"name": "symbols.large_xi_asymptotics", "pass": ok, "ratios": ratios_all}


def check_zeroth_moment() -> dict:
    grid = make_grid(1, 2048, 30.0)
    worst = 0.0
    for spec in STANDARD_SPECS:
        m = full_symbol(spec)
        kern = kernel_of_symbol(m, grid)
        mass = float(np.sum(kern.samples) * grid.cell_volume)
        target = float(m(np.array([0.0]))[0])
        worst = max(worst, abs(mass - target) / (1.0 + abs(target)))
    return {"name": "kernels.zeroth_moment", "pass": worst <= 1e-8, "worst_rel_err": worst}


def check_heat_mass() -> dict:
    grid = make_grid(1, 2048, 30.0)
    worst = 0.0
    for spec in STANDARD_SPECS:
        m = full_symbol(spec)
        t = 0.7
        sem = RadialSymbol(lambda x: np.exp(-t * m(x)), "heat")
        kern = kernel_of_symbol(sem, grid)
        mass = float(np.sum(kern.samples) * grid.cell_volume)
        target = math.exp(-t * float(m(np.array([0.0]))[0]))
        worst = max(worst, abs(mass - target) / target)
    return {"name": "kernels.heat_mass", "pass": worst <= 1e-8, "worst_rel_err": worst}


def check_l1_domination() -> dict:
    grid = default_kernel_grid(1)
    estimates = []
    for s in (1.5, 1.0, 0.5):
        m = RadialSymbol(lambda x, s=s: (2.0 + x) ** (-s), f"(2+x)^-{s}")
        est, _ = l1_norm_certified(m, grid)
        estimates.append(est)
    ok = estimates[0] < estimates[1] < estimates[2]
    return {"name": "kernels.l1_domination_monotone", "pass": ok, "estimates": estimates}


def check_residual_l1_boundedness() -> dict:
    n, half_width = RESIDUAL_CERT_GRID
    grid = make_grid(1, n, half_width)
    failures = []
    for g in RESIDUAL_TEST_GAMMAS:
        for b in RESIDUAL_TEST_BETAS:
            for lam in RESIDUAL_TEST_LAMBDAS:
                spec = DissipationSpec("A", g, b, lam)
                est, conv = l1_norm_certified(residual_symbol(spec), grid)
                if not conv:
                    failures.append({"gamma": g, "beta": b, "lambda": lam, "estimate": est})
    return {
        "name": "kernels.residual_l1_boundedness",
        "pass": not failures,
        "n_specs": 63,
        "n_failures": len(failures),
        "failures": failures,
    }


def check_sign_property(n_fields: int = 500) -> dict:
    grid = make_grid(1, 256, np.pi)
    worst = 0.0
    for i in range(n_fields):
        f = random_band_limited(grid, SUITE_SEED + 1000 + i, max_mode=10)
        f_inf = float(np.max(np.abs(f.physical)))
        for s in (0.3, 0.7, 1.0, 1.5, 1.9):
            r = maxpoint_sign_check(f, s)
            worst = min(worst, r.operator_value / f_inf)
    return {"name": "pointwise.sign_property", "pass": worst >= -1e-6, "worst_ratio": worst}


def check_lp_nonneg() -> dict:
    grid = make_grid(1, 256, np.pi)
    worst = 0.0
    for i in range(30):
        f = random_band_limited(grid, SUITE_SEED + 2000 + i, max_mode=12)
        for p in (1.0, 1.5, 2.0, 3.0, 7.0):
            for s in (0.4, 1.0, 1.6):
                val = lp_dissipation_functional(f, symbol_fractional(s), p)
                worst = min(worst, val / norm_lp(f, p) ** p)
    return {"name": "pointwise.lp_nonneg_fractional", "pass": worst >= -1e-8, "worst_ratio": worst}


def check_homogeneity() -> dict:
    grid = make_grid(1, 256, np.pi)
    f = random_band_limited(grid, SUITE_SEED + 3000, max_mode=8)
    scaled = SpectralField.from_physical(grid, 10.0 * f.physical)
    worst = 0.0
    for s in (0.5, 1.3):
        a = maxpoint_sign_check(f, s)
        b = maxpoint_sign_check(scaled, s)
        worst = max(worst, abs(b.operator_value - 10.0 * a.operator_value) / (1.0 + abs(b.operator_value)))
        if a.location != b.location:
            worst = max(worst, 1.0)
    return {"name": "pointwise.homogeneity", "pass": worst <= 1e-9, "worst_rel_err": worst}


def check_rho_consistency() -> dict:
    """Quadrature/spectral ratio is one constant across functions and exponents."""
    grid = make_grid(1, 256, np.pi)
    ratios = []
    for s in (0.3, 0.8, 1.4):
        sym = symbol_fractional(s)
        for i in range(4):
            f = random_band_limited(grid, SUITE_SEED + 3900 + i, max_mode=8)
            transformed = apply_multiplier(f, sym)
            x0 = float(grid.x[int(np.argmax(np.abs(transformed.physical)))])
            spectral = eval_at(transformed, x0)
            ratios.append(frac_laplacian_quadrature(f, x0, s) / spectral)
    spread = (max(ratios) - min(ratios)) / abs(float(np.mean(ratios)))
    return {
        "name": "pointwise.rho_consistency",
        "pass": spread <= 1e-3,
        "spread": spread,
        "measured_rho": float(np.mean(ratios)),
    }


def check_oracle_consistency() -> dict:
    grid = make_grid(1, 256, np.pi)
    s, p = 0.9, 2.0
    ratios = []
    for i in range(10):
        f = random_band_limited(grid, SUITE_SEED + 4000 + i, max_mode=16)
        oracle = symmetrized_form_oracle(f, s, p)
        direct = lp_dissipation_functional(f, symbol_fractional(s), p)
        ratios.append(oracle / direct)
    spread = (max(ratios) - min(ratios)) / (sum(ratios) / len(ratios))
    return {
        "name": "pointwise.oracle_consistency",
        "pass": spread <= 0.05,
        "spread": spread,
        "measured_ratio": sum(ratios) / len(ratios),
    }


def check_tail_estimate() -> dict:
    grid = make_grid(1, 256, np.pi)
    ok = True
    stats = []
    for i in range(5):
        f = random_band_limited(grid, SUITE_SEED + 5000 + i, max_mode=10)
        for s in (1.2, 1.5, 1.8):
            a = grid.half_width / 8.0
            tail_a = symmetrized_form_oracle(f, s, 2.0, min_distance=a)
            tail_2a = symmetrized_form_oracle(f, s, 2.0, min_distance=2.0 * a)
            ratio = tail_2a / tail_a if tail_a > 0 else 0.0
            stats.append(ratio)
            ok = ok and ratio <= 2.0 ** (1.0 - s) * 1.10
    return {"name": "pointwise.tail_estimate", "pass": ok, "ratios": stats}


def check_mean_preservation() -> dict:
    grid = make_grid(2, 64, np.pi)
    spec = DissipationSpec("A", 1.0, 1.0, 2.0, nu=0.5)
    v = make_velocity("STREAM", 1.0, SUITE_SEED, grid)
    theta0 = random_band_limited(grid, SUITE_SEED + 6000)
    mean0 = float(np.mean(theta0.physical))
    series, final = simulate(grid, spec, v, theta0, 0.5, [2.0], sample_every=10)
    mean1 = float(np.mean(final.theta.physical))
    err = abs(mean1 - mean0) / max(abs(mean0), 1e-12)
    return {"name": "solver.mean_preservation", "pass": err <= 1e-8, "rel_drift": err}


def check_dissipation_exactness() -> dict:
    grid = make_grid(1, 256, np.pi)
    spec = DissipationSpec("A", 1.5, 1.0, 2.0, nu=0.8)
    v = make_velocity("ZERO", 0.0, 0, grid)
    theta0 = random_band_limited(grid, SUITE_SEED + 6100)
    series, final = simulate(grid, spec, v, theta0, 1.0, [2.0], sample_every=1000)
    m = full_symbol(spec)(grid.xi_norm)
    exact = np.exp(-spec.nu * 1.0 * m) * theta0.spectral
    err = float(np.max(np.abs(final.theta_hat - exact))) / float(np.max(np.abs(exact)))
    return {"name": "solver.dissipation_exactness", "pass": err <= 1e-12, "rel_err": err}


def check_monotone_refinement() -> dict:
    grid = make_grid(2, 64, np.pi)
    spec = DissipationSpec("A", 1.0, 1.0, 2.0, nu=0.2)
    v = make_velocity("STREAM", 1.0, SUITE_SEED + 1, grid)
    theta0 = random_band_limited(grid, SUITE_SEED + 6200)
    values = []
    for cfl in (0.8, 0.4, 0.2):
        series, _ = simulate(grid, spec, v, theta0, 0.5, [2.0], cfl=cfl, sample_every=10**6)
        values.append(series.norms[2.0][-1])
    change1 = abs(values[1] - values[0])
    change2 = abs(values[2] - values[1])
    ok = change2 <= 4.0 * change1 + 1e-14
    return {"name": "solver.monotone_refinement", "pass": ok, "changes": [change1, change2]}


def check_classical_decay_regression() -> dict:
    grid = make_grid(2, 64, np.pi)
    worst = 0.0
    for g in (0.5, 1.0, 2.0):
        spec = DissipationSpec("FRACTIONAL", g, nu=0.1)
        v = make_velocity("STREAM", 1.0, SUITE_SEED + 2, grid)
        theta0 = random_band_limited(grid, SUITE_SEED + 6300)
        series, _ = simulate(grid, spec, v, theta0, 1.0, [2.0, math.inf], sample_every=5)
        for p in (2.0, math.inf):
            vals = np.asarray(series.norms[p])
            rises = np.diff(vals) / vals[:-1]
            worst = max(worst, float(np.max(rises, initial=0.0)))
    return {"name": "solver.classical_decay_regression", "pass": worst <= 1e-4,
            "worst_rise": worst}


def check_determinism(tmp_dir: str | None = None) -> dict:
    import os
    import tempfile

    cfg = SimConfig(
        dim=2, n=32, half_width=np.pi,
        spec=DissipationSpec("A", 1.0, 1.0, 2.0, nu=0.1),
        velocity=VelocitySpec("STREAM", 1.0, 11), theta_seed=5,
        p_list=(2.0, math.inf), t_final=0.2, sample_every=2,
    )
    outputs = []
    with tempfile.TemporaryDirectory(dir=tmp_dir) as td:
        for run in range(2):
            report, series = run_max_principle(cfg)
            csv_path = os.path.join(td, f"norms_{run}.csv")
            write_norms_csv(series, cfg.p_list, csv_path)
            outputs.append((dumps_json(report.to_dict()), open(csv_path).read()))
    ok = outputs[0] == outputs[1]
    return {"name": "harness.determinism", "pass": ok}


def check_bound_monotonicity() -> dict:
    spec_lo = DissipationSpec("A", 1.5, 1.0, 2.0, nu=0.1)
    spec_hi = DissipationSpec("A", 1.5, 1.0, 2.0, nu=0.3)
    ok = bound_constant(spec_lo, 0.5) < bound_constant(spec_hi, 0.5)
    ok = ok and bound_constant(spec_lo, 0.5) < bound_constant(spec_lo, 0.9)
    return {"name": "harness.bound_monotonicity", "pass": ok}


CHECKS = [
    check_parseval,
    check_multiplier_composition,
    check_annihilates_constants,
    check_roundtrip,
    check_decomposition_identity,
    check_regime_continuity,
    check_main_low_nonnegative,
    check_quadrature_monotone,
    check_large_xi_asymptotics,
    check_zeroth_moment,
    check_heat_mass,
    check_l1_domination,
    check_residual_l1_boundedness,
    check_sign_property,
    check_lp_nonneg,
    check_homogeneity,
    check_rho_consistency,
    check_oracle_consistency,
    check_tail_estimate,
    check_mean_preservation,
    check_dissipation_exactness,
    check_monotone_refinement,
    check_classical_decay_regression,
    check_determinism,
    check_bound_monotonicity,
]


def verify_suite(skip_slow: bool = False) -> dict:
    """Run every property check; failures are data, not exceptions."""
    results = []
    for fn in CHECKS:
        if skip_slow and fn is check_residual_l1_boundedness:
            continue
        try:
            results.append(fn())
        except Exception as exc:  # noqa: BLE001 - suite must complete
            results.append({"name": fn.__name__, "pass": False, "error": str(exc)})
    return {
        "checks": results,
        "n_checks": len(results),
        "n_failed": sum(1 for r in results if not r["pass"]),
        "pass": all(r["pass"] for r in results),
    }
