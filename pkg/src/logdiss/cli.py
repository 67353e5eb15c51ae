"""Command line: symbol tables, kernel reports, simulations, sweeps, verification.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 verification/acceptance failure. Everything flows through flags and JSON
configs; no environment variables are consulted.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from logdiss.config import (
    ConfigError,
    load_config,
    parse_dissipation,
    parse_sim_config,
)
from logdiss.errors import NumericalError
from logdiss.experiments import run_max_principle, run_v_independence, sweep
from logdiss.grid import make_grid
from logdiss.kernels import certified_kernel, default_kernel_grid, positivity_scan
from logdiss.reports import write_json, write_norms_csv
from logdiss.symbols import DissipationSpec, decompose, full_symbol, residual_symbol
from logdiss.verify import verify_suite

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY = 3


def _out_path(args, name: str, override: str | None = None) -> str:
    if override:
        return override
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _require_keys(doc: dict, allowed: set, context: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"{context}: unknown keys {sorted(unknown)}; allowed {sorted(allowed)}")


def cmd_symbol(args) -> int:
    doc = load_config(args.config)
    _require_keys(doc, {"spec", "xi_max", "xi_points"}, "symbol config")
    if "spec" not in doc:
        raise ConfigError("symbol config: missing 'spec'")
    spec = parse_dissipation(doc["spec"])
    xi_max = float(doc.get("xi_max", 50.0))
    xi_points = int(doc.get("xi_points", 512))
    if xi_max <= 0 or xi_points < 2:
        raise ConfigError("symbol config: need xi_max > 0 and xi_points >= 2")
    xi = np.linspace(0.0, xi_max, xi_points)
    parts = decompose(spec)
    full = full_symbol(spec)(xi)
    main = parts.main(xi)
    residual = parts.residual(xi)
    path = _out_path(args, "symbol.csv")
    with open(path, "w") as fh:
        fh.write("xi,full,main,residual\n")
        for row in zip(xi, full, main, residual):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_kernel(args) -> int:
    doc = load_config(args.config)
    allowed = {"spec", "which", "t", "dim", "half_width", "n",
               "gammas", "lambdas", "beta", "nu"}
    _require_keys(doc, allowed, "kernel config")
    which = doc.get("which", "residual")
    dim = int(doc.get("dim", 1))
    if dim not in (1, 2):
        raise ConfigError("kernel config: dim must be 1 or 2")
    default = default_kernel_grid(dim)
    n = int(doc.get("n", default.n))
    half_width = float(doc.get("half_width", default.half_width))
    grid = make_grid(dim, n, half_width)

    if which == "scan":
        gammas = doc.get("gammas")
        lambdas = doc.get("lambdas")
        if not isinstance(gammas, list) or not isinstance(lambdas, list):
            raise ConfigError("kernel scan: 'gammas' and 'lambdas' must be lists")
        beta = float(doc.get("beta", 1.0))
        nu = float(doc.get("nu", 0.0))
        t = float(doc.get("t", 1.0))
        specs = [
            DissipationSpec("A", float(g), beta, float(lam), nu)
            for g in gammas for lam in lambdas
        ]
        reports = positivity_scan(specs, t, grid)
        cells = []
        for spec, rep in zip(specs, reports):
            if isinstance(rep, Exception):
                cells.append({"gamma": spec.gamma, "lambda": spec.lam, "error": str(rep)})
            else:
                cells.append({
                    "gamma": spec.gamma,
                    "lambda": spec.lam,
                    "t": rep.t,
                    "min_value": rep.min_value,
                    "negative_mass_fraction": rep.negative_mass_fraction,
                    "l1_estimate": rep.l1_estimate,
                })
        path = _out_path(args, "positivity_scan.json")
        write_json({
            "beta": beta, "t": t, "gammas": [float(g) for g in gammas],
            "lambdas": [float(lam) for lam in lambdas], "cells": cells,
        }, path)
        print(f"wrote {path}")
        return EXIT_OK

    if "spec" not in doc:
        raise ConfigError("kernel config: missing 'spec'")
    spec = parse_dissipation(doc["spec"])
    if which == "residual":
        sym = residual_symbol(spec)
    elif which == "full":
        sym = full_symbol(spec)
    elif which == "heat":
        t = float(doc.get("t", 1.0))
        m = full_symbol(spec)
        from logdiss.grid import RadialSymbol

        sym = RadialSymbol(lambda xi: np.exp(-t * m(xi)), f"exp(-{t}*symbol)")
    else:
        raise ConfigError(f"kernel config: which must be residual|full|heat|scan, got {which!r}")

    kern = certified_kernel(sym, grid)
    peak = float(np.max(np.abs(kern.samples)))
    tol = 1e-9 * peak
    if kern.min_value >= -tol:
        nmf = 0.0
    else:
        neg = kern.samples < 0
        nmf = float(np.sum(np.abs(kern.samples[neg])) / np.sum(np.abs(kern.samples)))
    csv_path = _out_path(args, "kernel_profile.csv")
    if dim == 1:
        xs = kern.grid.x
        with open(csv_path, "w") as fh:
            fh.write("x,K\n")
            for x, k in zip(xs, kern.samples):
                fh.write(f"{x:.17g},{k:.17g}\n")
    else:
        xs = kern.grid.x
        mid = kern.grid.n // 2
        with open(csv_path, "w") as fh:
            fh.write("x,K\n")
            for x, k in zip(xs, kern.samples[:, mid]):
                fh.write(f"{x:.17g},{k:.17g}\n")
    json_path = _out_path(args, "kernel_report.json")
    write_json({
        "which": which,
        "l1_estimate": kern.l1_estimate,
        "min_value": kern.min_value,
        "negative_mass_fraction": nmf,
        "converged": kern.converged,
        "history": [list(h) for h in kern.history],
    }, json_path)
    print(f"wrote {csv_path} and {json_path}")
    return EXIT_OK


def _apply_seed_override(cfg, seed: int | None):
    if seed is None:
        return cfg
    from dataclasses import replace

    return replace(cfg, theta_seed=seed, velocity=replace(cfg.velocity, seed=seed))


def cmd_simulate(args) -> int:
    cfg = parse_sim_config(load_config(args.config))
    cfg = _apply_seed_override(cfg, args.seed)
    report, series = run_max_principle(cfg)
    csv_path = _out_path(args, "norms.csv", cfg.out_csv)
    json_path = _out_path(args, "report.json", cfg.out_json)
    write_norms_csv(series, cfg.p_list, csv_path)
    write_json(report.to_dict(), json_path)
    print(f"wrote {csv_path} and {json_path}")
    if report.error is not None:
        print(f"numerical failure: {report.error}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_sweep(args) -> int:
    doc = load_config(args.config)
    _require_keys(doc, {"base", "axes", "cap"}, "sweep config")
    if "base" not in doc or "axes" not in doc:
        raise ConfigError("sweep config: need 'base' and 'axes'")
    base = parse_sim_config(doc["base"])
    base = _apply_seed_override(base, args.seed)
    axes = doc["axes"]
    if not isinstance(axes, dict):
        raise ConfigError("sweep config: 'axes' must be an object")
    cap = int(doc.get("cap", 256))
    result = sweep(base, axes, cap=cap, threads=args.threads)
    path = _out_path(args, "sweep.json")
    write_json(result, path)
    print(f"wrote {path}")
    print(f"cells: {len(result['cells'])}  max growth: {result['max_growth_constant']!r}  "
          f"all pass: {result['all_pass']}")
    return EXIT_OK if result["all_pass"] else EXIT_VERIFY


def cmd_independence(args) -> int:
    doc = load_config(args.config)
    _require_keys(doc, {"base", "amplitudes"}, "independence config")
    if "base" not in doc or "amplitudes" not in doc:
        raise ConfigError("independence config: need 'base' and 'amplitudes'")
    base = parse_sim_config(doc["base"])
    base = _apply_seed_override(base, args.seed)
    amps = doc["amplitudes"]
    if not isinstance(amps, list) or len(amps) < 1:
        raise ConfigError("independence config: 'amplitudes' must be a non-empty list")
    result = run_v_independence(base, [float(a) for a in amps])
    path = _out_path(args, "independence.json")
    write_json(result, path)
    print(f"wrote {path}")
    print(f"uniform: {result['uniform']}")
    return EXIT_OK if result["pass"] else EXIT_VERIFY


def cmd_verify(args) -> int:
    result = verify_suite(skip_slow=args.skip_slow)
    path = _out_path(args, "verify.json")
    write_json(result, path)
    for check in result["checks"]:
        status = "PASS" if check["pass"] else "FAIL"
        print(f"[{status}] {check['name']}")
    print(f"wrote {path}")
    print(f"{result['n_checks'] - result['n_failed']}/{result['n_checks']} checks passed")
    return EXIT_OK if result["pass"] else EXIT_VERIFY


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="logdiss",
        description="Log-modulated fractional dissipation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--threads", type=int, default=1, help="worker threads")
        p.add_argument("--seed", type=int, default=None, help="override config seeds")

    p = sub.add_parser("symbol", help="dump (xi, full, main, residual) CSV table")
    common(p)
    p.set_defaults(fn=cmd_symbol)

    p = sub.add_parser("kernel", help="kernel profile CSV + JSON report, or positivity scan")
    common(p)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("simulate", help="run one transport-diffusion experiment")
    common(p)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("sweep", help="Cartesian parameter sweep of max-principle runs")
    common(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("independence", help="growth-constant uniformity across |v|")
    common(p)
    p.set_defaults(fn=cmd_independence)

    p = sub.add_parser("verify", help="run the full property suite")
    common(p, needs_config=False)
    p.add_argument("--skip-slow", action="store_true",
                   help="skip the long residual-kernel certification check")
    p.set_defaults(fn=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
