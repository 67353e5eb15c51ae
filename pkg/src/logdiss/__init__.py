"""Spectral toolkit for log-modulated fractional dissipation operators.

The package provides periodic spectral grids and Fourier multipliers
(:mod:`logdiss.grid`), the dissipation symbols and their main-term /
residual decomposition (:mod:`logdiss.symbols`), real-space kernel
diagnostics (:mod:`logdiss.kernels`), singular-integral and max-point
operators (:mod:`logdiss.pointwise`), a dealiased pseudo-spectral
transport-diffusion solver (:mod:`logdiss.solver`), and an experiment
harness with a ``logdiss`` command line (:mod:`logdiss.experiments`,
:mod:`logdiss.cli`).
"""

from logdiss.errors import ConfigError, NumericalError, QuadratureError
from logdiss.grid import PeriodicGrid, RadialSymbol, SpectralField, apply_multiplier, make_grid
from logdiss.symbols import (
    DecompositionResult,
    DissipationSpec,
    decompose,
    full_symbol,
    gamma_fn,
    lower_incomplete_gamma,
    main_term_high,
    main_term_low,
    residual_symbol,
    residual_three_term,
    symbol_a,
    symbol_a1,
    symbol_fractional,
    verify_log_identity,
)
from logdiss.kernels import (
    PositivityReport,
    RealKernel,
    heat_kernel,
    kernel_of_symbol,
    l1_norm_certified,
    positivity_scan,
)
from logdiss.pointwise import (
    MaxPointResult,
    MixedOperatorSpec,
    frac_constant,
    frac_laplacian_quadrature,
    lp_dissipation_functional,
    maxpoint_sign_check,
    mixed_maxpoint_bound,
    symmetrized_form_oracle,
)
from logdiss.solver import (
    NormSeries,
    SimState,
    VelocityField,
    make_velocity,
    norm_lp,
    random_band_limited,
    simulate,
    step,
)
from logdiss.config import SimConfig
from logdiss.experiments import (
    ExperimentReport,
    bound_constant,
    run_max_principle,
    run_v_independence,
    sweep,
)

__version__ = "0.1.0"
