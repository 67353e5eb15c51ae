"""Dissipation symbols and their main-term / residual decomposition.

The full operators act by the radial multipliers

    A:          |xi|^gamma / log^beta(lambda + |xi|)
    A1:         |xi|^gamma / log^beta(lambda + |xi|^2)
    FRACTIONAL: |xi|^gamma
    NONE:       1

For beta > 0 the A and A1 symbols split into a weighted integral of pure
fractional symbols (the "main term") plus a smooth residual multiplier whose
real-space kernel is integrable. The main term has a closed form in terms of
the lower incomplete gamma function; the residual is defined by subtraction,
which keeps the decomposition exact by construction. An independent
assembly of the residual from its three explicit integral pieces is provided
as a cross-check (:func:`residual_three_term`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from logdiss.errors import QuadratureError
from logdiss.grid import RadialSymbol

__all__ = [
    "DissipationSpec",
    "DecompositionResult",
    "gamma_fn",
    "lower_incomplete_gamma",
    "symbol_a",
    "symbol_a1",
    "symbol_fractional",
    "full_symbol",
    "main_term_low",
    "main_term_high",
    "residual_symbol",
    "residual_three_term",
    "decompose",
    "verify_log_identity",
    "power_weighted_integral",
]

VARIANTS = ("A", "A1", "FRACTIONAL", "NONE")

QUAD_RELTOL = 1e-10

# hyp1f1 argument beyond which the asymptotic expansion is used instead
_HYP_ARG_MAX = 600.0


@dataclass(frozen=True)
class DissipationSpec:
    """Operator parameters with the standing admissibility hypotheses.

    ``lam`` is the logarithm shift (must exceed 1); ``nu`` is the viscosity
    coefficient in front of the operator. ``FRACTIONAL`` ignores beta and
    lam; ``NONE`` (identity multiplier) ignores everything but nu.
    """

    variant: str
    gamma: float = 0.0
    beta: float = 0.0
    lam: float = 2.0
    nu: float = 0.0

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not 0.0 <= self.gamma <= 2.0:
            raise ValueError(f"gamma must be in [0, 2], got {self.gamma}")
        if not self.nu >= 0.0:
            raise ValueError(f"nu must be >= 0, got {self.nu}")
        if self.variant in ("A", "A1"):
            if not self.beta >= 0.0:
                raise ValueError(f"beta must be >= 0, got {self.beta}")
            if not self.lam > 1.0:
                raise ValueError(f"lam must be > 1, got {self.lam}")

    @property
    def regime(self) -> str:
        """LOW covers A with gamma <= 1 and all of A1; HIGH is A with gamma > 1."""
        if self.variant == "A" and self.gamma > 1.0:
            return "HIGH"
        return "LOW"


def gamma_fn(z: float) -> float:
    """Gamma function on the real line, rejecting the poles z = 0, -1, -2, ..."""
    z = float(z)
    if z <= 0.0 and z == np.floor(z):
        raise ValueError(f"Gamma pole at z = {z}")
    return float(special.gamma(z))


def lower_incomplete_gamma(a: float, x) -> np.ndarray | float:
    """Lower incomplete gamma integral, continued to x < 0 along the real line.

    For x >= 0 this is the usual int_0^x t^(a-1) e^(-t) dt. For x < 0 the
    value is -int_0^|x| u^(a-1) e^u du, the real continuation obtained by
    running the integral backwards through the origin (for a = 1 both
    branches give 1 - e^(-x)).
    """
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    pos = x >= 0
    if np.any(pos):
        out[pos] = special.gamma(a) * special.gammainc(a, x[pos])
    if np.any(~pos):
        # -int_0^|x| u^(a-1) e^u du = -(|x|^a / a) * M(a, a+1, |x|)
        ax = np.abs(x[~pos])
        out[~pos] = -(ax**a / a) * _hyp1f1_safe(a, ax)
    return float(out[0]) if scalar else out


def _hyp1f1_safe(b: float, x: np.ndarray) -> np.ndarray:
    """M(b, b+1, x) for x >= 0 with an asymptotic branch for large x.

    For x -> +inf, M(b, b+1, x) ~ b e^x x^(-1) sum_k (1-b)_k / x^k; callers
    in this module always multiply by a factor of size e^(-x), so returning
    the product through np.exp is safe up to x around 1400.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x <= _HYP_ARG_MAX
    if np.any(small):
        out[small] = special.hyp1f1(b, b + 1.0, x[small])
    if np.any(~small):
        xl = x[~small]
        series = np.ones_like(xl)
        term = np.ones_like(xl)
        for k in range(1, 8):
            term = term * (k - b) / xl
            series = series + term
        out[~small] = b * np.exp(xl) / xl * series
    return out


def symbol_fractional(s: float) -> RadialSymbol:
    """|xi|^s for s in [0, 2] (s = 0 gives the identity multiplier)."""
    if not 0.0 <= s <= 2.0:
        raise ValueError(f"s must be in [0, 2], got {s}")
    if s == 0.0:
        return RadialSymbol.constant(1.0, "|xi|^0")
    return RadialSymbol(lambda xi: xi**s, f"|xi|^{s}")


def symbol_a(spec: DissipationSpec) -> RadialSymbol:
    """|xi|^gamma / log^beta(lam + |xi|)."""
    if spec.variant != "A":
        raise ValueError(f"symbol_a requires variant A, got {spec.variant}")
    g, b, lam = spec.gamma, spec.beta, spec.lam

    def fn(xi):
        return xi**g / np.log(lam + xi) ** b

    return RadialSymbol(fn, f"A(gamma={g}, beta={b}, lam={lam})")


def symbol_a1(spec: DissipationSpec) -> RadialSymbol:
    """|xi|^gamma / log^beta(lam + |xi|^2)."""
    if spec.variant != "A1":
        raise ValueError(f"symbol_a1 requires variant A1, got {spec.variant}")
    g, b, lam = spec.gamma, spec.beta, spec.lam

    def fn(xi):
        return xi**g / np.log(lam + xi**2) ** b

    return RadialSymbol(fn, f"A1(gamma={g}, beta={b}, lam={lam})")


def full_symbol(spec: DissipationSpec) -> RadialSymbol:
    """The multiplier of the dissipation operator for any variant."""
    if spec.variant == "A":
        return symbol_a(spec)
    if spec.variant == "A1":
        return symbol_a1(spec)
    if spec.variant == "FRACTIONAL":
        return symbol_fractional(spec.gamma)
    return RadialSymbol.constant(1.0, "identity")


def _main_low_values(spec: DissipationSpec, xi: np.ndarray) -> np.ndarray:
    """Closed-form main term, LOW regime.

    Variant A:  (1/Gamma(beta)) int_0^gamma tau^(beta-1) |xi|^(gamma-tau) dtau
    Variant A1: same with |xi| -> |xi|^2, gamma -> gamma/2, giving exactly
    2^(-beta) times the variant-A value at every xi.

    Writing L = log|xi|, the integral is |xi|^gamma (gamma^beta / beta)
    M(beta, beta+1, -gamma L); the Kummer form is valid for both signs of L
    (the incomplete-gamma form would need a branch cut at |xi| < 1).
    """
    g, b = spec.gamma, spec.beta
    if g == 0.0 or b == 0.0:
        # empty integration range / degenerate weight
        return np.zeros_like(xi)
    out = np.zeros_like(xi)
    pos = xi > 0
    if np.any(pos):
        x = xi[pos]
        ell = np.log(x)
        arg = -g * ell
        vals = np.empty_like(x)
        hot = arg > _HYP_ARG_MAX  # |xi| < e^(-600/gamma)
        if np.any(~hot):
            vals[~hot] = x[~hot] ** g * (g**b / b) * special.hyp1f1(b, b + 1.0, arg[~hot])
        if np.any(hot):
            # x^g e^(g|L|) = 1 for L < 0; only the algebraic Kummer tail survives
            al = np.abs(ell[hot])
            series = np.ones_like(al)
            term = np.ones_like(al)
            for k in range(1, 8):
                term = term * (k - b) / (g * al)
                series = series + term
            vals[hot] = g ** (b - 1.0) / al * series
        out[pos] = vals / gamma_fn(b)
    scale = 2.0 ** (-b) if spec.variant == "A1" else 1.0
    return scale * out


def main_term_low(spec: DissipationSpec) -> RadialSymbol:
    """Weighted fractional-symbol integral, LOW regime (A: gamma<=1, A1: gamma<=2).

    For beta = 0 the weight degenerates (1/Gamma(0) = 0) and the
    decomposition collapses to main = full symbol, residual = 0: that is the
    classical pure-fractional case, handled by the caller via
    :func:`decompose`.
    """
    if spec.variant not in ("A", "A1"):
        raise ValueError("main_term_low applies to variants A and A1")
    if spec.variant == "A" and spec.gamma > 1.0:
        raise ValueError("variant A with gamma > 1 is the HIGH regime")
    if spec.beta == 0.0:
        raise ValueError("beta = 0 has no integral main term; use decompose()")
    return RadialSymbol(
        lambda xi: _main_low_values(spec, xi),
        f"main_low({spec.variant}, gamma={spec.gamma}, beta={spec.beta})",
    )


def _main_high_values(spec: DissipationSpec, xi: np.ndarray) -> np.ndarray:
    """Closed-form main term, HIGH regime (variant A, 1 < gamma <= 2).

    Equals the LOW-regime integral over [0, gamma] minus the first-order
    correction lam * (1/Gamma(beta)) int_0^(gamma-1) tau^beta
    |xi|^(gamma-tau-1) dtau.
    """
    g, b, lam = spec.gamma, spec.beta, spec.lam
    base = _main_low_values(DissipationSpec("A", g, b, lam), xi)
    a = g - 1.0
    if a == 0.0:
        return base
    corr = np.zeros_like(xi)
    pos = xi > 0
    if np.any(pos):
        x = xi[pos]
        ell = np.log(x)
        # x^(g-1) * int_0^a tau^b e^(-ell tau) dtau, stable for both signs of ell
        arg = -a * ell
        hot = arg > _HYP_ARG_MAX
        vals = np.empty_like(x)
        if np.any(~hot):
            vals[~hot] = x[~hot] ** a * (a ** (b + 1.0) / (b + 1.0)) * special.hyp1f1(
                b + 1.0, b + 2.0, arg[~hot]
            )
        if np.any(hot):
            al = np.abs(ell[hot])
            series = np.ones_like(al)
            term = np.ones_like(al)
            for k in range(1, 8):
                term = term * (k - (b + 1.0)) / (a * al)
                series = series + term
            vals[hot] = a**b / al * series
        corr[pos] = (lam / gamma_fn(b)) * vals
    return base - corr


def main_term_high(spec: DissipationSpec) -> RadialSymbol:
    """Main term with the first-order negative correction (A, 1 < gamma <= 2)."""
    if spec.variant != "A" or not spec.gamma > 1.0:
        raise ValueError("main_term_high requires variant A with gamma > 1")
    if spec.beta == 0.0:
        raise ValueError("beta = 0 has no integral main term; use decompose()")
    return RadialSymbol(
        lambda xi: _main_high_values(spec, xi),
        f"main_high(gamma={spec.gamma}, beta={spec.beta}, lam={spec.lam})",
    )


@dataclass(frozen=True)
class DecompositionResult:
    """Main term + residual split of a dissipation symbol.

    ``main(xi) + residual(xi)`` reproduces the full symbol exactly (the
    residual is defined by subtraction). ``c_beta`` is the weight
    normalization 1/Gamma(beta) (0 when beta = 0, where the split
    degenerates to main = full).
    """

    main: RadialSymbol
    residual: RadialSymbol
    regime: str
    c_beta: float


def decompose(spec: DissipationSpec) -> DecompositionResult:
    """Split the full symbol into main term and residual, all variants.

    FRACTIONAL and beta = 0 collapse to main = full, residual = 0 (classical
    case). NONE is treated like the gamma = 0 endpoint: the whole operator
    is the integrable-kernel part, so main = 0 and residual = full.
    """
    full = full_symbol(spec)
    if spec.variant == "NONE":
        return DecompositionResult(
            main=RadialSymbol.constant(0.0, "main(NONE)"),
            residual=full,
            regime="LOW",
            c_beta=0.0,
        )
    if spec.variant == "FRACTIONAL" or spec.beta == 0.0:
        return DecompositionResult(
            main=full,
            residual=RadialSymbol.constant(0.0, "residual(classical)"),
            regime=spec.regime,
            c_beta=0.0,
        )
    if spec.regime == "HIGH":
        main = main_term_high(spec)
    else:
        main = main_term_low(spec)
    residual = RadialSymbol(
        lambda xi: full(xi) - main(xi),
        f"residual({spec.variant}, gamma={spec.gamma}, beta={spec.beta}, lam={spec.lam})",
    )
    return DecompositionResult(main=main, residual=residual, regime=spec.regime,
                               c_beta=1.0 / gamma_fn(spec.beta))


def residual_symbol(spec: DissipationSpec) -> RadialSymbol:
    """Residual multiplier P = full - main for the spec's regime."""
    return decompose(spec).residual


def power_weighted_integral(g, a: float, b: float, beta: float,
                            reltol: float = QUAD_RELTOL) -> float:
    """Adaptive quadrature of int_a^b tau^(beta-1) g(tau) dtau.

    The endpoint weight tau^(beta-1) is flattened by the substitution
    u = tau^beta when a = 0 and beta < 1, after which the integrand is
    smooth and plain adaptive quadrature applies. Raises
    :class:`QuadratureError` with the achieved error estimate when the
    requested relative tolerance is not met.
    """
    if b <= a:
        return 0.0
    if a == 0.0 and beta < 1.0:
        val, err = integrate.quad(
            lambda u: g(u ** (1.0 / beta)) / beta,
            0.0, b**beta, epsabs=0.0, epsrel=reltol, limit=200,
        )
    else:
        val, err = integrate.quad(
            lambda t: t ** (beta - 1.0) * g(t),
            a, b, epsabs=0.0, epsrel=reltol, limit=200,
        )
    if abs(val) > 0 and err > 10.0 * reltol * abs(val) + 1e-300:
        raise QuadratureError(
            f"quadrature achieved relative error {err / abs(val):.2e} "
            f"(requested {reltol:.1e})",
            achieved=err,
        )
    return val


def _tail_integral(xi: float, gamma: float, beta: float, lam: float,
                   reltol: float = QUAD_RELTOL) -> float:
    """(1/Gamma(beta)) int_gamma^inf tau^(beta-1) (lam+xi)^(gamma-tau) dtau.

    The integrand decays like (lam+xi)^(-tau) with lam > 1, so truncation at
    tau_max = gamma + (60 + 10 max(beta-1, 0)) / log(lam+xi) leaves a
    remainder below e^(-60) of the retained integrand scale.
    """
    w = np.log(lam + xi)
    tau_max = gamma + (60.0 + 10.0 * max(beta - 1.0, 0.0)) / w
    base = (lam + xi) ** gamma
    val = power_weighted_integral(
        lambda t: base * np.exp(-w * t), gamma, tau_max, beta, reltol
    )
    return val / gamma_fn(beta)


def residual_three_term(spec: DissipationSpec) -> RadialSymbol:
    """Residual assembled from its three explicit pieces (A, 0 <= gamma <= 1).

    piece 1: (1/Gamma(beta)) int_0^gamma tau^(beta-1)
             [(lam+|xi|)^(gamma-tau) - |xi|^(gamma-tau)] dtau
    piece 2: (1/Gamma(beta)) int_gamma^inf tau^(beta-1) (lam+|xi|)^(gamma-tau) dtau
    piece 3: [|xi|^gamma - (lam+|xi|)^gamma] / log^beta(lam+|xi|)

    All integrals run through the adaptive quadrature contract, making this
    an independent cross-check of the subtraction-defined residual.
    """
    if spec.variant != "A" or spec.gamma > 1.0:
        raise ValueError("residual_three_term covers variant A with gamma <= 1")
    if spec.beta == 0.0:
        raise ValueError("beta = 0 has a degenerate decomposition; residual is 0")
    g, b, lam = spec.gamma, spec.beta, spec.lam
    cb = 1.0 / gamma_fn(b)

    def one(x: float) -> float:
        if g > 0.0:
            diff = power_weighted_integral(
                lambda t: (lam + x) ** (g - t) - x ** (g - t), 0.0, g, b
            )
        else:
            diff = 0.0
        tail = _tail_integral(x, g, b, lam)
        log_term = (x**g - (lam + x) ** g) / np.log(lam + x) ** b
        return cb * diff + tail + log_term

    def fn(xi):
        flat = np.atleast_1d(xi).ravel()
        out = np.array([one(float(x)) for x in flat])
        return out.reshape(np.shape(xi))

    return RadialSymbol(fn, f"residual_3term(gamma={g}, beta={b}, lam={lam})")


def verify_log_identity(beta: float, lam: float, xi_norm: float) -> float:
    """Relative error of the subordination identity for the log symbol.

    Compares (1/Gamma(beta)) int_0^inf tau^(beta-1) (lam+|xi|)^(-tau) dtau
    against log^(-beta)(lam+|xi|) by adaptive quadrature and returns
    |quadrature - closed| / closed.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    if not lam > 1:
        raise ValueError("lam must exceed 1")
    w = np.log(lam + xi_norm)
    tau_max = (60.0 + 10.0 * max(beta - 1.0, 0.0)) / w
    quad_val = power_weighted_integral(
        lambda t: np.exp(-w * t), 0.0, tau_max, beta, QUAD_RELTOL
    ) / gamma_fn(beta)
    closed = w ** (-beta)
    return abs(quad_val - closed) / closed
