import numpy as np
import pytest
from scipy import integrate

from logdiss import (
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
from logdiss.symbols import power_weighted_integral

E = np.e


def brute_main_low(spec, xi):
    """Independent adaptive-quadrature oracle for the LOW-regime main term."""
    g, b = spec.gamma, spec.beta
    if spec.variant == "A1":
        def integrand(tau, x):
            return tau ** (b - 1.0) * (x**2) ** (g / 2.0 - tau)
        upper = g / 2.0
    else:
        def integrand(tau, x):
            return tau ** (b - 1.0) * x ** (g - tau)
        upper = g
    out = []
    for x in np.atleast_1d(xi):
        if x == 0.0:
            out.append(0.0)
            continue
        val, _ = integrate.quad(lambda t: integrand(t, x), 0.0, upper,
                                points=[0.0], epsabs=1e-14, epsrel=1e-12, limit=300)
        out.append(val / gamma_fn(b))
    return np.array(out)


class TestSpecValidation:
    def test_admissible(self):
        DissipationSpec("A", 1.0, 1.0, 2.0, 0.1)
        DissipationSpec("NONE", nu=1.0)
        DissipationSpec("FRACTIONAL", gamma=1.5)

    @pytest.mark.parametrize("kwargs", [
        dict(variant="A", gamma=-0.1, beta=1.0, lam=2.0),
        dict(variant="A", gamma=2.5, beta=1.0, lam=2.0),
        dict(variant="A", gamma=1.0, beta=-1.0, lam=2.0),
        dict(variant="A", gamma=1.0, beta=1.0, lam=1.0),
        dict(variant="A", gamma=1.0, beta=1.0, lam=0.5),
        dict(variant="A", gamma=1.0, beta=1.0, lam=2.0, nu=-1.0),
        dict(variant="BOGUS",),
    ])
    def test_inadmissible(self, kwargs):
        with pytest.raises(ValueError):
            DissipationSpec(**kwargs)

    def test_regimes(self):
        assert DissipationSpec("A", 1.0, 1.0, 2.0).regime == "LOW"
        assert DissipationSpec("A", 1.5, 1.0, 2.0).regime == "HIGH"
        assert DissipationSpec("A1", 2.0, 1.0, 2.0).regime == "LOW"


class TestGammaFunctions:
    def test_gamma_one(self):
        assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-14)

    def test_gamma_half(self):
        assert gamma_fn(0.5) == pytest.approx(1.7724538509055160, rel=1e-12)

    def test_gamma_pole_rejected(self):
        for z in (0.0, -1.0, -2.0):
            with pytest.raises(ValueError):
                gamma_fn(z)

    def test_lower_incomplete_a1_closed_form(self):
        for x in (-1.0, 0.0, 0.5, 3.0):
            assert lower_incomplete_gamma(1.0, x) == pytest.approx(1.0 - np.exp(-x), rel=1e-12)

    @pytest.mark.parametrize("a,x,expected", [
        # frozen from a 40-digit reference evaluation
        (0.5, 2.0, 1.6918067329451983),
        (2.5, 1.3, 0.3172267874759336),
        (3.0, 0.7, 0.0682831682514170),
        (0.5, -1.0, -2.9253034918143632),
        (1.5, -2.0, -7.1058605854323723),
    ])
    def test_reference_values(self, a, x, expected):
        assert lower_incomplete_gamma(a, x) == pytest.approx(expected, rel=1e-12)

    def test_bad_a_rejected(self):
        with pytest.raises(ValueError):
            lower_incomplete_gamma(0.0, 1.0)


class TestSymbols:
    def test_symbol_a_constructed_log(self):
        # log(lambda + |xi|) = 2 exactly at |xi| = e^2 - 2
        m = symbol_a(DissipationSpec("A", 1.0, 1.0, 2.0))
        xi = E**2 - 2.0
        assert m(np.array([xi]))[0] == pytest.approx(2.694528049465325, rel=1e-12)

    def test_symbol_a_zero_limits(self):
        m = symbol_a(DissipationSpec("A", 1.0, 1.0, 2.0))
        assert m(np.array([0.0]))[0] == 0.0
        flat = symbol_a(DissipationSpec("A", 0.0, 0.0, 2.0))
        assert np.allclose(flat(np.array([0.0, 1.0, 99.0])), 1.0)

    def test_symbol_a_gamma0(self):
        m = symbol_a(DissipationSpec("A", 0.0, 2.0, 3.0))
        assert m(np.array([0.0]))[0] == pytest.approx(np.log(3.0) ** -2.0, rel=1e-14)

    def test_symbol_a1_values(self):
        m = symbol_a1(DissipationSpec("A1", 1.0, 1.0, 2.0))
        xi = np.sqrt(E**2 - 2.0)
        # sqrt(e^2-2)/2; 40-digit reference 1.1607170304310446
        assert m(np.array([xi]))[0] == pytest.approx(1.1607170304310446, rel=1e-12)
        assert m(np.array([0.0]))[0] == 0.0

    def test_symbol_a1_beta0_is_fractional(self):
        m = symbol_a1(DissipationSpec("A1", 1.3, 0.0, 2.0))
        frac = symbol_fractional(1.3)
        xs = np.array([0.0, 0.4, 1.0, 8.0])
        assert np.allclose(m(xs), frac(xs), rtol=1e-14)

    def test_fractional(self):
        assert symbol_fractional(0.7)(np.array([1.0]))[0] == pytest.approx(1.0)
        assert symbol_fractional(2.0)(np.array([3.0]))[0] == pytest.approx(9.0)
        assert symbol_fractional(0.5)(np.array([2.0]))[0] == pytest.approx(1.4142135623730951, rel=1e-14)
        with pytest.raises(ValueError):
            symbol_fractional(2.5)


class TestMainTermLow:
    def test_value_at_e(self):
        m = main_term_low(DissipationSpec("A", 1.0, 1.0, 2.0))
        assert m(np.array([E]))[0] == pytest.approx(E - 1.0, rel=1e-12)

    def test_value_at_one(self):
        m = main_term_low(DissipationSpec("A", 1.0, 1.0, 2.0))
        assert m(np.array([1.0]))[0] == pytest.approx(1.0, rel=1e-12)

    def test_zero(self):
        for spec in (DissipationSpec("A", 0.5, 0.5, 2.0), DissipationSpec("A1", 1.7, 2.0, 3.0)):
            assert main_term_low(spec)(np.array([0.0]))[0] == 0.0

    @pytest.mark.parametrize("spec", [
        DissipationSpec("A", 0.25, 0.5, 2.0),
        DissipationSpec("A", 1.0, 1.0, 2.0),
        DissipationSpec("A", 0.8, 2.0, 4.0),
        DissipationSpec("A1", 1.6, 0.75, 2.0),
        DissipationSpec("A1", 2.0, 1.5, 1.5),
    ])
    def test_matches_adaptive_quadrature(self, spec):
        xi = np.array([1e-4, 0.2, 0.9, 0.999, 1.001, 1.5, np.e, 17.0, 4096.0])
        closed = main_term_low(spec)(xi)
        brute = brute_main_low(spec, xi)
        assert np.max(np.abs(closed - brute) / np.abs(brute)) <= 1e-9

    def test_continuous_at_one(self):
        m = main_term_low(DissipationSpec("A", 0.7, 0.5, 2.0))
        vals = m(np.array([1.0 - 1e-9, 1.0, 1.0 + 1e-9]))
        assert np.max(np.abs(np.diff(vals))) <= 1e-8

    def test_nonnegative(self):
        xi = np.concatenate([[0.0], np.logspace(-8, 4, 100)])
        for spec in (DissipationSpec("A", 0.5, 0.5, 2.0), DissipationSpec("A1", 2.0, 2.0, 8.0)):
            assert np.min(main_term_low(spec)(xi)) >= 0.0


class TestMainTermHigh:
    def test_zero(self):
        m = main_term_high(DissipationSpec("A", 1.5, 1.0, 2.0))
        assert m(np.array([0.0]))[0] == 0.0

    def test_elementary_value(self):
        # gamma=2, beta=1, lambda=2 at |xi|=1: 1 + 0 = 1
        m = main_term_high(DissipationSpec("A", 2.0, 1.0, 2.0))
        assert m(np.array([1.0]))[0] == pytest.approx(1.0, rel=1e-12)

    def test_lambda_linearity(self):
        g, b = 1.7, 0.8
        xi = np.array([0.3, 1.0, 2.5, 40.0])
        m2 = main_term_high(DissipationSpec("A", g, b, 2.0))(xi)
        m4 = main_term_high(DissipationSpec("A", g, b, 4.0))(xi)
        cb = 1.0 / gamma_fn(b)
        correction = []
        for x in xi:
            val, _ = integrate.quad(
                lambda t: t**b * x ** (g - t - 1.0), 0.0, g - 1.0,
                epsabs=1e-14, epsrel=1e-12,
            )
            correction.append(val)
        expected = -2.0 * cb * np.array(correction)
        assert np.allclose(m4 - m2, expected, rtol=1e-9, atol=1e-12)

    def test_matches_adaptive_quadrature(self):
        spec = DissipationSpec("A", 1.5, 0.7, 3.0)
        cb = 1.0 / gamma_fn(0.7)

        def brute(x):
            i1, _ = integrate.quad(lambda t: t ** (0.7 - 1.0) * x ** (1.5 - t),
                                   0.5, 1.5, epsabs=1e-14, epsrel=1e-12)
            i2, _ = integrate.quad(
                lambda t: t ** (0.7 - 1.0) * (x ** (1.5 - t) - 3.0 * t * x ** (0.5 - t)),
                0.0, 0.5, points=[0.0], epsabs=1e-14, epsrel=1e-12)
            return cb * (i1 + i2)

        xi = np.array([0.05, 0.5, 1.0, 2.2, 30.0])
        closed = main_term_high(spec)(xi)
        brute_vals = np.array([brute(x) for x in xi])
        assert np.max(np.abs(closed - brute_vals) / np.abs(brute_vals)) <= 1e-9


class TestResidual:
    def test_identity_by_construction(self):
        xi = np.concatenate([[0.0], np.logspace(-3, 3, 50)])
        for spec in (
            DissipationSpec("A", 0.5, 1.0, 2.0),
            DissipationSpec("A", 1.8, 0.5, 3.0),
            DissipationSpec("A1", 1.2, 2.0, 2.0),
        ):
            parts = decompose(spec)
            full = full_symbol(spec)(xi)
            err = np.abs(parts.main(xi) + parts.residual(xi) - full) / (1.0 + np.abs(full))
            assert np.max(err) <= 1e-10

    def test_gamma0_residual_is_full(self):
        spec = DissipationSpec("A", 0.0, 1.5, 2.0)
        parts = decompose(spec)
        xi = np.array([0.0, 0.7, 5.0])
        assert np.allclose(parts.main(xi), 0.0)
        assert np.allclose(parts.residual(xi), full_symbol(spec)(xi), rtol=1e-14)

    def test_beta0_residual_is_zero(self):
        parts = decompose(DissipationSpec("A", 1.3, 0.0, 2.0))
        xi = np.array([0.0, 1.0, 9.0])
        assert np.allclose(parts.residual(xi), 0.0)
        assert np.allclose(parts.main(xi), xi**1.3)

    def test_residual_value_at_e(self):
        # e/log(2+e) - (e-1), frozen from a 40-digit evaluation
        r = residual_symbol(DissipationSpec("A", 1.0, 1.0, 2.0))
        assert r(np.array([E]))[0] == pytest.approx(0.0338153001390534, abs=1e-12)

    def test_c_beta(self):
        parts = decompose(DissipationSpec("A", 0.5, 2.0, 2.0))
        assert parts.c_beta == pytest.approx(1.0 / gamma_fn(2.0), rel=1e-14)


class TestResidualThreeTerm:
    def test_gamma0_reduces_to_log_symbol(self):
        spec = DissipationSpec("A", 0.0, 1.0, 2.0)
        rt = residual_three_term(spec)
        xi = np.array([0.0, 1.0, 10.0])
        expected = 1.0 / np.log(2.0 + xi)
        assert np.allclose(rt(xi), expected, rtol=1e-9)

    def test_elementary_cancellation_at_zero(self):
        # pieces 1/log2 + 1/log2 - 2/log2 sum to zero
        rt = residual_three_term(DissipationSpec("A", 1.0, 1.0, 2.0))
        assert abs(rt(np.array([0.0]))[0]) <= 1e-10

    @pytest.mark.parametrize("spec", [
        DissipationSpec("A", 0.25, 0.5, 1.5),
        DissipationSpec("A", 0.5, 1.0, 2.0),
        DissipationSpec("A", 1.0, 2.0, 4.0),
        DissipationSpec("A", 0.75, 1.5, 2.0),
    ])
    def test_cross_check_20_frequencies(self, spec):
        rng = np.random.default_rng(hash((spec.gamma, spec.beta, spec.lam)) % 2**31)
        xi = np.sort(rng.uniform(0.0, 100.0, size=20))
        direct = residual_symbol(spec)(xi)
        assembled = residual_three_term(spec)(xi)
        assert np.max(np.abs(assembled - direct) / (1.0 + np.abs(direct))) <= 1e-8


class TestLogIdentity:
    def test_beta1_elementary(self):
        assert verify_log_identity(1.0, 2.0, 0.0) <= 1e-12

    def test_beta2_value(self):
        # quadrature value must equal 1/log^2(2) = 2.0813689810056077
        w = np.log(2.0)
        from logdiss.symbols import power_weighted_integral
        val = power_weighted_integral(lambda t: np.exp(-w * t), 0.0, 90.0, 2.0) / gamma_fn(2.0)
        assert val == pytest.approx(2.0813689810056077, rel=1e-10)
        assert verify_log_identity(2.0, 2.0, 0.0) <= 1e-9

    def test_error_small_on_grid(self):
        worst = 0.0
        for beta in np.linspace(0.25, 4.0, 5):
            for lam in np.linspace(1.5, 8.0, 5):
                for xi in np.linspace(0.0, 50.0, 5):
                    worst = max(worst, verify_log_identity(float(beta), float(lam), float(xi)))
        assert worst <= 1e-9


class TestSymbolProperties:
    def test_regime_continuity(self):
        xi = np.array([0.3, 1.0, 2.0, 7.5])
        low = main_term_low(DissipationSpec("A", 1.0, 1.0, 2.0))(xi)
        gaps = []
        for eps in (1e-2, 1e-3):
            high = main_term_high(DissipationSpec("A", 1.0 + eps, 1.0, 2.0))(xi)
            gaps.append(np.max(np.abs(high - low) / (1.0 + np.abs(low))))
        assert gaps[1] < gaps[0] < 0.1

    def test_large_xi_full_over_main(self):
        spec = DissipationSpec("A", 1.0, 1.0, 2.0)
        parts = decompose(spec)
        xi = np.array([1e3, 1e4, 1e5])
        gap = np.abs(full_symbol(spec)(xi) / parts.main(xi) - 1.0)
        assert np.all(gap < 0.10)
        assert np.all(np.diff(gap) < 0)

    def test_quadrature_monotone(self):
        prev = None
        for tol in (1e-6, 1e-8, 1e-10):
            a = power_weighted_integral(lambda t: np.exp(-t), 0.0, 5.0, 0.75, tol)
            b = power_weighted_integral(lambda t: np.exp(-t), 0.0, 5.0, 0.75, tol / 2.0)
            assert abs(a - b) <= tol * abs(a) + 1e-300
