import math

import numpy as np
import pytest

from logdiss import (
    DissipationSpec,
    NumericalError,
    SpectralField,
    full_symbol,
    make_grid,
    make_velocity,
    norm_lp,
    simulate,
    step,
)
from logdiss.solver import SimState, cfl_dt, random_band_limited

G1 = make_grid(1, 128, np.pi)
G2 = make_grid(2, 64, np.pi)


class TestVelocity:
    def test_zero(self):
        v = make_velocity("ZERO", 5.0, 0, G1)
        assert v.max_speed == 0.0

    def test_stream_divergence_free(self):
        v = make_velocity("STREAM", 1.0, 42, G2)
        assert v.divergence_max() <= 1e-8 * (v.amplitude / G2.half_width)
        assert v.max_speed == pytest.approx(1.0, rel=1e-12)

    def test_stream_needs_2d(self):
        with pytest.raises(ValueError):
            make_velocity("STREAM", 1.0, 0, G1)

    def test_compressible_1d(self):
        v = make_velocity("COMPRESSIBLE", 2.0, 0, G1)
        assert v.max_speed == pytest.approx(2.0, rel=1e-12)
        # div = 2 cos(x) on the canonical grid
        assert v.divergence_max() == pytest.approx(2.0, rel=1e-10)
        assert v.divergence_max() > 0.1 * (v.amplitude / G1.half_width)

    def test_compressible_2d(self):
        v = make_velocity("COMPRESSIBLE", 1.5, 0, G2)
        assert v.max_speed == pytest.approx(1.5, rel=1e-12)
        assert v.divergence_max() > 0.1 * (v.amplitude / G2.half_width)

    def test_oscillatory_modulation(self):
        v = make_velocity("COMPRESSIBLE", 1.0, 0, G1,
                          time_dependence="OSCILLATORY", frequency=np.pi)
        at0 = v.at_time(0.0)[0]
        at1 = v.at_time(1.0)[0]
        assert np.allclose(at1, -at0)

    def test_custom_requires_components(self):
        with pytest.raises(ValueError):
            make_velocity("CUSTOM", 1.0, 0, G1)


class TestStep:
    def test_pure_spectral_decay(self):
        spec = DissipationSpec("FRACTIONAL", 2.0, nu=1.0)
        theta = SpectralField.from_physical(G1, np.cos(G1.x))
        state = SimState(0.0, theta.spectral.copy(), G1, spec,
                         make_velocity("ZERO", 0.0, 0, G1), 0.1)
        out = step(state)
        assert out.t == pytest.approx(0.1)
        assert np.max(np.abs(out.theta.physical - np.exp(-0.1) * np.cos(G1.x))) <= 1e-13

    def test_nan_detected(self):
        spec = DissipationSpec("NONE", nu=0.0)
        bad = np.full(G1.shape, np.nan)
        state = SimState(0.0, bad.astype(complex), G1, spec,
                         make_velocity("ZERO", 0.0, 0, G1), 0.1)
        with pytest.raises(NumericalError):
            step(state)

    def test_dissipation_exactness_multi_step(self):
        spec = DissipationSpec("A", 1.5, 1.0, 2.0, nu=0.8)
        theta0 = random_band_limited(G1, 5)
        v = make_velocity("ZERO", 0.0, 0, G1)
        series, final = simulate(G1, spec, v, theta0, 1.0, [2.0], sample_every=10**6)
        m = full_symbol(spec)(G1.xi_norm)
        exact = np.exp(-spec.nu * 1.0 * m) * theta0.spectral
        err = np.max(np.abs(final.theta_hat - exact)) / np.max(np.abs(exact))
        assert err <= 1e-12


class TestSimulate:
    def test_t_zero_single_sample(self):
        spec = DissipationSpec("NONE", nu=1.0)
        theta0 = random_band_limited(G1, 3)
        v = make_velocity("ZERO", 0.0, 0, G1)
        series, final = simulate(G1, spec, v, theta0, 0.0, [2.0, math.inf])
        assert series.times == [0.0]
        assert series.norms[2.0][0] == pytest.approx(norm_lp(theta0, 2.0))
        assert final.t == 0.0

    def test_conservation_inviscid(self):
        spec = DissipationSpec("NONE", nu=0.0)
        v = make_velocity("STREAM", 1.0, 42, G2)
        theta0 = random_band_limited(G2, 7)
        series, _ = simulate(G2, spec, v, theta0, 1.0, [2.0], sample_every=25)
        drift = abs(series.norms[2.0][-1] - series.norms[2.0][0]) / series.norms[2.0][0]
        assert drift <= 1e-4

    def test_identity_dissipation_exact_decay(self):
        spec = DissipationSpec("NONE", nu=0.5)
        v = make_velocity("STREAM", 1.0, 42, G2)
        theta0 = random_band_limited(G2, 7)
        series, _ = simulate(G2, spec, v, theta0, 2.0, [2.0], sample_every=100)
        ratio = series.norms[2.0][-1] / series.norms[2.0][0]
        assert ratio == pytest.approx(math.exp(-1.0), abs=1e-3)

    def test_mean_preserved(self):
        spec = DissipationSpec("A", 1.0, 1.0, 2.0, nu=0.5)
        v = make_velocity("STREAM", 1.0, 9, G2)
        theta0 = random_band_limited(G2, 8)
        mean0 = float(np.mean(theta0.physical))
        _, final = simulate(G2, spec, v, theta0, 0.5, [2.0], sample_every=100)
        assert float(np.mean(final.theta.physical)) == pytest.approx(mean0, rel=1e-8)

    def test_monotone_refinement(self):
        spec = DissipationSpec("A", 1.0, 1.0, 2.0, nu=0.2)
        v = make_velocity("STREAM", 1.0, 43, G2)
        theta0 = random_band_limited(G2, 9)
        vals = []
        for cfl in (0.8, 0.4, 0.2):
            series, _ = simulate(G2, spec, v, theta0, 0.5, [2.0], cfl=cfl, sample_every=10**6)
            vals.append(series.norms[2.0][-1])
        assert abs(vals[2] - vals[1]) <= 4.0 * abs(vals[1] - vals[0]) + 1e-14

    def test_classical_case_nonincreasing(self):
        v = make_velocity("STREAM", 1.0, 44, G2)
        theta0 = random_band_limited(G2, 10)
        for gamma in (0.5, 1.0, 2.0):
            spec = DissipationSpec("FRACTIONAL", gamma, nu=0.1)
            series, _ = simulate(G2, spec, v, theta0, 1.0, [2.0, math.inf], sample_every=5)
            for p in (2.0, math.inf):
                vals = np.asarray(series.norms[p])
                assert np.all(np.diff(vals) <= 1e-4 * vals[:-1])

    def test_cfl_cap(self):
        v = make_velocity("ZERO", 0.0, 0, G1)
        assert cfl_dt(G1, v) == pytest.approx(0.01)
        v = make_velocity("COMPRESSIBLE", 50.0, 0, G1)
        assert cfl_dt(G1, v) == pytest.approx(0.5 * G1.dx / 50.0)


class TestNorms:
    def test_constant_field(self):
        f = SpectralField.from_physical(G1, np.ones(G1.shape))
        assert norm_lp(f, 1.0) == pytest.approx(2.0 * np.pi, rel=1e-12)
        assert norm_lp(f, math.inf) == pytest.approx(1.0)

    def test_cosine_l2(self):
        f = SpectralField.from_physical(G1, np.cos(G1.x))
        assert norm_lp(f, 2.0) == pytest.approx(1.7724538509055160, rel=1e-12)

    def test_p_below_one_rejected(self):
        f = SpectralField.from_physical(G1, np.ones(G1.shape))
        with pytest.raises(ValueError):
            norm_lp(f, 0.99)
