import numpy as np
import pytest

from logdiss import (
    DissipationSpec,
    RadialSymbol,
    full_symbol,
    heat_kernel,
    kernel_of_symbol,
    l1_norm_certified,
    make_grid,
    positivity_scan,
    residual_symbol,
)
from logdiss.kernels import default_kernel_grid


def shifted_decay(lam, s):
    return RadialSymbol(lambda xi: (lam + xi) ** (-s), f"({lam}+xi)^-{s}")


class TestKernelOfSymbol:
    def test_identity_gives_delta(self):
        g = make_grid(1, 64, np.pi)
        k = kernel_of_symbol(RadialSymbol.constant(1.0), g)
        center = g.n // 2
        assert k.samples[center] * g.cell_volume == pytest.approx(1.0, rel=1e-12)
        assert k.l1_estimate == pytest.approx(1.0, rel=1e-12)
        off = np.delete(k.samples, center)
        assert np.max(np.abs(off)) <= 1e-10 * k.samples[center]

    def test_shifted_decay_nonnegative_and_mass(self):
        g = default_kernel_grid(1)
        k = kernel_of_symbol(shifted_decay(2.0, 1.0), g)
        assert k.min_value >= -1e-9 * np.max(np.abs(k.samples))
        assert k.l1_estimate == pytest.approx(0.5, rel=0.02)

    def test_gaussian_pair(self):
        g = make_grid(1, 2**12, 40.0)
        k = kernel_of_symbol(RadialSymbol(lambda xi: np.exp(-(xi**2) / 2.0), "gauss"), g)
        exact = (2.0 * np.pi) ** -0.5 * np.exp(-(k.grid.x**2) / 2.0)
        assert np.max(np.abs(k.samples - exact)) <= 1e-12
        assert k.min_value >= -1e-9

    def test_zeroth_moment_identity(self):
        g = make_grid(1, 1024, 20.0)
        for spec in (DissipationSpec("A", 0.0, 1.0, 2.0), DissipationSpec("A", 1.0, 1.0, 3.0)):
            m = full_symbol(spec)
            k = kernel_of_symbol(m, g)
            mass = np.sum(k.samples) * g.cell_volume
            assert mass == pytest.approx(float(m(np.array([0.0]))[0]), abs=1e-8)


class TestL1Certification:
    @pytest.mark.parametrize("s", [0.5, 1.0, 1.5])
    def test_shifted_decay_family(self, s):
        est, converged = l1_norm_certified(shifted_decay(2.0, s), default_kernel_grid(1))
        assert converged
        assert est == pytest.approx(2.0**-s, rel=0.02)

    def test_residual_converges(self):
        spec = DissipationSpec("A", 0.5, 1.0, 2.0)
        est, converged = l1_norm_certified(residual_symbol(spec), make_grid(1, 2**21, 12800.0))
        assert converged
        assert np.isfinite(est) and est > 0

    def test_no_decay_refused(self):
        est, converged = l1_norm_certified(
            RadialSymbol(lambda xi: xi**0.5, "|xi|^0.5"), default_kernel_grid(1)
        )
        assert not converged

    def test_domination_monotone(self):
        g = default_kernel_grid(1)
        ests = [l1_norm_certified(shifted_decay(2.0, s), g)[0] for s in (1.5, 1.0, 0.5)]
        assert ests[0] < ests[1] < ests[2]


class TestHeatKernel:
    def test_gaussian_semigroup_positive(self):
        g = make_grid(1, 2**12, 60.0)
        rep = heat_kernel(DissipationSpec("FRACTIONAL", 2.0), 1.0, g)
        assert rep.min_value >= -1e-9
        assert rep.negative_mass_fraction == 0.0

    def test_poisson_semigroup_positive(self):
        g = make_grid(1, 2**13, 200.0)
        rep = heat_kernel(DissipationSpec("FRACTIONAL", 1.0), 1.0, g)
        assert rep.negative_mass_fraction == 0.0

    def test_log_modulated_inside_positive_regime(self):
        g = default_kernel_grid(1)
        rep = heat_kernel(DissipationSpec("A", 0.5, 1.0, float(np.exp(8.0))), 1.0, g)
        assert rep.negative_mass_fraction <= 1e-9

    def test_semigroup_mass(self):
        # total kernel mass is e^{-t m(0)} = 1 for gamma > 0
        g = make_grid(1, 2048, 30.0)
        spec = DissipationSpec("A", 1.0, 1.0, 2.0)
        k = kernel_of_symbol(
            RadialSymbol(lambda xi: np.exp(-0.5 * full_symbol(spec)(xi)), "heat"), g
        )
        assert np.sum(k.samples) * g.cell_volume == pytest.approx(1.0, abs=1e-8)

    def test_t_must_be_positive(self):
        with pytest.raises(ValueError):
            heat_kernel(DissipationSpec("A", 1.0, 1.0, 2.0), 0.0, default_kernel_grid(1))


class TestPositivityScan:
    def test_empty(self):
        assert positivity_scan([], 1.0, default_kernel_grid(1)) == []

    def test_singleton_matches_heat_kernel(self):
        g = make_grid(1, 1024, 50.0)
        spec = DissipationSpec("A", 1.0, 1.0, 2.0)
        [rep] = positivity_scan([spec], 1.0, g)
        direct = heat_kernel(spec, 1.0, g)
        assert rep.min_value == direct.min_value
        assert rep.negative_mass_fraction == direct.negative_mass_fraction

    def test_3x3_grid_collects_data(self):
        g = make_grid(1, 1024, 50.0)
        specs = [
            DissipationSpec("A", gam, 1.0, lam)
            for gam in (0.5, 1.0, 1.5) for lam in (1.5, 2.0, 4.0)
        ]
        reports = positivity_scan(specs, 1.0, g)
        assert len(reports) == 9
        for rep in reports:
            assert 0.0 <= rep.negative_mass_fraction <= 1.0

    def test_failures_collected_not_raised(self):
        g = make_grid(1, 256, 10.0)
        good = DissipationSpec("A", 1.0, 1.0, 2.0)
        out = positivity_scan([good], -1.0, g)  # bad t fails per-spec
        assert len(out) == 1
        assert isinstance(out[0], Exception)
