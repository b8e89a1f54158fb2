#!/usr/bin/env python3
"""Tests for sampled test functions, the star product and the KMS weight."""

import math

import numpy as np
import pytest

from kappa_nc.core.errors import (
    BandLimitError,
    ConfigurationError,
    ModularOverflowError,
    SupportOverflowError,
)
from kappa_nc.geometry.field_algebra import (
    AxisMultiplier,
    GridFunction,
    WeightValue,
    gaussian_fixtures,
    gaussian_packet,
    grid_coordinates,
    involution,
    kms_multiplier,
    kms_scan,
    modular_operator,
    modular_shift,
    spatial_rescale,
    star_product,
    twisted_trace_residual,
    untwisted_trace_residual,
    weight_omega,
)
from kappa_nc.models.config import GridSpec, GroupConfig

SEED = 20240611


class TestGridFunction:
    """Construction and band validation."""

    def setup_method(self):
        self.cfg = GroupConfig(n=2, lam=0.3)
        self.grid = GridSpec()

    def test_coordinates(self):
        x0, x1 = grid_coordinates(self.cfg, self.grid)
        assert x0.shape == (256, 1)
        assert x1.shape == (1, 128)
        assert x0[0, 0] == -20.0
        assert x0[1, 0] - x0[0, 0] == pytest.approx(40 / 256)

    def test_shape_mismatch(self):
        with pytest.raises(ConfigurationError):
            GridFunction(self.cfg, self.grid, np.zeros((4, 4)), 1.0)

    def test_negative_band(self):
        with pytest.raises(ConfigurationError):
            GridFunction(self.cfg, self.grid, np.zeros((256, 128)), -1.0)

    def test_samples_are_read_only(self):
        f = gaussian_packet(self.cfg, self.grid)
        with pytest.raises(ValueError):
            f.samples[0, 0] = 1.0

    def test_declared_band_too_small(self):
        with pytest.raises(BandLimitError, match="out-of-band"):
            GridFunction.from_callable(
                self.cfg,
                self.grid,
                lambda x0, x1: np.exp(-(x0**2) / 18 + 0.7j * x0 - x1**2 / 2.88),
                band_limit=0.2,
            )

    def test_band_beyond_nyquist(self):
        f = gaussian_packet(self.cfg, self.grid)
        with pytest.raises(BandLimitError, match="Nyquist"):
            f.with_samples(f.samples, band_limit=15.0)

    def test_direct_construction_checks_band(self):
        noise = np.random.default_rng(7).standard_normal((256, 128))
        with pytest.raises(BandLimitError, match="out-of-band"):
            GridFunction(self.cfg, self.grid, noise, 0.1)

    def test_with_samples_checks_band(self):
        f = gaussian_packet(self.cfg, self.grid)
        noise = np.random.default_rng(7).standard_normal(f.samples.shape)
        with pytest.raises(BandLimitError, match="out-of-band"):
            f.with_samples(noise, band_limit=0.1)

    def test_arithmetic_checks_band(self):
        f = gaussian_packet(self.cfg, self.grid)
        samples = np.random.default_rng(7).standard_normal(f.samples.shape)
        noise = GridFunction(self.cfg, self.grid, samples, f.band_limit, check_band=False)
        with pytest.raises(BandLimitError):
            f + noise

    def test_unchecked_construction(self):
        noise = np.random.default_rng(7).standard_normal((256, 128))
        f = GridFunction(self.cfg, self.grid, noise, 0.1, check_band=False)
        with pytest.raises(BandLimitError):
            f.validate()

    def test_frequencies_and_in_band(self):
        f = gaussian_packet(self.cfg, self.grid, carrier=0.5)
        assert f.band_limit == pytest.approx(0.5 + 6 / 3)
        assert np.all(np.abs(f.frequencies[f.in_band()]) <= f.band_limit * (1 + 1e-12))
        assert f.nyquist == pytest.approx(math.pi * 256 / 40)

    def test_arithmetic(self):
        f = gaussian_packet(self.cfg, self.grid, carrier=0.5)
        g = gaussian_packet(self.cfg, self.grid, carrier=-0.5)
        total = f + g
        assert total.band_limit == max(f.band_limit, g.band_limit)
        assert (total - g).sup_distance(f) <= 1e-14
        assert (2 * f).sup_norm() == pytest.approx(2 * f.sup_norm())

    def test_incompatible_grids(self):
        f = gaussian_packet(self.cfg, self.grid)
        g = gaussian_packet(GroupConfig(n=2, lam=0.5), self.grid)
        with pytest.raises(ConfigurationError):
            f + g


class TestWeight:
    """ω(f) by the trapezoidal rule."""

    @pytest.mark.parametrize("n", [2, 3])
    def test_normalized_packet(self, n):
        cfg = GroupConfig(n=n, lam=0.3)
        f = gaussian_packet(cfg, GridSpec.for_dimension(n), normalize=True)
        weight = weight_omega(f)
        assert weight.value == pytest.approx(1.0, abs=1e-10)
        assert weight.quadrature_error <= 1e-8

    def test_carrier_damps_the_weight(self):
        cfg = GroupConfig(n=2, lam=0.3)
        f = gaussian_packet(cfg, GridSpec(), carrier=0.3, normalize=True)
        assert weight_omega(f).value == pytest.approx(math.exp(-0.3**2 * 9 / 2), abs=1e-10)

    def test_negative_error_rejected(self):
        with pytest.raises(ValueError):
            WeightValue(1.0, -1.0)


class TestAxisMultiplier:
    """Complex translations along x0."""

    def setup_method(self):
        self.cfg = GroupConfig(n=2, lam=0.3)
        self.grid = GridSpec()

    def test_parts_and_composition(self):
        m = AxisMultiplier(0.5 + 0.2j).compose(AxisMultiplier(-1.0 + 0.1j))
        assert m.translation == pytest.approx(-0.5)
        assert m.growth_rate == pytest.approx(-0.3)
        p = np.array([-1.0, 0.0, 2.0])
        assert np.allclose(np.abs(m.symbol(p)), np.exp(-0.3 * p))

    def test_real_shift_translates(self):
        f = gaussian_packet(self.cfg, self.grid, center=[0.0, 0.0])
        moved = AxisMultiplier(1.5).apply(f)
        expected = gaussian_packet(self.cfg, self.grid, center=[-1.5, 0.0])
        assert moved.sup_distance(expected) <= 1e-8

    def test_kms_multiplier_is_a_translation(self):
        m = kms_multiplier(2.0, GroupConfig(n=3, lam=0.25))
        assert m.growth_rate == 0
        assert m.translation == pytest.approx(-2.0 * 2 * 0.25)

    def test_modular_operator_matches_modular_shift(self):
        f = gaussian_packet(self.cfg, self.grid, carrier=0.4)
        via_operator = modular_operator(self.cfg).apply(f)
        assert via_operator.sup_distance(modular_shift(f, 1)) <= 1e-12

    def test_modular_shift_group_law(self):
        f = gaussian_packet(self.cfg, self.grid, carrier=0.4)
        twice = modular_shift(modular_shift(f, 0.5), 0.7)
        assert twice.sup_distance(modular_shift(f, 1.2)) <= 1e-10 * twice.sup_norm()
        assert modular_shift(f, 0).sup_distance(f) <= 1e-8

    def test_overflow_budget(self):
        f = gaussian_packet(self.cfg, self.grid, carrier=0.4)
        with pytest.raises(ModularOverflowError):
            modular_shift(f, 100)


class TestSpatialRescale:
    """Interpolation at scaled spatial points."""

    @pytest.mark.parametrize(
        ("interpolation", "tol"), [("spectral", 1e-10), ("quintic", 1e-3), ("cubic", 1e-2)]
    )
    @pytest.mark.parametrize("scale", [0.6, 1.7])
    def test_gaussian(self, interpolation, tol, scale):
        grid = GridSpec(interpolation=interpolation)
        xs = -20 + (40 / 128) * np.arange(128)
        values = np.exp(-(xs**2) / 2)
        rescaled = spatial_rescale(values, scale, xs, grid, [0])
        assert np.max(np.abs(rescaled - np.exp(-((scale * xs) ** 2) / 2))) <= tol

    def test_identity_scale_copies(self):
        values = np.arange(4.0)
        result = spatial_rescale(values, 1.0, values, GridSpec(), [0])
        assert np.array_equal(result, values)
        assert result is not values


class TestStarProduct:
    """Algebra properties on Gaussian fixtures."""

    def setup_method(self):
        self.cfg = GroupConfig(n=2, lam=0.3)
        self.grid = GridSpec()
        self.fixtures = gaussian_fixtures(self.cfg, self.grid, SEED)

    def test_fixtures_are_deterministic(self):
        again = gaussian_fixtures(self.cfg, self.grid, SEED)
        assert again.parameters == self.fixtures.parameters
        assert again.f.sup_distance(self.fixtures.f) == 0.0
        assert 0.6 <= self.fixtures.parameters["f"]["carrier"] <= 0.8
        assert -0.8 <= self.fixtures.parameters["g"]["carrier"] <= -0.6

    def test_associativity(self):
        f, g, h = self.fixtures.f, self.fixtures.g, self.fixtures.h
        left = star_product(star_product(f, g), h)
        right = star_product(f, star_product(g, h))
        assert left.sup_distance(right) <= 1e-6

    def test_product_band_is_additive(self):
        f, g = self.fixtures.f, self.fixtures.g
        assert star_product(f, g).band_limit == pytest.approx(f.band_limit + g.band_limit)

    def test_bilinear(self):
        f, g, h = self.fixtures.f, self.fixtures.g, self.fixtures.h
        combined = star_product(h, f * 2.0 + g * (-0.5j))
        separate = star_product(h, f) * 2.0 + star_product(h, g) * (-0.5j)
        assert combined.sup_distance(separate) <= 1e-12
        scaled = star_product(f * (2.0 - 1.0j), h)
        assert scaled.sup_distance(star_product(f, h) * (2.0 - 1.0j)) <= 1e-12

    def test_noncommutative(self):
        f, g = self.fixtures.f, self.fixtures.g
        assert star_product(f, g).sup_distance(star_product(g, f)) > 1e-3

    def test_commutative_limit(self):
        cfg = GroupConfig(n=2, lam=0.0)
        fixtures = gaussian_fixtures(cfg, self.grid, SEED)
        product = star_product(fixtures.f, fixtures.g)
        assert np.max(np.abs(product.samples - fixtures.f.samples * fixtures.g.samples)) <= 1e-8

    def test_deviation_from_pointwise_shrinks_with_lambda(self):
        deviations = []
        for lam in (0.4, 0.2, 0.1, 0.05):
            cfg = GroupConfig(n=2, lam=lam)
            f = gaussian_packet(cfg, self.grid, center=[0.5, 0.3], carrier=0.7)
            g = gaussian_packet(cfg, self.grid, center=[-0.4, -0.2], carrier=-0.6)
            pointwise = f.samples * g.samples
            deviations.append(float(np.max(np.abs(star_product(f, g).samples - pointwise))))
        assert deviations == sorted(deviations, reverse=True)
        assert deviations[-1] < deviations[0] / 4

    def test_band_overflow(self):
        grid = GridSpec(n0=96, x0_half_width=20.0)
        cfg = GroupConfig(n=2, lam=0.3)
        f = gaussian_packet(cfg, grid, carrier=1.5)
        with pytest.raises(BandLimitError):
            star_product(f, f)

    def test_support_overflow(self):
        grid = GridSpec(xs_half_width=4.0, ns=32)
        cfg = GroupConfig(n=2, lam=0.3)
        f = gaussian_packet(cfg, grid, width_s=2.0)
        with pytest.raises(SupportOverflowError):
            star_product(f, f)


class TestInvolution:
    """The star-involution."""

    def setup_method(self):
        self.cfg = GroupConfig(n=2, lam=0.3)
        self.fixtures = gaussian_fixtures(self.cfg, GridSpec(), SEED)

    def test_antimultiplicative(self):
        f, g = self.fixtures.f, self.fixtures.g
        left = involution(star_product(f, g))
        right = star_product(involution(g), involution(f))
        assert left.sup_distance(right) <= 1e-6

    def test_involutive(self):
        f = self.fixtures.f
        assert involution(involution(f)).sup_distance(f) <= 1e-6

    def test_conjugation_when_commutative(self):
        cfg = GroupConfig(n=2, lam=0.0)
        f = gaussian_packet(cfg, GridSpec(), carrier=0.7)
        assert np.array_equal(involution(f).samples, np.conj(f.samples))

    def test_differs_from_conjugation_when_deformed(self):
        f = self.fixtures.f
        conjugate = f.with_samples(np.conj(f.samples))
        assert involution(f).sup_distance(conjugate) > 1e-6


class TestTwistedTrace:
    """ω(f⋆g) = ω(σ^(n-1)(g)⋆f) and the KMS scan."""

    @pytest.mark.parametrize("n", [2, pytest.param(3, marks=pytest.mark.slow)])
    def test_twisted_trace_holds_and_trace_fails(self, n):
        cfg = GroupConfig(n=n, lam=0.3)
        fixtures = gaussian_fixtures(cfg, GridSpec.for_dimension(n), SEED)
        assert twisted_trace_residual(fixtures.f, fixtures.g) <= 1e-6
        assert untwisted_trace_residual(fixtures.f, fixtures.g) >= 1e-3

    def test_kms_scan_minimum(self):
        cfg = GroupConfig(n=2, lam=0.3)
        fixtures = gaussian_fixtures(cfg, GridSpec(), SEED)
        scan = kms_scan(fixtures.f, fixtures.g)
        assert sorted(scan) == [0.0, 1.0, 2.0]
        assert min(scan, key=scan.__getitem__) == 1.0
        assert scan[0.0] == pytest.approx(untwisted_trace_residual(fixtures.f, fixtures.g))

    def test_commutative_weight_is_a_trace(self):
        cfg = GroupConfig(n=2, lam=0.0)
        fixtures = gaussian_fixtures(cfg, GridSpec(), SEED)
        assert untwisted_trace_residual(fixtures.f, fixtures.g) <= 1e-12
