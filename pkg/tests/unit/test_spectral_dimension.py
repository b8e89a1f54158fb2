#!/usr/bin/env python3
"""Tests for the spectral-dimension classifier."""

import dataclasses

import pytest

from kappa_nc.core.errors import ClassifierInconclusiveError
from kappa_nc.models.config import ZetaContext
from kappa_nc.specfun.spectral_dimension import (
    classify,
    fit_tail,
    modular_composition_check,
    spectral_dimension_scan,
)


class TestTailFit:
    """Slope of the ξ0 -> -∞ tail."""

    def test_slope_sign(self):
        ctx = ZetaContext(n=2, lam=0.5, t=1.0)
        # tail exponent (t - (s - n + 1)) λ
        divergent = fit_tail(1.5, ctx, window=80.0)
        convergent = fit_tail(2.5, ctx, window=80.0)
        assert divergent.divergent
        assert not convergent.divergent
        assert divergent.slope == pytest.approx(0.25, abs=1e-3)
        assert convergent.slope == pytest.approx(-0.25, abs=1e-3)

    def test_fit_reports_tail_statistics_only(self):
        ctx = ZetaContext(n=2, lam=0.5, t=1.0)
        fit = fit_tail(2.5, ctx, window=80.0)
        names = [item.name for item in dataclasses.fields(fit)]
        assert names == ["window", "slope", "r_squared", "rms"]
        assert fit.window == 80.0
        assert fit.r_squared >= 0.999

    def test_classify_uses_every_window(self):
        ctx = ZetaContext(n=3, lam=0.5, t=1.0)
        fits = classify(4.0, ctx)
        assert len(fits) == 3
        assert fits[0].window < fits[-1].window

    def test_strict_fit_rejects_nonlinear_tail(self):
        ctx = ZetaContext(n=2, lam=0.5, t=1.0)
        with pytest.raises(ClassifierInconclusiveError):
            fit_tail(3.0, ctx, window=2.0, r2_threshold=1.0)


class TestSpectralDimensionScan:
    """Threshold p = n - 1 + t."""

    @pytest.mark.slow
    @pytest.mark.parametrize(
        ("n", "t"), [(2, 1.0), (3, 1.0), (4, 1.0), (2, 0.5), (3, 2.0), (4, 0.5)]
    )
    def test_estimate(self, n, t):
        result = spectral_dimension_scan(ZetaContext(n=n, lam=0.5, t=t))
        assert result.summable
        assert result.expected == n - 1 + t
        assert abs(result.p_estimate - (n - 1 + t)) <= 0.05

    @pytest.mark.parametrize("t", [0.0, -1.0])
    def test_nonpositive_weight_is_not_summable(self, t):
        result = spectral_dimension_scan(ZetaContext(n=2, t=t))
        assert not result.summable
        assert result.p_estimate is None
        assert result.to_dict() == {
            "t": t,
            "summable": False,
            "p_estimate": None,
            "expected": None,
            "bisection_steps": 0,
        }


class TestModularComposition:
    """The weight flow composed with σ^p is σ^(n-1) for every t."""

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_independent_of_t(self, t):
        assert modular_composition_check(3, 0.5, t) == pytest.approx(-1.0)

    def test_commutative(self):
        assert modular_composition_check(3, 0.0, 1.0) == 0.0
