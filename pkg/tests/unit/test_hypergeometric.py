#!/usr/bin/env python3
"""Tests for 2F1 on the negative real axis."""

import math

import mpmath
import pytest

from kappa_nc.core.errors import HypergeometricConvergenceError, HypergeometricParameterError
from kappa_nc.specfun.hypergeometric import hyp2f1, hyp2f1_asymptotic

ARGUMENTS = [-0.3, -0.9, -1.5, -2.9, -3.5, -25.0, -1e4]


def _reference(a, b, c, w):
    return complex(mpmath.hyp2f1(a, b, c, w))


class TestHyp2f1Values:
    """Every evaluation path against mpmath."""

    @pytest.mark.parametrize("w", ARGUMENTS)
    @pytest.mark.parametrize("b", [1.2, 0.75 + 0.3j, 3.3, 2.0 - 1.5j])
    def test_generic_parameters(self, b, w):
        reference = _reference(0.5, b, 1.5, w)
        result = hyp2f1(0.5, b, 1.5, w)
        assert abs(result.value - reference) <= 1e-9 * max(1.0, abs(reference))

    @pytest.mark.parametrize("w", ARGUMENTS)
    @pytest.mark.parametrize("b", [1.5, 0.5, 2.5, -0.5 + 0j])
    def test_integer_offset_parameters(self, b, w):
        # b - a is an integer: the logarithmic large-argument form
        reference = _reference(0.5, b, 1.5, w)
        result = hyp2f1(0.5, b, 1.5, w)
        assert abs(result.value - reference) <= 1e-9 * max(1.0, abs(reference))

    @pytest.mark.parametrize("x", [0.1, 1.0, 3.0, 40.0, 1e3])
    def test_arctan_identity(self, x):
        assert hyp2f1(0.5, 1.0, 1.5, -x * x).value.real == pytest.approx(
            math.atan(x) / x, rel=1e-10
        )

    @pytest.mark.parametrize("x", [0.2, 2.0, 100.0])
    def test_asinh_identity(self, x):
        assert hyp2f1(0.5, 0.5, 1.5, -x * x).value.real == pytest.approx(
            math.asinh(x) / x, rel=1e-10
        )

    def test_zero_argument(self):
        assert hyp2f1(0.5, 2.0, 1.5, 0.0).value == 1

    @pytest.mark.parametrize("w", [-0.5, -7.0, -1e5])
    def test_terminating_polynomial(self, w):
        # 2F1(1/2, -2; 3/2; w) = 1 - 2w/3 + w^2/5
        expected = 1 - 2 * w / 3 + w * w / 5
        assert hyp2f1(0.5, -2, 1.5, w).value.real == pytest.approx(expected, rel=1e-12)

    def test_error_estimate_and_method(self):
        result = hyp2f1(0.5, 1.2, 1.5, -0.5)
        assert result.method == "series"
        assert 0 <= result.error < 1e-12
        assert hyp2f1(0.5, 1.2, 1.5, -50.0).method in ("inversion", "pfaff")


class TestHyp2f1Errors:
    """Parameter validation."""

    @pytest.mark.parametrize("c", [0, -1, -3.0])
    def test_nonpositive_c(self, c):
        with pytest.raises(HypergeometricParameterError):
            hyp2f1(0.5, 1.0, c, -0.5)

    def test_positive_argument(self):
        with pytest.raises(HypergeometricParameterError):
            hyp2f1(0.5, 1.0, 1.5, 0.5)

    def test_impossible_tolerance(self):
        with pytest.raises(HypergeometricConvergenceError) as info:
            hyp2f1(0.5, 1.2, 1.5, -0.5, tol=1e-30)
        assert info.value.estimate > 0


class TestHyp2f1Asymptotic:
    """Large-argument power laws against the full evaluation."""

    @pytest.mark.parametrize("b", [1.2, 0.75 + 0.3j, 1.5, 0.5, 3.5])
    def test_approaches_full_value(self, b):
        w = -1e8
        full = hyp2f1(0.5, b, 1.5, w).value
        assert hyp2f1_asymptotic(0.5, b, 1.5, w) == pytest.approx(full, rel=1e-5)

    def test_rejects_nonnegative_argument(self):
        with pytest.raises(HypergeometricParameterError):
            hyp2f1_asymptotic(0.5, 1.0, 1.5, 0.0)
