"""Gauss hypergeometric function 2F1(a, b; c; w) on the negative real axis.

Evaluation paths, chosen by |w|:

* ``series``: direct Maclaurin series, |w| <= 0.9
* ``pfaff``: Pfaff transformation to w/(w-1) in (0.47, 0.75], 0.9 < |w| <= 3
* ``inversion``: two-term 1/w connection formula, |w| > 3
* ``degenerate``: logarithmic 1/w form when b - a is an integer
* ``terminating``: a or b a nonpositive integer (polynomial in w)
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

from ..core.errors import HypergeometricConvergenceError, HypergeometricParameterError
from .gamma import (
    digamma,
    gamma_fn,
    nonpositive_integer,
    pochhammer,
    psi_over_gamma,
    rgamma,
)

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]

SERIES_RADIUS = 0.9
PFAFF_RADIUS = 3.0
DEGENERATE_SNAP = 1e-10
MAX_TERMS = 5000
MAX_FALLBACK_TERMS = 200_000

_EPS = 2.0**-52


@dataclass(frozen=True)
class HypergeometricValue:
    """2F1 value with an absolute error estimate and the path that produced it."""

    value: complex
    error: float
    method: str


def _series(
    a: complex, b: complex, c: complex, x: float, max_terms: int = MAX_TERMS
) -> Tuple[complex, float]:
    """Maclaurin series; returns (sum, absolute error estimate)."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    magnitude = 1.0
    small_in_a_row = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        magnitude += abs(term)
        if term == 0:
            return total, _EPS * magnitude
        if abs(term) <= _EPS * abs(total):
            small_in_a_row += 1
            if small_in_a_row == 2:
                return total, abs(term) + 4 * _EPS * magnitude
        else:
            small_in_a_row = 0
    raise HypergeometricConvergenceError(
        f"2F1 series at x={x} did not converge in {max_terms} terms", abs(term)
    )


def _terminating(a: complex, b: complex, c: complex, w: float) -> HypergeometricValue:
    value, error = _series(a, b, c, w, max_terms=MAX_FALLBACK_TERMS)
    return HypergeometricValue(value, error, "terminating")


def _pfaff(
    a: complex, b: complex, c: complex, w: float, max_terms: int = MAX_TERMS
) -> HypergeometricValue:
    x = w / (w - 1.0)
    inner, error = _series(a, c - b, c, x, max_terms=max_terms)
    factor = cmath.exp(-a * math.log1p(-w))
    return HypergeometricValue(factor * inner, abs(factor) * error, "pfaff")


def _inversion(a: complex, b: complex, c: complex, w: float) -> HypergeometricValue:
    """Two-term connection formula around w = infinity, b - a not an integer."""
    y = 1.0 / w
    log_minus_w = math.log(-w)
    gamma_c = gamma_fn(c)

    coefficient_a = gamma_c * gamma_fn(b - a) * rgamma(b) * rgamma(c - a)
    coefficient_b = gamma_c * gamma_fn(a - b) * rgamma(a) * rgamma(c - b)
    series_a, error_a = _series(a, a - c + 1, a - b + 1, y)
    series_b, error_b = _series(b, b - c + 1, b - a + 1, y)
    term_a = coefficient_a * cmath.exp(-a * log_minus_w) * series_a
    term_b = coefficient_b * cmath.exp(-b * log_minus_w) * series_b

    error = (
        abs(coefficient_a * cmath.exp(-a * log_minus_w)) * error_a
        + abs(coefficient_b * cmath.exp(-b * log_minus_w)) * error_b
        + 8 * _EPS * (abs(term_a) + abs(term_b))
    )
    return HypergeometricValue(term_a + term_b, error, "inversion")


def _degenerate(a: complex, m: int, c: complex, w: float) -> HypergeometricValue:
    """2F1(a, a+m; c; w) for integer m >= 0 and w < -1 (logarithmic case)."""
    y = 1.0 / w
    log_minus_w = math.log(-w)
    prefactor = cmath.exp(-a * log_minus_w) * gamma_fn(c)

    finite = 0j
    for k in range(m):
        weight = pochhammer(a, k) * math.factorial(m - k - 1) / math.factorial(k)
        finite += weight * rgamma(c - a - k) * y**k
    finite *= rgamma(a + m)

    infinite = 0j
    magnitude = 0.0
    term = 0j
    small_in_a_row = 0
    for k in range(MAX_TERMS):
        x = c - a - k - m
        bracket = log_minus_w + digamma(1 + m + k) + digamma(1 + k) - digamma(a + m + k)
        weight = pochhammer(a + m, k) / (math.factorial(k) * math.factorial(k + m))
        term = weight * (-1) ** k * y ** (k + m) * (rgamma(x) * bracket - psi_over_gamma(x))
        infinite += term
        magnitude += abs(term)
        if abs(term) <= _EPS * abs(infinite):
            small_in_a_row += 1
            if small_in_a_row == 2:
                break
        else:
            small_in_a_row = 0
    else:
        raise HypergeometricConvergenceError(
            f"degenerate 2F1 expansion at w={w} did not converge", abs(term)
        )
    infinite *= rgamma(a)

    value = prefactor * (finite + infinite)
    error = abs(prefactor) * (abs(term) + 8 * _EPS * (magnitude + abs(finite)))
    return HypergeometricValue(value, error, "degenerate")


def _integer_offset(a: complex, b: complex) -> Union[int, None]:
    difference = complex(b) - complex(a)
    m = round(difference.real)
    if abs(difference - m) <= DEGENERATE_SNAP:
        return int(m)
    return None


def hyp2f1(a: Number, b: Number, c: Number, w: float, tol: float = 1e-10) -> HypergeometricValue:
    """Evaluate 2F1(a, b; c; w) for real w <= 0.

    Args:
        a, b, c: Complex parameters
        w: Real argument, w <= 0
        tol: Largest acceptable relative error estimate

    Returns:
        Value, absolute error estimate and evaluation path

    Raises:
        HypergeometricParameterError: c is a nonpositive integer, or w > 0
        HypergeometricConvergenceError: error estimate above tol on every path
    """
    a, b, c = complex(a), complex(b), complex(c)
    w = float(w)
    if nonpositive_integer(c) is not None:
        raise HypergeometricParameterError(f"2F1 lower parameter c={c} is a nonpositive integer")
    if w > 0.0:
        raise HypergeometricParameterError(f"2F1 argument must be <= 0, got w={w}")
    if w == 0.0:
        return HypergeometricValue(1.0 + 0j, 0.0, "series")

    pole_a, pole_b = nonpositive_integer(a), nonpositive_integer(b)
    if pole_a is not None or pole_b is not None:
        a = complex(pole_a) if pole_a is not None else a
        b = complex(pole_b) if pole_b is not None else b
        result = _terminating(a, b, c, w)
    elif abs(w) <= SERIES_RADIUS:
        value, error = _series(a, b, c, w)
        result = HypergeometricValue(value, error, "series")
    elif abs(w) <= PFAFF_RADIUS:
        result = _pfaff(a, b, c, w)
    else:
        m = _integer_offset(a, b)
        if m is None:
            result = _inversion(a, b, c, w)
        elif m >= 0:
            result = _degenerate(a, m, c, w)
        else:
            result = _degenerate(b, -m, c, w)

    scale = max(1.0, abs(result.value))
    if result.error > tol * scale and result.method in ("inversion", "degenerate"):
        logger.debug(
            f"2F1({a}, {b}; {c}; {w}) {result.method} estimate {result.error:.2e}, "
            "retrying with the Pfaff series"
        )
        result = _pfaff(a, b, c, w, max_terms=MAX_FALLBACK_TERMS)
    if result.error > tol * scale:
        raise HypergeometricConvergenceError(
            f"2F1({a}, {b}; {c}; {w}) via {result.method} missed tolerance {tol}", result.error
        )
    return result


def hyp2f1_asymptotic(a: Number, b: Number, c: Number, w: float) -> complex:
    """Leading large-|w| behaviour of 2F1(a, b; c; w) as w -> -infinity.

    Non-degenerate parameters give the two power laws (-w)^-a and (-w)^-b;
    b - a = m integer gives the leading term of the logarithmic form.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if w >= 0.0:
        raise HypergeometricParameterError(f"asymptotic form needs w < 0, got w={w}")
    log_minus_w = math.log(-w)
    gamma_c = gamma_fn(c)
    m = _integer_offset(a, b)
    if m is None:
        return gamma_c * (
            gamma_fn(b - a) * rgamma(b) * rgamma(c - a) * cmath.exp(-a * log_minus_w)
            + gamma_fn(a - b) * rgamma(a) * rgamma(c - b) * cmath.exp(-b * log_minus_w)
        )
    if m < 0:
        a, m = b, -m
    if m > 0:
        leading = math.factorial(m - 1) * rgamma(a + m) * rgamma(c - a)
        return gamma_c * leading * cmath.exp(-a * log_minus_w)
    bracket = log_minus_w + 2 * digamma(1) - digamma(a)
    return gamma_c * rgamma(a) * cmath.exp(-a * log_minus_w) * (
        rgamma(c - a) * bracket - psi_over_gamma(c - a)
    )


__all__ = ["HypergeometricValue", "hyp2f1", "hyp2f1_asymptotic"]
