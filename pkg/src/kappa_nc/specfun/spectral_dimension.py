"""Spectral-dimension scan: where the weighted trace of (D² + μ²)^(-s/2) becomes finite.

After the spatial momenta are integrated out, summability at s reduces to the
integrability over ξ0 of

    Ĩ_t(s)(ξ0) = e^(-tλξ0) (D0(ξ0)² + μ²)^(-(s - n + 1)/2).

The ξ0 -> +∞ tail decays iff t > 0; the ξ0 -> -∞ tail decays like
exp(-(s - (n-1) - t) λ |ξ0|). The classifier fits that tail exponent.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy import stats

from ..core.errors import ClassifierInconclusiveError
from ..geometry.field_algebra import AxisMultiplier
from ..models.config import ZetaContext
from .zeta import log_radial_symbol

logger = logging.getLogger(__name__)

WINDOW_SCALES = (20.0, 40.0, 80.0)
DIVERGENCE_SLOPE = -1e-3
R2_THRESHOLD = 0.999
FLAT_RMS = 1e-9
BISECTION_WIDTH = 1e-4
SAMPLES_PER_WINDOW = 257


@dataclass(frozen=True)
class TailFit:
    """Least-squares line through log Ĩ_t on the outer octave of a window."""

    window: float
    slope: float
    r_squared: float
    rms: float

    @property
    def divergent(self) -> bool:
        return self.slope >= DIVERGENCE_SLOPE


@dataclass
class SpectralDimensionResult:
    t: float
    summable: bool
    p_estimate: Optional[float]
    expected: Optional[float]
    bisection_steps: int = 0
    fits: List[TailFit] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "summable": self.summable,
            "p_estimate": self.p_estimate,
            "expected": self.expected,
            "bisection_steps": self.bisection_steps,
        }


def log_integrand(xi0: np.ndarray, s: float, ctx: ZetaContext) -> np.ndarray:
    """log Ĩ_t(s) at the points ``xi0``."""
    log_a = np.array([log_radial_symbol(float(x), ctx.lam, ctx.mu) for x in np.ravel(xi0)])
    return -ctx.t * ctx.lam * np.ravel(xi0) - 0.5 * (s - (ctx.n - 1)) * log_a


def fit_tail(
    s: float,
    ctx: ZetaContext,
    window: float,
    r2_threshold: float = R2_THRESHOLD,
    strict: bool = True,
) -> TailFit:
    """Fit d log Ĩ_t / d|ξ0| on ξ0 in [-window, -window/2].

    Raises:
        ClassifierInconclusiveError: ``strict`` and the fit is neither linear (R²) nor flat
    """
    tail = np.linspace(-window, -window / 2, SAMPLES_PER_WINDOW)
    log_tail = log_integrand(tail, s, ctx)
    fit = stats.linregress(-tail, log_tail)
    residual = log_tail - (fit.intercept + fit.slope * (-tail))
    rms = float(np.sqrt(np.mean(residual**2)))
    r_squared = float(fit.rvalue**2) if np.isfinite(fit.rvalue) else 0.0

    flat = rms <= FLAT_RMS * max(1.0, float(np.max(np.abs(log_tail))))
    if strict and r_squared < r2_threshold and not flat:
        raise ClassifierInconclusiveError(
            f"Tail fit at s={s:.6f}, L={window:.3g} has R^2={r_squared:.6f} (rms {rms:.2e})",
            r_squared=r_squared,
        )
    return TailFit(window, float(fit.slope), r_squared, rms)


def classify(
    s: float,
    ctx: ZetaContext,
    scales: Sequence[float] = WINDOW_SCALES,
    r2_threshold: float = R2_THRESHOLD,
) -> List[TailFit]:
    """Tail fits at s for windows L = scale/λ; the largest window decides.

    Smaller windows still carry e^(-λL) corrections and are kept as diagnostics only.
    """
    fits = [
        fit_tail(s, ctx, scale / ctx.lam, r2_threshold, strict=index == len(scales) - 1)
        for index, scale in enumerate(scales)
    ]
    logger.debug(
        f"s={s:.6f}: slopes {[round(fit.slope, 6) for fit in fits]} "
        f"-> {'divergent' if fits[-1].divergent else 'convergent'}"
    )
    return fits


def spectral_dimension_scan(
    ctx: ZetaContext,
    r2_threshold: float = R2_THRESHOLD,
    width: float = BISECTION_WIDTH,
) -> SpectralDimensionResult:
    """Locate the summability threshold p of the weighted trace.

    t <= 0 is never summable (the ξ0 -> +∞ tail does not decay). Otherwise the
    boundary is bisected between s = n - 1 (always divergent) and an upper
    bracket grown until the classifier reports convergence.
    """
    t = ctx.t
    if t <= 0:
        logger.info(f"t={t} <= 0: the positive tail does not decay, not summable")
        return SpectralDimensionResult(t=t, summable=False, p_estimate=None, expected=None)

    lower = float(ctx.n - 1)
    offset = 1.0
    upper = lower + offset
    steps = 0
    while classify(upper, ctx, r2_threshold=r2_threshold)[-1].divergent:
        lower = upper
        offset *= 2.0
        upper = lower + offset
        steps += 1
        if offset > 1e6:
            raise ClassifierInconclusiveError(f"No convergent bracket found below s={upper}")

    fits: List[TailFit] = []
    while upper - lower > width:
        middle = 0.5 * (lower + upper)
        fits = classify(middle, ctx, r2_threshold=r2_threshold)
        if fits[-1].divergent:
            lower = middle
        else:
            upper = middle
        steps += 1

    estimate = 0.5 * (lower + upper)
    expected = ctx.n - 1 + t
    logger.info(f"Spectral dimension estimate {estimate:.5f} (expected {expected})")
    return SpectralDimensionResult(
        t=t,
        summable=True,
        p_estimate=estimate,
        expected=expected,
        bisection_steps=steps,
        fits=fits,
    )


def modular_composition_check(n: int, lam: float, t: float) -> float:
    """Exponent of σ_i^Φt ∘ σ^p on axis 0, p = n - 1 + t.

    The weight flow contributes e^(tλp0) and σ^p contributes e^(-pλp0); the
    composite is e^(-(n-1)λp0), independent of t.
    """
    if lam == 0:
        return 0.0
    weight_flow = AxisMultiplier(shift=complex(0.0, -t * lam))
    modular_power = AxisMultiplier(shift=complex(0.0, (n - 1 + t) * lam))
    exponent = weight_flow.compose(modular_power).growth_rate
    return 0.0 if math.isclose(exponent, 0.0, abs_tol=1e-15) else exponent


__all__ = [
    "TailFit",
    "SpectralDimensionResult",
    "log_integrand",
    "fit_tail",
    "classify",
    "spectral_dimension_scan",
    "modular_composition_check",
]
