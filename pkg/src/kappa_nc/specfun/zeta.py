"""Weighted spectral zeta function of the deformed Dirac operator.

ζ_f(z) = K_n · I(z) · ω(f) with K_n = 2^[n/2] / (2π)^n and I(z) = (I_c(z) + I_λ(z)) / 2:

* I_c(z) = π^(n/2) |μ|^(n-z) Γ((z-n)/2) / Γ(z/2)
* I_λ(z) = 2 π^((n-1)/2) |μ|^(n-1-z) Γ(β) / Γ(z/2) · λ^-1 ₂F₁(1/2, β; 3/2; -1/(λμ)²),
  β = (z-n+1)/2

μ enters only through μ², so negative μ behaves like |μ|.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from ..core.errors import ConfigurationError, PoleError, ResidueContourError
from ..models.config import ZetaContext
from .gamma import gamma_ratio, nonpositive_integer, rgamma
from .hypergeometric import HypergeometricValue, hyp2f1, hyp2f1_asymptotic

logger = logging.getLogger(__name__)

# Distance below which an evaluation point counts as sitting on a pole.
POLE_SNAP = 1e-12
CLASSICAL_LAMBDAS = (0.4, 0.2, 0.1, 0.05)


class PoleOrigin(str, Enum):
    """Which part of I(z) carries the pole."""
    COMMUTATIVE = "commutative"
    DEFORMED = "deformed"


@dataclass(frozen=True)
class PoleRecord:
    """Simple pole of ζ_f with its residue."""

    location: complex
    residue: complex
    origin: PoleOrigin
    order: int = 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "location": self.location.real,
            "residue": {"re": self.residue.real, "im": self.residue.imag},
            "origin": self.origin.value,
            "order": self.order,
        }


@dataclass(frozen=True)
class ResidueCheck:
    """Analytic residue against the mean of (z - z0) ζ(z) on a circle."""

    location: complex
    analytic: complex
    numeric: complex
    radius: float
    points: int

    @property
    def relative_error(self) -> float:
        scale = abs(self.analytic)
        if scale == 0.0:
            return abs(self.numeric)
        return abs(self.analytic - self.numeric) / scale


@dataclass(frozen=True)
class ZetaSample:
    z: complex
    value: complex
    error: float


@dataclass
class ClassicalLimitRow:
    lam: float
    max_deviation: float
    ratio: Optional[float]
    deformed_term: complex
    deformed_term_asymptotic: complex
    deformed_term_limit: complex


@dataclass
class ClassicalLimitTable:
    """|I(z; λ) - I_c(z)| over a fixed z-grid as λ is halved."""

    z_grid: List[float]
    rows: List[ClassicalLimitRow] = field(default_factory=list)

    @property
    def min_ratio(self) -> float:
        ratios = [row.ratio for row in self.rows if row.ratio is not None]
        return min(ratios) if ratios else math.inf


def spinor_prefactor(n: int) -> float:
    """K_n = 2^[n/2] / (2π)^n."""
    return 2 ** (n // 2) / (2.0 * math.pi) ** n


def dimension_residue_constant(n: int) -> float:
    """c_n = K_n π^(n/2) / Γ(n/2), the residue of ζ_f at z = n per unit weight."""
    return spinor_prefactor(n) * math.pi ** (n / 2) / math.gamma(n / 2)


def _mu_power(ctx: ZetaContext, exponent: complex) -> complex:
    return cmath.exp(exponent * math.log(abs(ctx.mu)))


def _hyp_argument(ctx: ZetaContext) -> float:
    return -1.0 / (ctx.lam * ctx.mu) ** 2


def _commutative_pole_index(z: complex, n: int) -> Optional[int]:
    """m when z = n - 2m is an uncanceled pole of Γ((z-n)/2)/Γ(z/2)."""
    pole = nonpositive_integer((z - n) / 2, snap=POLE_SNAP)
    if pole is None or nonpositive_integer(z / 2, snap=POLE_SNAP) is not None:
        return None
    return -pole


def _deformed_pole_index(z: complex, n: int) -> Optional[int]:
    """m when z = n - 1 - 2m is an uncanceled pole of Γ((z-n+1)/2)/Γ(z/2)."""
    pole = nonpositive_integer((z - n + 1) / 2, snap=POLE_SNAP)
    if pole is None or nonpositive_integer(z / 2, snap=POLE_SNAP) is not None:
        return None
    return -pole


def _commutative_residue_of_I(z0: float, m: int, ctx: ZetaContext) -> complex:
    # Γ((z-n)/2) has residue 2(-1)^m/m! in z at z0 = n - 2m.
    gamma_residue = 2.0 * (-1) ** m / math.factorial(m)
    return math.pi ** (ctx.n / 2) * _mu_power(ctx, ctx.n - z0) * gamma_residue * rgamma(z0 / 2)


def _deformed_residue_of_I(z0: float, m: int, ctx: ZetaContext) -> complex:
    gamma_residue = 2.0 * (-1) ** m / math.factorial(m)
    terminating = hyp2f1(0.5, -m, 1.5, _hyp_argument(ctx), tol=ctx.tol).value
    return (
        2.0
        * math.pi ** ((ctx.n - 1) / 2)
        * _mu_power(ctx, ctx.n - 1 - z0)
        * gamma_residue
        * rgamma(z0 / 2)
        * terminating
        / ctx.lam
    )


def pole_table(ctx: ZetaContext, omega_f: complex = 1.0) -> List[PoleRecord]:
    """All poles of ζ_f with Re z >= ctx.pole_floor, in decreasing order.

    Commutative poles sit at z = n - 2m, deformed ones at z = n - 1 - 2m;
    points where Γ(z/2) also has a pole (z = 0, -2, ...) cancel and are omitted.
    """
    n = ctx.n
    factor = spinor_prefactor(n) * 0.5 * complex(omega_f)
    records: List[PoleRecord] = []

    m = 0
    while n - 2 * m >= ctx.pole_floor:
        z0 = float(n - 2 * m)
        if _commutative_pole_index(complex(z0), n) is not None:
            residue = factor * _commutative_residue_of_I(z0, m, ctx)
            records.append(PoleRecord(complex(z0), residue, PoleOrigin.COMMUTATIVE))
        m += 1

    m = 0
    while n - 1 - 2 * m >= ctx.pole_floor:
        z0 = float(n - 1 - 2 * m)
        if _deformed_pole_index(complex(z0), n) is not None:
            residue = factor * _deformed_residue_of_I(z0, m, ctx)
            records.append(PoleRecord(complex(z0), residue, PoleOrigin.DEFORMED))
        m += 1

    records.sort(key=lambda record: -record.location.real)
    return records


def _pole_record_at(z: complex, ctx: ZetaContext) -> Optional[PoleRecord]:
    n = ctx.n
    m = _commutative_pole_index(z, n)
    factor = spinor_prefactor(n) * 0.5
    if m is not None:
        z0 = float(n - 2 * m)
        return PoleRecord(complex(z0), factor * _commutative_residue_of_I(z0, m, ctx),
                          PoleOrigin.COMMUTATIVE)
    m = _deformed_pole_index(z, n)
    if m is not None:
        z0 = float(n - 1 - 2 * m)
        return PoleRecord(complex(z0), factor * _deformed_residue_of_I(z0, m, ctx),
                          PoleOrigin.DEFORMED)
    return None


def _raise_if_pole(z: complex, ctx: ZetaContext) -> None:
    record = _pole_record_at(z, ctx)
    if record is not None:
        raise PoleError(record)


def I_c(z: complex, ctx: ZetaContext) -> complex:
    """Commutative zeta integral, continued to all z except its poles.

    Raises:
        PoleError: z = n - 2m with z not in {0, -2, ...}
    """
    z = complex(z)
    if _commutative_pole_index(z, ctx.n) is not None:
        _raise_if_pole(z, ctx)
    ratio = gamma_ratio((z - ctx.n) / 2, z / 2)
    return math.pi ** (ctx.n / 2) * _mu_power(ctx, ctx.n - z) * ratio


def _deformed_parts(z: complex, ctx: ZetaContext) -> Tuple[complex, HypergeometricValue]:
    if _deformed_pole_index(z, ctx.n) is not None:
        _raise_if_pole(z, ctx)
    beta = (z - ctx.n + 1) / 2
    prefactor = (
        2.0
        * math.pi ** ((ctx.n - 1) / 2)
        * _mu_power(ctx, ctx.n - 1 - z)
        * gamma_ratio(beta, z / 2)
        / ctx.lam
    )
    return prefactor, hyp2f1(0.5, beta, 1.5, _hyp_argument(ctx), tol=ctx.tol)


def I_lambda(z: complex, ctx: ZetaContext) -> complex:
    """Deformed zeta integral.

    Raises:
        PoleError: z = n - 1 - 2m with z not in {0, -2, ...}
    """
    prefactor, hyp = _deformed_parts(complex(z), ctx)
    return prefactor * hyp.value


def I_total(z: complex, ctx: ZetaContext) -> complex:
    """I(z) = (I_c(z) + I_λ(z)) / 2."""
    return 0.5 * (I_c(z, ctx) + I_lambda(z, ctx))


def zeta_value(omega_f: complex, z: complex, ctx: ZetaContext) -> complex:
    """ζ_f(z) = K_n I(z) ω(f); zero weight gives zero everywhere."""
    if omega_f == 0:
        return 0j
    return spinor_prefactor(ctx.n) * I_total(z, ctx) * complex(omega_f)


def zeta_sample(omega_f: complex, z: complex, ctx: ZetaContext) -> ZetaSample:
    """ζ_f(z) with an absolute error estimate from the ₂F₁ evaluation and rounding."""
    z = complex(z)
    if omega_f == 0:
        return ZetaSample(z, 0j, 0.0)
    commutative = I_c(z, ctx)
    prefactor, hyp = _deformed_parts(z, ctx)
    scale = spinor_prefactor(ctx.n) * 0.5 * abs(complex(omega_f))
    value = spinor_prefactor(ctx.n) * 0.5 * (commutative + prefactor * hyp.value) * omega_f
    error = scale * abs(prefactor) * hyp.error + 16 * np.finfo(float).eps * abs(value)
    return ZetaSample(z, complex(value), float(error))


def zeta_scan(omega_f: complex, points: Sequence[complex], ctx: ZetaContext) -> List[ZetaSample]:
    return [zeta_sample(omega_f, z, ctx) for z in points]


def commutative_zeta_value(omega_f: complex, z: complex, ctx: ZetaContext) -> complex:
    """Undeformed ζ^c_f(z) = K_n I_c(z) ω(f); its residue at z = n is twice that of ζ_f."""
    if omega_f == 0:
        return 0j
    return spinor_prefactor(ctx.n) * I_c(z, ctx) * complex(omega_f)


def residue_check(
    z0: complex,
    ctx: ZetaContext,
    omega_f: complex = 1.0,
    radius: float = 1e-3,
    points: int = 16,
) -> ResidueCheck:
    """Compare the analytic residue at z0 with the circle mean of (z - z0) ζ_f(z).

    Raises:
        ConfigurationError: z0 is not a pole of ζ_f
        ResidueContourError: another pole lies within twice the radius
    """
    z0 = complex(z0)
    record = _pole_record_at(z0, ctx)
    if record is None:
        raise ConfigurationError(f"z0={z0} is not a pole of the zeta function for n={ctx.n}")
    z0 = record.location

    for neighbour in (z0 - 1, z0 + 1, z0 - 2, z0 + 2):
        if _pole_record_at(neighbour, ctx) is not None and abs(neighbour - z0) <= 2 * radius:
            raise ResidueContourError(
                f"Residue circle of radius {radius} at {z0} reaches the pole at {neighbour}"
            )

    analytic = record.residue * complex(omega_f)
    if omega_f == 0:
        return ResidueCheck(z0, 0j, 0j, radius, points)

    total = 0j
    for k in range(points):
        offset = radius * cmath.exp(2j * math.pi * (k + 0.5) / points)
        total += offset * zeta_value(omega_f, z0 + offset, ctx)
    numeric = total / points
    logger.debug(f"Residue at {z0}: analytic {analytic}, numeric {numeric}")
    return ResidueCheck(z0, analytic, numeric, radius, points)


def r_integral(beta: complex, a: float) -> complex:
    """Closed form of ∫_0^∞ ((1-r)² + a²)^(-β) dr, valid for Re β > 1/2 and a > 0."""
    beta = complex(beta)
    if beta.real <= 0.5:
        raise ConfigurationError(f"r-integral needs Re(beta) > 1/2, got {beta}")
    hyp = hyp2f1(0.5, beta, 1.5, -1.0 / a**2)
    head = a * math.sqrt(math.pi) / 2 * gamma_ratio(beta - 0.5, beta)
    return cmath.exp(-2 * beta * math.log(a)) * (head + hyp.value)


def log_radial_symbol(xi0: float, lam: float, mu: float) -> float:
    """log(D0(ξ0)² + μ²) with D0 = (1 - e^(-λξ0))/λ, stable for large |ξ0|."""
    x = lam * xi0
    if x >= -1.0:
        d0 = -math.expm1(-x) / lam
        return math.log(d0 * d0 + mu * mu)
    # e^(-x) dominates: log|D0| = -x + log(1 - e^x) - log λ
    log_d0 = -x + math.log(-math.expm1(x)) - math.log(lam)
    return 2.0 * log_d0 + math.log1p((mu * mu) * math.exp(-2.0 * log_d0))


def _real_quad(func, lower: float, upper: float, tol: float) -> float:
    value, _ = integrate.quad(func, lower, upper, epsabs=0.0, epsrel=tol, limit=400)
    return float(value)


def zeta_integral_quadrature(z: complex, ctx: ZetaContext, tol: float = 1e-11) -> complex:
    """I(z) from the momentum-space integral ∫ e^(-λξ0) (D0² + |ξ|² + μ²)^(-z/2) dⁿξ.

    The spatial directions reduce to a radial integral scaled out of D0² + μ²;
    both remaining one-dimensional integrals run through scipy quad. Valid for Re z > n.
    """
    z = complex(z)
    n = ctx.n
    if z.real <= n:
        raise ConfigurationError(f"quadrature representation needs Re(z) > {n}, got {z}")

    sphere = 2.0 * math.pi ** ((n - 1) / 2) / math.gamma((n - 1) / 2)

    def radial(s: float, part: int) -> float:
        value = s ** (n - 2) * cmath.exp(-z / 2 * math.log1p(s * s))
        return value.real if part == 0 else value.imag

    radial_value = complex(
        _real_quad(lambda s: radial(s, 0), 0.0, np.inf, tol),
        _real_quad(lambda s: radial(s, 1), 0.0, np.inf, tol) if z.imag else 0.0,
    )

    exponent = (n - 1 - z) / 2

    def outer(xi0: float, part: int) -> float:
        log_a = log_radial_symbol(xi0, ctx.lam, ctx.mu)
        value = cmath.exp(-ctx.lam * xi0 + exponent * log_a)
        return value.real if part == 0 else value.imag

    outer_value = 0j
    for lower, upper in ((-np.inf, 0.0), (0.0, np.inf)):
        re = _real_quad(lambda x: outer(x, 0), lower, upper, tol)
        im = _real_quad(lambda x: outer(x, 1), lower, upper, tol) if z.imag else 0.0
        outer_value += complex(re, im)

    return sphere * radial_value * outer_value


def classical_limit_table(
    ctx: ZetaContext,
    lambdas: Sequence[float] = CLASSICAL_LAMBDAS,
    z_grid: Optional[Sequence[float]] = None,
) -> ClassicalLimitTable:
    """Deviation of I(z; λ) from I_c(z) on a z-grid for decreasing λ.

    The deviation scales like λ^(z-n) near the lower grid edge, so halving λ
    shrinks the maximum by about 2. Each row also reports λ^-1 ₂F₁ at z = n+2
    next to its large-argument form and its λ -> 0 limit.
    """
    n = ctx.n
    grid = list(z_grid) if z_grid is not None else [n + 1.0, n + 1.5, n + 2.0, n + 3.0]
    table = ClassicalLimitTable(z_grid=grid)
    z_ref = n + 2.0
    beta = (z_ref - n + 1) / 2
    limit = math.sqrt(math.pi) / 2 * gamma_ratio(beta - 0.5, beta) * abs(ctx.mu)

    previous: Optional[float] = None
    for lam in lambdas:
        scaled = ctx.model_copy(update={"lam": lam})
        deviation = max(abs(I_total(z, scaled) - I_c(z, scaled)) for z in grid)
        w = _hyp_argument(scaled)
        row = ClassicalLimitRow(
            lam=lam,
            max_deviation=deviation,
            ratio=previous / deviation if previous is not None and deviation > 0 else None,
            deformed_term=hyp2f1(0.5, beta, 1.5, w, tol=ctx.tol).value / lam,
            deformed_term_asymptotic=hyp2f1_asymptotic(0.5, beta, 1.5, w) / lam,
            deformed_term_limit=complex(limit),
        )
        table.rows.append(row)
        previous = deviation
    return table


__all__ = [
    "PoleOrigin",
    "PoleRecord",
    "ResidueCheck",
    "ZetaSample",
    "ClassicalLimitRow",
    "ClassicalLimitTable",
    "spinor_prefactor",
    "dimension_residue_constant",
    "pole_table",
    "I_c",
    "I_lambda",
    "I_total",
    "zeta_value",
    "zeta_sample",
    "zeta_scan",
    "commutative_zeta_value",
    "residue_check",
    "r_integral",
    "log_radial_symbol",
    "zeta_integral_quadrature",
    "classical_limit_table",
]
