"""Solvable group underlying κ-Minkowski space, in (a0, ā) coordinates."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy import integrate

from ..core.errors import ConfigurationError, QuadratureDomainError
from ..models.config import GroupConfig, QuadratureSpec

logger = logging.getLogger(__name__)


class MeasureSide(str, Enum):
    """Which invariant measure."""
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class GroupElement:
    """Group element (a0, ā) with ā of length n - 1."""

    a0: float
    avec: Tuple[float, ...]

    @classmethod
    def identity(cls, n: int) -> GroupElement:
        return cls(0.0, (0.0,) * (n - 1))

    @classmethod
    def of(cls, a0: float, avec: Sequence[float]) -> GroupElement:
        return cls(float(a0), tuple(float(x) for x in avec))

    @property
    def dimension(self) -> int:
        return 1 + len(self.avec)

    def as_array(self) -> np.ndarray:
        return np.array((self.a0, *self.avec))


TestFunction = Callable[[GroupElement], float]


def _check_dimension(a: GroupElement, cfg: GroupConfig) -> None:
    if a.dimension != cfg.n:
        raise ConfigurationError(f"Group element of dimension {a.dimension} used with n={cfg.n}")


def multiply(a: GroupElement, b: GroupElement, cfg: GroupConfig) -> GroupElement:
    """Group law (a0 + b0, ā + e^(-λa0) b̄)."""
    _check_dimension(a, cfg)
    _check_dimension(b, cfg)
    if cfg.is_commutative:
        return GroupElement(a.a0 + b.a0, tuple(x + y for x, y in zip(a.avec, b.avec)))
    scale = math.exp(-cfg.lam * a.a0)
    return GroupElement(a.a0 + b.a0, tuple(x + scale * y for x, y in zip(a.avec, b.avec)))


def inverse(a: GroupElement, cfg: GroupConfig) -> GroupElement:
    """(-a0, -e^(λa0) ā)."""
    _check_dimension(a, cfg)
    if cfg.is_commutative:
        return GroupElement(-a.a0, tuple(-x for x in a.avec))
    scale = math.exp(cfg.lam * a.a0)
    return GroupElement(-a.a0, tuple(-scale * x for x in a.avec))


def measure_density(side: MeasureSide, a: GroupElement, cfg: GroupConfig) -> float:
    """Density of the left (e^(λ(n-1)a0)) or right (1) invariant measure."""
    side = MeasureSide(side)
    if side is MeasureSide.RIGHT or cfg.is_commutative:
        return 1.0
    return math.exp(cfg.lam * (cfg.n - 1) * a.a0)


def modular_function(a: GroupElement, cfg: GroupConfig) -> float:
    """Ratio of the left to the right density."""
    return measure_density(MeasureSide.LEFT, a, cfg) / measure_density(MeasureSide.RIGHT, a, cfg)


def _boundary_points(n: int, half_width: float) -> np.ndarray:
    per_axis = 9 if n <= 3 else 3
    axis = np.linspace(-half_width, half_width, per_axis)
    points = []
    for fixed_axis in range(n):
        for value in (-half_width, half_width):
            for rest in itertools.product(axis, repeat=n - 1):
                point = list(rest)
                point.insert(fixed_axis, value)
                points.append(point)
    return np.array(points)


def invariance_residual(
    f: TestFunction,
    side: MeasureSide,
    shift: GroupElement,
    cfg: GroupConfig,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """|∫ f(shifted b) dμ(b) - ∫ f(b) dμ(b)| over the box [-h, h]^n.

    The left measure is tested with b -> shift·b, the right one with b -> b·shift.

    Raises:
        QuadratureDomainError: either integrand is not below ``quad.tol`` on the box boundary
    """
    side = MeasureSide(side)
    _check_dimension(shift, cfg)

    def shifted(b: GroupElement) -> GroupElement:
        if side is MeasureSide.LEFT:
            return multiply(shift, b, cfg)
        return multiply(b, shift, cfg)

    def plain_integrand(*coordinates: float) -> float:
        b = GroupElement(coordinates[0], tuple(coordinates[1:]))
        return f(b) * measure_density(side, b, cfg)

    def shifted_integrand(*coordinates: float) -> float:
        b = GroupElement(coordinates[0], tuple(coordinates[1:]))
        return f(shifted(b)) * measure_density(side, b, cfg)

    boundary = _boundary_points(cfg.n, quad.half_width)
    for name, integrand in (("f", plain_integrand), ("shifted f", shifted_integrand)):
        edge = max(abs(integrand(*point)) for point in boundary)
        if edge > quad.tol:
            raise QuadratureDomainError(
                f"{name} reaches {edge:.3e} on the boundary of [-{quad.half_width}, "
                f"{quad.half_width}]^{cfg.n}; enlarge the quadrature box"
            )

    ranges = [(-quad.half_width, quad.half_width)] * cfg.n
    options = {"epsabs": quad.tol, "epsrel": quad.tol, "limit": quad.limit}
    plain, _ = integrate.nquad(plain_integrand, ranges, opts=options)
    moved, _ = integrate.nquad(shifted_integrand, ranges, opts=options)
    residual = abs(moved - plain)
    logger.debug(f"{side.value} invariance residual {residual:.3e} (integral {plain:.12g})")
    return float(residual)


__all__ = [
    "MeasureSide",
    "GroupElement",
    "multiply",
    "inverse",
    "measure_density",
    "modular_function",
    "invariance_residual",
]
