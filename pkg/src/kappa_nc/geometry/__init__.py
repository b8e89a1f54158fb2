"""Group, function algebra and Dirac calculus of κ-Minkowski space."""

from .dirac import (
    CliffordSet,
    clifford,
    dirac_matrix,
    casimir_value,
    twisted_commutator_multiplier,
)
from .field_algebra import (
    AxisMultiplier,
    GridFunction,
    WeightValue,
    gaussian_fixtures,
    involution,
    modular_shift,
    star_product,
    weight_omega,
)
from .lie_group import GroupElement, MeasureSide, invariance_residual

__all__ = [
    "GroupElement",
    "MeasureSide",
    "invariance_residual",
    "GridFunction",
    "WeightValue",
    "AxisMultiplier",
    "star_product",
    "involution",
    "weight_omega",
    "modular_shift",
    "gaussian_fixtures",
    "CliffordSet",
    "clifford",
    "dirac_matrix",
    "casimir_value",
    "twisted_commutator_multiplier",
]
