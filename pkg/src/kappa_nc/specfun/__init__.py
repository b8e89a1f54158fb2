"""Special functions and the weighted spectral zeta function."""

from .gamma import gamma_fn, gamma_ratio, rgamma
from .hypergeometric import HypergeometricValue, hyp2f1
from .zeta import (
    PoleRecord,
    ResidueCheck,
    I_c,
    I_lambda,
    I_total,
    pole_table,
    residue_check,
    zeta_value,
)

__all__ = [
    "gamma_fn",
    "rgamma",
    "gamma_ratio",
    "HypergeometricValue",
    "hyp2f1",
    "PoleRecord",
    "ResidueCheck",
    "I_c",
    "I_lambda",
    "I_total",
    "pole_table",
    "residue_check",
    "zeta_value",
]
