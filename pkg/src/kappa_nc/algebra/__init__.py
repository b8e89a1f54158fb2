"""Exact algebra: Q(i) scalars, the PBW enveloping algebra and its twisted homology."""

from .gaussian_rational import GaussianRational
from .homology import (
    ChainVector,
    HochschildChain,
    HomologyReport,
    TwistedComplex,
    homology_report,
    kernel_mu_scan,
    top_kernel,
)
from .linear_algebra import determinant, nullspace, rank
from .pbw import ActionElement, ActionKind, PBWAlgebra, PBWElement

__all__ = [
    "GaussianRational",
    "PBWAlgebra",
    "PBWElement",
    "ActionElement",
    "ActionKind",
    "ChainVector",
    "HochschildChain",
    "TwistedComplex",
    "HomologyReport",
    "homology_report",
    "kernel_mu_scan",
    "top_kernel",
    "rank",
    "nullspace",
    "determinant",
]
