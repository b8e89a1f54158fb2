"""Exception hierarchy shared by the library and the command-line interface."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Optional

if TYPE_CHECKING:
    from ..specfun.zeta import PoleRecord


class KappaError(Exception):
    """Base class for all kappa-nc errors."""


class ConfigurationError(KappaError, ValueError):
    """Invalid parameters or configuration file contents."""


class NumericalError(KappaError):
    """A numerical evaluation failed or could not certify its tolerance."""


class QuadratureDomainError(NumericalError):
    """The integrand is not negligible on the boundary of the quadrature box."""


class BandLimitError(NumericalError):
    """Axis-0 frequency content escapes the declared band or the grid cannot resolve it."""


class SupportOverflowError(NumericalError):
    """Spatially rescaled sample points leave the grid where the function is not small."""


class ModularOverflowError(NumericalError):
    """The modular multiplier exp(|s| lambda B) exceeds the overflow budget."""


class GammaPoleError(NumericalError, ValueError):
    """Gamma function evaluated at a nonpositive integer."""

    def __init__(self, z: complex):
        super().__init__(f"Gamma function has a pole at z={z}")
        self.z = z


class HypergeometricParameterError(NumericalError, ValueError):
    """The lower parameter c of 2F1 is a nonpositive integer."""


class HypergeometricConvergenceError(NumericalError):
    """A 2F1 evaluation path did not reach the requested tolerance."""

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate


class PoleError(NumericalError):
    """Evaluation requested exactly at a pole of the zeta integral."""

    def __init__(self, record: "PoleRecord"):
        super().__init__(
            f"z={record.location} is a {record.origin} pole (residue {record.residue})"
        )
        self.record = record


class ResidueContourError(NumericalError):
    """The residue circle encloses or touches another pole."""


class ClassifierInconclusiveError(NumericalError):
    """Tail-exponent fit of the convergence classifier is not reliable."""

    def __init__(self, message: str, r_squared: Optional[float] = None):
        super().__init__(message)
        self.r_squared = r_squared


class ToleranceExceededError(NumericalError):
    """A verification suite produced a residual above its tolerance."""

    def __init__(self, failures: dict[str, Any]):
        names = ", ".join(sorted(failures))
        super().__init__(f"Residuals above tolerance: {names}")
        self.failures = failures


class ChainComplexDefect(KappaError):
    """The truncated chain complex violated one of its structural invariants."""


__all__ = [
    "KappaError",
    "ConfigurationError",
    "NumericalError",
    "QuadratureDomainError",
    "BandLimitError",
    "SupportOverflowError",
    "ModularOverflowError",
    "GammaPoleError",
    "HypergeometricParameterError",
    "HypergeometricConvergenceError",
    "PoleError",
    "ResidueContourError",
    "ClassifierInconclusiveError",
    "ToleranceExceededError",
    "ChainComplexDefect",
]
