"""Parameter records, run configurations and report models."""

from .config import (
    GridSpec,
    GroupConfig,
    HomologyParams,
    HomologyRunConfig,
    QuadratureSpec,
    RunConfig,
    SpecdimRunConfig,
    StarRunConfig,
    ZetaContext,
    ZetaRunConfig,
    ZLine,
    parse_lambda_multiple,
    parse_rational,
)
from .reports import ReportEnvelope, ReportKind

__all__ = [
    "GridSpec",
    "GroupConfig",
    "HomologyParams",
    "HomologyRunConfig",
    "QuadratureSpec",
    "RunConfig",
    "SpecdimRunConfig",
    "StarRunConfig",
    "ZetaContext",
    "ZetaRunConfig",
    "ZLine",
    "parse_lambda_multiple",
    "parse_rational",
    "ReportEnvelope",
    "ReportKind",
]
