"""Report envelope written by every kappa-nc command."""

from __future__ import annotations

import json
import logging
import uuid
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from .. import __version__
from .config import RunConfig

logger = logging.getLogger(__name__)


class ReportKind(str, Enum):
    """Report types, one per command output file."""
    ZETA_POLES = "zeta_poles"
    ZETA_RESIDUES = "zeta_residues"
    ZETA_CLASSICAL_LIMIT = "zeta_classical_limit"
    STAR_SUITE = "star_suite"
    HOMOLOGY = "homology"
    SPECTRAL_DIMENSION = "spectral_dimension"


def _jsonable(value: Any) -> Any:
    """Convert complex numbers and numpy scalars in ``value`` to JSON-friendly values."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if hasattr(value, "item") and callable(value.item):
        return _jsonable(value.item())
    return value


class ReportEnvelope(BaseModel):
    """Self-describing report: resolved config, seed, timings and payload."""

    report_id: str = Field(default_factory=lambda: str(uuid.uuid4()))
    kind: ReportKind = Field(..., description="Type of report")
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    version: str = Field(default=__version__)
    config: Dict[str, Any] = Field(default_factory=dict, description="Fully resolved run config")
    seed: Optional[int] = Field(default=None, description="Fixture seed, if any")
    timings: Dict[str, Any] = Field(default_factory=dict)
    payload: Any = Field(default_factory=dict)

    @classmethod
    def create(
        cls,
        kind: ReportKind,
        config: RunConfig,
        payload: Any,
        timings: Optional[Dict[str, Any]] = None,
        seed: Optional[int] = None,
    ) -> ReportEnvelope:
        """Create a report for ``config``.

        Args:
            kind: Report type
            config: Resolved run configuration, embedded verbatim
            payload: Command-specific results; complex numbers become {re, im}
            timings: PerformanceMonitor summaries keyed by suite name
            seed: Fixture seed used by the command
        """
        return cls(
            kind=kind,
            config=json.loads(config.model_dump_json(by_alias=True)),
            payload=_jsonable(payload),
            timings=_jsonable(timings or {}),
            seed=seed,
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, json_str: str) -> ReportEnvelope:
        """Deserialize a report; raises ValidationError on malformed input."""
        return cls.model_validate_json(json_str)

    def write(self, path: Path) -> Path:
        """Write the report as JSON, creating parent directories."""
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")
        logger.debug(f"Wrote {self.kind} report to {path}")
        return path

    model_config = {
        "use_enum_values": True,
    }
