"""Configuration models with validation."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Type, TypeVar

from pydantic import (
    BaseModel,
    Field,
    ValidationError,
    field_serializer,
    field_validator,
    model_validator,
)

from ..core.errors import ConfigurationError

RunConfigT = TypeVar("RunConfigT", bound="RunConfig")

_RATIONAL_MULTIPLE = re.compile(r"^\s*([+-]?\s*\d+(?:/\d+)?|[+-]?)\s*(\*?\s*lambda)?\s*$")


def parse_rational(value: Any) -> Fraction:
    """Parse ``value`` as an exact rational (ints, '7/3', decimal strings)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Boolean is not a rational number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace(" ", ""))
        except ValueError as e:
            raise ValueError(f"Not a rational number: {value!r}") from e
    raise ValueError(f"Not a rational number: {value!r}")


def parse_lambda_multiple(value: Any, lam: Fraction) -> Fraction:
    """Parse a mass parameter written as a rational or a rational multiple of lambda.

    Accepts ``0``, ``2/5``, ``-3lambda``, ``7/3 lambda``, ``-lambda``.
    """
    if not isinstance(value, str):
        return parse_rational(value)
    match = _RATIONAL_MULTIPLE.match(value)
    if not match or (not match.group(1).strip("+- ") and not match.group(2)):
        raise ValueError(f"Cannot parse {value!r} as a rational multiple of lambda")
    coefficient_text = match.group(1).replace(" ", "")
    if coefficient_text in ("", "+"):
        coefficient = Fraction(1)
    elif coefficient_text == "-":
        coefficient = Fraction(-1)
    else:
        coefficient = Fraction(coefficient_text)
    return coefficient * lam if match.group(2) else coefficient


class GroupConfig(BaseModel):
    """Dimension and deformation length of the group and of the function algebra."""

    n: int = Field(default=2, ge=2, le=8, description="Spacetime dimension")
    lam: float = Field(default=0.5, ge=0.0, le=10.0, alias="lambda")

    @property
    def is_commutative(self) -> bool:
        return self.lam == 0.0

    model_config = {"frozen": True, "populate_by_name": True}


class QuadratureSpec(BaseModel):
    """Box-truncated adaptive quadrature parameters."""

    half_width: float = Field(default=12.0, gt=0.0, description="Half-width of the box per axis")
    tol: float = Field(default=1e-10, gt=0.0, lt=1.0)
    limit: int = Field(default=200, ge=10, le=10_000, description="Subdivision limit")

    model_config = {"frozen": True}


class GridSpec(BaseModel):
    """Uniform product grid and numerical tolerances for sampled functions."""

    n0: int = Field(default=256, ge=8, le=8192, description="Points along x0")
    x0_half_width: float = Field(default=20.0, gt=0.0)
    ns: int = Field(default=128, ge=8, le=4096, description="Points along each spatial axis")
    xs_half_width: float = Field(default=20.0, gt=0.0)
    interpolation: Literal["spectral", "cubic", "quintic"] = "spectral"
    band_tolerance: float = Field(default=1e-10, gt=0.0, lt=1.0)
    nyquist_safety: float = Field(default=2.0, ge=1.0)
    support_tolerance: float = Field(default=1e-10, gt=0.0, lt=1.0)
    modular_overflow_budget: float = Field(default=1e12, gt=1.0)

    @field_validator("n0", "ns")
    @classmethod
    def validate_even(cls, v: int) -> int:
        """Grids are centered at 0, which needs an even point count."""
        if v % 2:
            raise ValueError("Grid point counts must be even")
        return v

    @classmethod
    def for_dimension(cls, n: int) -> GridSpec:
        """Default grid for dimension ``n``; n >= 3 uses a coarser spatial grid."""
        if n == 2:
            return cls()
        return cls(n0=160, ns=48, xs_half_width=12.0)

    model_config = {"frozen": True}


class ZetaContext(BaseModel):
    """Parameters of the weighted spectral zeta function."""

    n: int = Field(default=2, ge=2, le=16)
    lam: float = Field(default=0.5, gt=0.0, le=10.0, alias="lambda")
    mu: float = Field(default=1.0, description="Mass regulator, nonzero")
    t: float = Field(default=1.0, ge=-10.0, le=10.0, description="Weight exponent")
    tol: float = Field(default=1e-10, gt=0.0, lt=1e-2)
    pole_floor: float = Field(default=-9.0, le=0.0, ge=-200.0)

    @field_validator("mu")
    @classmethod
    def validate_mu(cls, v: float) -> float:
        if v == 0.0:
            raise ValueError("mu must be a nonzero real number")
        return v

    model_config = {"frozen": True, "populate_by_name": True}


class HomologyParams(BaseModel):
    """Exact parameters of the enveloping algebra complex: T = i*lambda, U = i*mu."""

    n: int = Field(default=2, ge=2, le=6)
    d: int = Field(default=2, ge=0, le=8, description="Total PBW degree bound")
    lam: Fraction = Field(default=Fraction(1), alias="lambda")
    mu: Fraction = Field(default=Fraction(0))

    @model_validator(mode="before")
    @classmethod
    def parse_exact_values(cls, data: Any) -> Any:
        """Turn 'lambda'/'mu' text into exact rationals; mu may be a multiple of lambda."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        lam_key = "lambda" if "lambda" in data else "lam"
        lam = parse_rational(data.get(lam_key, 1))
        data[lam_key] = lam
        if "mu" in data and data["mu"] is not None:
            data["mu"] = parse_lambda_multiple(data["mu"], lam)
        else:
            data.pop("mu", None)
        return data

    @field_validator("lam")
    @classmethod
    def validate_lambda(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise ValueError("lambda must be a positive rational")
        return v

    @field_serializer("lam", "mu")
    def serialize_rational(self, v: Fraction) -> str:
        return str(v)

    model_config = {"frozen": True, "populate_by_name": True, "arbitrary_types_allowed": True}


class RunConfig(BaseModel):
    """Base of all command configurations: JSON file values merged under explicit flags."""

    output_dir: Path = Field(default=Path("kappa-nc-output"))
    verbose: bool = Field(default=False)

    @classmethod
    def resolve(
        cls: Type[RunConfigT],
        config_path: Optional[Path] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ) -> RunConfigT:
        """Build a validated config from an optional JSON file and flag overrides.

        Flags whose value is None were not given and do not override the file.

        Raises:
            ConfigurationError: unreadable file, malformed JSON or invalid values.
        """
        values: Dict[str, Any] = {}
        if config_path is not None:
            try:
                loaded = json.loads(Path(config_path).read_text(encoding="utf-8"))
            except OSError as e:
                raise ConfigurationError(f"Cannot read config file {config_path}: {e}") from e
            except json.JSONDecodeError as e:
                raise ConfigurationError(f"Malformed JSON in {config_path}: {e}") from e
            if not isinstance(loaded, dict):
                raise ConfigurationError(f"Config file {config_path} must hold a JSON object")
            values.update(loaded)

        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value

        try:
            return cls.model_validate(values)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid {cls.__name__}: {e}") from e

    def save_to_file(self, path: Path) -> None:
        """Save configuration to JSON file."""
        path.write_text(self.model_dump_json(indent=2, by_alias=True), encoding="utf-8")

    @classmethod
    def load_from_file(cls: Type[RunConfigT], path: Path) -> RunConfigT:
        """Load configuration from JSON file."""
        return cls.resolve(config_path=path)

    model_config = {
        "str_strip_whitespace": True,
        "validate_assignment": True,
        "populate_by_name": True,
        "extra": "forbid",
    }


@dataclass(frozen=True)
class ZLine:
    """Straight line of evaluation points in the complex plane."""

    start: complex
    end: complex
    count: int

    def __post_init__(self) -> None:
        if not 1 <= self.count <= 100_000:
            raise ValueError(f"z-line point count must be in 1..100000, got {self.count}")

    @classmethod
    def parse(cls, text: str) -> ZLine:
        """Parse ``start:end:count`` with complex numbers written like ``4+0i``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"Expected 'start:end:count', got {text!r}")
        try:
            start = complex(parts[0].strip().replace("i", "j"))
            end = complex(parts[1].strip().replace("i", "j"))
            count = int(parts[2])
        except ValueError as e:
            raise ValueError(f"Cannot parse z-line {text!r}: {e}") from e
        return cls(start=start, end=end, count=count)

    def points(self) -> List[complex]:
        if self.count == 1:
            return [self.start]
        step = (self.end - self.start) / (self.count - 1)
        return [self.start + k * step for k in range(self.count)]


class ZetaRunConfig(RunConfig):
    """Configuration of the ``zeta`` command."""

    n: int = Field(default=2, ge=2, le=16)
    lam: float = Field(default=0.5, gt=0.0, le=10.0, alias="lambda")
    mu: float = Field(default=1.0)
    t: float = Field(default=1.0)
    omega: float = Field(default=1.0, description="Weight value omega(f) entering zeta_f")
    line: Optional[str] = Field(default=None, description="z-scan line 'start:end:count'")
    pole_floor: float = Field(default=-9.0, le=0.0, ge=-200.0)
    residue_radius: float = Field(default=1e-3, gt=0.0, lt=0.25)
    residue_points: int = Field(default=16, ge=4, le=1024)
    tol: float = Field(default=1e-10, gt=0.0, lt=1e-2)
    poles_only: bool = Field(default=False)
    residue_only: bool = Field(default=False)

    @field_validator("line")
    @classmethod
    def validate_line(cls, v: Optional[str]) -> Optional[str]:
        if v is not None:
            ZLine.parse(v)
        return v

    @model_validator(mode="after")
    def validate_context(self) -> ZetaRunConfig:
        """Check the zeta parameters against the owning context model."""
        self.context()
        return self

    def context(self) -> ZetaContext:
        return ZetaContext(
            n=self.n, lam=self.lam, mu=self.mu, t=self.t, tol=self.tol, pole_floor=self.pole_floor
        )

    def z_line(self) -> ZLine:
        if self.line is not None:
            return ZLine.parse(self.line)
        return ZLine(start=complex(self.n + 0.5, 0.0), end=complex(self.n + 4.5, 0.0), count=17)


class StarRunConfig(RunConfig):
    """Configuration of the ``star`` command."""

    n: int = Field(default=2, ge=2, le=3)
    lam: float = Field(default=0.3, ge=0.0, le=2.0, alias="lambda")
    grid: Optional[GridSpec] = Field(default=None)
    seed: int = Field(default=20240611, ge=0)
    tolerance: float = Field(default=1e-6, gt=0.0)
    noncommutativity_floor: float = Field(default=1e-3, ge=0.0)
    kms_scan: bool = Field(default=False)
    save_fixtures: bool = Field(default=False, description="Write f, g, h as .kncg grid files")

    def group(self) -> GroupConfig:
        return GroupConfig(n=self.n, lam=self.lam)

    def resolved_grid(self) -> GridSpec:
        return self.grid if self.grid is not None else GridSpec.for_dimension(self.n)


class HomologyRunConfig(RunConfig):
    """Configuration of the ``homology`` command."""

    n: int = Field(default=2, ge=2, le=6)
    d: int = Field(default=2, ge=0, le=8)
    lam: str = Field(default="1", alias="lambda")
    mu: Optional[str] = Field(default=None, description="Default: -(n-1)lambda")
    mu_scan: bool = Field(default=False)
    mu_list: Optional[List[str]] = Field(default=None)

    @model_validator(mode="after")
    def validate_exact_values(self) -> HomologyRunConfig:
        """Every mu value must parse against lambda."""
        self.params()
        for text in self.mu_list or []:
            parse_lambda_multiple(text, parse_rational(self.lam))
        return self

    def params(self) -> HomologyParams:
        mu = self.mu if self.mu is not None else f"{-(self.n - 1)}lambda"
        return HomologyParams.model_validate(
            {"n": self.n, "d": self.d, "lambda": self.lam, "mu": mu}
        )

    def scan_values(self) -> List[Fraction]:
        """mu values scanned by ``--mu-scan`` or given by ``mu_list``."""
        lam = parse_rational(self.lam)
        if self.mu_list:
            return [parse_lambda_multiple(text, lam) for text in self.mu_list]
        values = [Fraction(0)]
        values += [-(self.n - 1 + k) * lam for k in range(self.d + 2)]
        values.append(Fraction(7, 3) * lam)
        return values


class SpecdimRunConfig(RunConfig):
    """Configuration of the ``specdim`` command."""

    n: int = Field(default=2, ge=2, le=16)
    lam: float = Field(default=0.5, gt=0.0, le=10.0, alias="lambda")
    mu: float = Field(default=1.0)
    t: float = Field(default=1.0, ge=-10.0, le=10.0)
    r2_threshold: float = Field(default=0.999, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def validate_context(self) -> SpecdimRunConfig:
        self.context()
        return self

    def context(self) -> ZetaContext:
        return ZetaContext(n=self.n, lam=self.lam, mu=self.mu, t=self.t)
