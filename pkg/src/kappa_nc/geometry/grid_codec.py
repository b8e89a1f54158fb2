"""Binary container for GridFunction fixtures.

Layout: ``KNCG`` magic, uint32 little-endian header length, UTF-8 JSON header,
then the samples as little-endian complex64 in C order.
"""

from __future__ import annotations

import json
import logging
import struct
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..core.errors import ConfigurationError
from ..models.config import GridSpec, GroupConfig
from .field_algebra import GridFunction

logger = logging.getLogger(__name__)

MAGIC = b"KNCG"
FORMAT_VERSION = 1
SAMPLE_DTYPE = np.dtype("<c8")
_LENGTH = struct.Struct("<I")


class GridHeader(BaseModel):
    """JSON header of an encoded grid function."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    version: int = Field(default=FORMAT_VERSION)
    n: int = Field(..., ge=2)
    lam: float = Field(..., ge=0.0, alias="lambda")
    band_limit: float = Field(..., ge=0.0)
    shape: Tuple[int, ...]
    grid: GridSpec
    dtype: str = Field(default=SAMPLE_DTYPE.str)

    @classmethod
    def describe(cls, f: GridFunction) -> GridHeader:
        return cls(
            n=f.n,
            lam=f.cfg.lam,
            band_limit=f.band_limit,
            shape=tuple(f.samples.shape),
            grid=f.grid,
        )


def encode(f: GridFunction) -> bytes:
    header = GridHeader.describe(f).model_dump_json(by_alias=True).encode("utf-8")
    body = np.ascontiguousarray(f.samples, dtype=SAMPLE_DTYPE).tobytes()
    return MAGIC + _LENGTH.pack(len(header)) + header + body


def decode(data: bytes, validate: bool = True) -> GridFunction:
    """Rebuild a GridFunction; samples come back at complex64 precision.

    Raises:
        ConfigurationError: bad magic, truncated data or an invalid header
    """
    if len(data) < len(MAGIC) + _LENGTH.size or not data.startswith(MAGIC):
        raise ConfigurationError("Not a kappa-nc grid container (bad magic)")
    offset = len(MAGIC)
    (length,) = _LENGTH.unpack_from(data, offset)
    offset += _LENGTH.size
    try:
        header = GridHeader.model_validate(json.loads(data[offset : offset + length]))
    except (json.JSONDecodeError, UnicodeDecodeError, ValidationError) as e:
        raise ConfigurationError(f"Invalid grid container header: {e}") from e
    if header.version != FORMAT_VERSION:
        raise ConfigurationError(f"Unsupported grid container version {header.version}")
    offset += length

    count = int(np.prod(header.shape))
    expected = count * SAMPLE_DTYPE.itemsize
    if len(data) - offset != expected:
        raise ConfigurationError(
            f"Grid container holds {len(data) - offset} sample bytes, expected {expected}"
        )
    samples = np.frombuffer(data, dtype=SAMPLE_DTYPE, count=count, offset=offset)
    f = GridFunction(
        GroupConfig(n=header.n, lam=header.lam),
        header.grid,
        samples.reshape(header.shape).astype(complex),
        header.band_limit,
        check_band=validate,
    )
    return f


def save(f: GridFunction, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(encode(f))
    logger.debug(f"Wrote grid function {f.samples.shape} to {target}")
    return target


def load(path: Union[str, Path], validate: bool = True) -> GridFunction:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ConfigurationError(f"Cannot read grid container {path}: {e}") from e
    return decode(data, validate=validate)


__all__ = ["MAGIC", "FORMAT_VERSION", "GridHeader", "encode", "decode", "save", "load"]
