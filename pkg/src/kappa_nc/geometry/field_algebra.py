"""Sampled test-function algebra: star product, involution, weight and modular flow.

Functions are sampled on the product grid x0_m = -L0 + m h0 (m < N0) times n - 1
spatial grids x_j = -Ls + j hs (j < Ns). Axis-0 Fourier data uses numpy's FFT
ordering with frequencies p_k = 2π fftfreq(N0, h0), so that

    f(x0_m, x) = (1/N0) Σ_k e^(2πikm/N0) FFT0(f)_k(x).

Band limits are declared per function and checked after every operation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import InitVar, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import interpolate

from ..core.errors import (
    BandLimitError,
    ConfigurationError,
    ModularOverflowError,
    SupportOverflowError,
)
from ..core.workers import chunked, parallel_map, worker_count
from ..models.config import GridSpec, GroupConfig

logger = logging.getLogger(__name__)

X0_WIDTH = 3.0
SPATIAL_WIDTH = 1.2
# Gaussian band edge in units of 1/width: the spectrum there is e^(-18) of its peak.
BAND_SIGMAS = 6.0


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples of a test function with compact axis-0 frequency support.

    Construction runs ``validate`` unless ``check_band`` is False.
    """

    cfg: GroupConfig
    grid: GridSpec
    samples: np.ndarray
    band_limit: float
    check_band: InitVar[bool] = True

    def __post_init__(self, check_band: bool) -> None:
        samples = np.array(self.samples, dtype=complex)
        expected = (self.grid.n0,) + (self.grid.ns,) * (self.cfg.n - 1)
        if samples.shape != expected:
            raise ConfigurationError(f"Samples of shape {samples.shape}, expected {expected}")
        if self.band_limit < 0:
            raise ConfigurationError(f"Band limit must be >= 0, got {self.band_limit}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        if check_band:
            self.validate()

    @classmethod
    def from_callable(
        cls,
        cfg: GroupConfig,
        grid: GridSpec,
        func: Callable[..., np.ndarray],
        band_limit: float,
    ) -> GridFunction:
        """Sample ``func(x0, x1, ..., x_{n-1})`` on the broadcast product grid and validate."""
        coordinates = grid_coordinates(cfg, grid)
        samples = np.broadcast_to(func(*coordinates), _shape(cfg, grid))
        return cls(cfg, grid, samples, band_limit)

    @property
    def n(self) -> int:
        return self.cfg.n

    @property
    def h0(self) -> float:
        return 2.0 * self.grid.x0_half_width / self.grid.n0

    @property
    def hs(self) -> float:
        return 2.0 * self.grid.xs_half_width / self.grid.ns

    @property
    def x0(self) -> np.ndarray:
        return -self.grid.x0_half_width + self.h0 * np.arange(self.grid.n0)

    @property
    def xs(self) -> np.ndarray:
        return -self.grid.xs_half_width + self.hs * np.arange(self.grid.ns)

    @property
    def frequencies(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.grid.n0, self.h0)

    @property
    def nyquist(self) -> float:
        return math.pi / self.h0

    def in_band(self, band: Optional[float] = None) -> np.ndarray:
        """Indices k with |p_k| <= band (default: the declared band limit)."""
        limit = self.band_limit if band is None else band
        return np.nonzero(np.abs(self.frequencies) <= limit * (1 + 1e-12))[0]

    def fft0(self) -> np.ndarray:
        return np.fft.fft(self.samples, axis=0)

    def validate(self) -> GridFunction:
        """Check the Nyquist safety factor and the out-of-band ℓ² mass.

        The mass is the fraction of Σ|FFT0 f|² carried by |p| > band_limit.

        Raises:
            BandLimitError: either condition fails
        """
        if self.nyquist < self.grid.nyquist_safety * self.band_limit:
            raise BandLimitError(
                f"Nyquist frequency {self.nyquist:.4g} is below {self.grid.nyquist_safety} x "
                f"band limit {self.band_limit:.4g}; refine the x0 grid"
            )
        energy = np.abs(self.fft0()) ** 2
        per_frequency = energy.reshape(self.grid.n0, -1).sum(axis=1)
        total = float(per_frequency.sum())
        if total == 0.0:
            return self
        outside = np.abs(self.frequencies) > self.band_limit * (1 + 1e-12)
        mass = float(per_frequency[outside].sum()) / total
        if mass > self.grid.band_tolerance:
            raise BandLimitError(
                f"Relative out-of-band mass {mass:.3e} exceeds {self.grid.band_tolerance:.1e} "
                f"for band limit {self.band_limit:.4g}"
            )
        return self

    def with_samples(self, samples: np.ndarray, band_limit: Optional[float] = None) -> GridFunction:
        band = self.band_limit if band_limit is None else band_limit
        return GridFunction(self.cfg, self.grid, samples, band)

    def _check_compatible(self, other: GridFunction) -> None:
        if self.cfg != other.cfg or self.grid != other.grid:
            raise ConfigurationError("Grid functions live on different grids or group configs")

    def __add__(self, other: GridFunction) -> GridFunction:
        self._check_compatible(other)
        band = max(self.band_limit, other.band_limit)
        return self.with_samples(self.samples + other.samples, band)

    def __sub__(self, other: GridFunction) -> GridFunction:
        self._check_compatible(other)
        band = max(self.band_limit, other.band_limit)
        return self.with_samples(self.samples - other.samples, band)

    def __mul__(self, scalar: complex) -> GridFunction:
        return self.with_samples(self.samples * scalar)

    __rmul__ = __mul__

    def sup_distance(self, other: GridFunction) -> float:
        self._check_compatible(other)
        return float(np.max(np.abs(self.samples - other.samples)))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.samples)))


@dataclass(frozen=True)
class WeightValue:
    """Integral of a grid function with a quadrature error estimate."""

    value: complex
    quadrature_error: float

    def __post_init__(self) -> None:
        if self.quadrature_error < 0:
            raise ValueError("quadrature_error must be non-negative")


@dataclass(frozen=True)
class AxisMultiplier:
    """Axis-0 translation by a complex ``shift``: (M f)(x0) = f(x0 + shift).

    On the Fourier side this is the multiplier e^(i p0 shift); a real shift is a
    phase, an imaginary one rescales mode p0 by e^(-p0 Im(shift)).
    """

    shift: complex = 0j

    @property
    def translation(self) -> float:
        return self.shift.real

    @property
    def growth_rate(self) -> float:
        """c with |multiplier(p0)| = e^(c p0)."""
        return -self.shift.imag

    def symbol(self, p0: np.ndarray) -> np.ndarray:
        return np.exp(1j * np.asarray(p0) * self.shift)

    def compose(self, other: AxisMultiplier) -> AxisMultiplier:
        return AxisMultiplier(self.shift + other.shift)

    def apply(self, f: GridFunction) -> GridFunction:
        """Apply to in-band modes of f; out-of-band modes are set to zero.

        Raises:
            ModularOverflowError: e^(|growth| B) exceeds the grid's overflow budget
        """
        exponent = abs(self.growth_rate) * f.band_limit
        if exponent > math.log(f.grid.modular_overflow_budget):
            raise ModularOverflowError(
                f"Multiplier reaches e^{exponent:.4g} on band {f.band_limit:.4g}, "
                f"budget {f.grid.modular_overflow_budget:.1e}"
            )
        return fourier_multiplier(f, self.symbol)


def fourier_multiplier(
    f: GridFunction, symbol: Callable[[np.ndarray], np.ndarray]
) -> GridFunction:
    """Multiply the in-band axis-0 modes of f by symbol(p0); out-of-band modes become zero."""
    spectrum = f.fft0()
    multiplier = np.zeros(f.grid.n0, dtype=complex)
    band = f.in_band()
    multiplier[band] = symbol(f.frequencies[band])
    spectrum *= multiplier.reshape((-1,) + (1,) * (f.n - 1))
    return f.with_samples(np.fft.ifft(spectrum, axis=0))


def _shape(cfg: GroupConfig, grid: GridSpec) -> Tuple[int, ...]:
    return (grid.n0,) + (grid.ns,) * (cfg.n - 1)


def grid_coordinates(cfg: GroupConfig, grid: GridSpec) -> List[np.ndarray]:
    """Broadcastable coordinate arrays (x0, x1, ..., x_{n-1}) of the product grid."""
    h0 = 2.0 * grid.x0_half_width / grid.n0
    hs = 2.0 * grid.xs_half_width / grid.ns
    axes = [-grid.x0_half_width + h0 * np.arange(grid.n0)]
    axes += [-grid.xs_half_width + hs * np.arange(grid.ns)] * (cfg.n - 1)
    return list(np.meshgrid(*axes, indexing="ij", sparse=True))


def _spectral_matrix(xs: np.ndarray, half_width: float, scale: float) -> np.ndarray:
    """Trigonometric interpolation from the grid to the points scale·xs.

    Rows whose target leaves [xs[0], xs[-1]] are zero.
    """
    m = xs.size
    period = 2.0 * half_width
    kappa = np.fft.fftfreq(m, 1.0 / m)
    targets = scale * xs
    phases = np.exp(2j * np.pi * np.outer(targets + half_width, kappa) / period)
    matrix = phases @ np.fft.fft(np.eye(m), axis=0) / m
    outside = (targets < xs[0]) | (targets > xs[-1])
    matrix[outside, :] = 0.0
    return matrix


def _spline_along(
    values: np.ndarray, xs: np.ndarray, scale: float, axis: int, order: int
) -> np.ndarray:
    targets = scale * xs
    parts = []
    for part in (values.real, values.imag):
        spline = interpolate.make_interp_spline(xs, part, k=order, axis=axis)
        spline.extrapolate = False
        parts.append(np.nan_to_num(spline(targets), nan=0.0))
    return parts[0] + 1j * parts[1]


def spatial_rescale(
    values: np.ndarray,
    scale: float,
    xs: np.ndarray,
    grid: GridSpec,
    spatial_axes: Sequence[int],
) -> np.ndarray:
    """Evaluate ``values`` at x -> scale·x along every spatial axis.

    Uses the trigonometric interpolant (``spectral``) or a not-a-knot spline of
    degree 3 or 5, following ``grid.interpolation``. Targets outside the grid
    read as zero; callers check the boundary first.
    """
    if scale == 1.0:
        return np.array(values, dtype=complex)
    result = np.asarray(values, dtype=complex)
    if grid.interpolation == "spectral":
        matrix = _spectral_matrix(xs, grid.xs_half_width, scale)
        for axis in spatial_axes:
            result = np.moveaxis(np.tensordot(matrix, result, axes=([1], [axis])), 0, axis)
        return result
    order = 3 if grid.interpolation == "cubic" else 5
    for axis in spatial_axes:
        result = _spline_along(result, xs, scale, axis, order)
    return result


def _check_spatial_support(g: GridFunction, max_scale: float) -> None:
    """Raise when rescaled points leave the grid where |g| is not negligible."""
    if max_scale <= 1.0:
        return
    peak = g.sup_norm()
    if peak == 0.0:
        return
    edge = 0.0
    for axis in range(1, g.n):
        for index in (0, -1):
            edge = max(edge, float(np.max(np.abs(np.take(g.samples, index, axis=axis)))))
    if edge > g.grid.support_tolerance * peak:
        raise SupportOverflowError(
            f"Spatial rescaling by up to {max_scale:.4g} leaves the grid while |g| = {edge:.3e} "
            f"on its boundary (peak {peak:.3e}); widen the spatial grid"
        )


def _phase_columns(f: GridFunction, ks: np.ndarray) -> np.ndarray:
    m = np.arange(f.grid.n0)
    return np.exp(2j * np.pi * np.outer(m, ks) / f.grid.n0) / f.grid.n0


def _broadcast_column(column: np.ndarray, n: int) -> np.ndarray:
    return column.reshape((-1,) + (1,) * (n - 1))


def star_product(f: GridFunction, g: GridFunction) -> GridFunction:
    """(f⋆g)(x) = ∫ e^(ip0x0) (F0 f)(p0, x) g(x0, e^(-λp0) x) dp0/2π on the grid.

    The output band limit is B_f + B_g; λ = 0 gives the pointwise product.

    Raises:
        BandLimitError: the output band is not resolved by the x0 grid
        SupportOverflowError: rescaled points leave the grid where g is not small
    """
    f._check_compatible(g)
    band = f.band_limit + g.band_limit
    if f.nyquist < f.grid.nyquist_safety * band:
        raise BandLimitError(
            f"Product band {band:.4g} needs Nyquist >= {f.grid.nyquist_safety * band:.4g}, "
            f"grid has {f.nyquist:.4g}"
        )
    if f.cfg.is_commutative:
        return f.with_samples(f.samples * g.samples, band)

    lam = f.cfg.lam
    spectrum = f.fft0()
    ks = f.in_band()
    p = f.frequencies
    _check_spatial_support(g, math.exp(lam * f.band_limit))
    spatial_axes = list(range(1, f.n))

    def accumulate(chunk: Sequence[int]) -> np.ndarray:
        phases = _phase_columns(f, np.asarray(chunk))
        partial = np.zeros(f.samples.shape, dtype=complex)
        for column, k in enumerate(chunk):
            scale = math.exp(-lam * p[k])
            rescaled = spatial_rescale(g.samples, scale, f.xs, f.grid, spatial_axes)
            partial += _broadcast_column(phases[:, column], f.n) * spectrum[k][None, ...] * rescaled
        return partial

    chunks = chunked(list(ks), worker_count())
    partials = parallel_map(accumulate, chunks)
    samples = np.zeros(f.samples.shape, dtype=complex)
    for partial in partials:
        samples += partial
    logger.debug(f"star product over {len(ks)} in-band frequencies, band {band:.4g}")
    return f.with_samples(samples, band)


def involution(f: GridFunction) -> GridFunction:
    """f*(x) = ∫ e^(ip0x0) (F0 f̄)(p0, e^(-λp0) x) dp0/2π; complex conjugation when λ = 0."""
    if f.cfg.is_commutative:
        return f.with_samples(np.conj(f.samples))

    lam = f.cfg.lam
    conjugate = f.with_samples(np.conj(f.samples))
    spectrum = conjugate.fft0()
    ks = f.in_band()
    p = f.frequencies
    _check_spatial_support(conjugate, math.exp(lam * f.band_limit))
    spatial_axes = list(range(f.n - 1))

    def accumulate(chunk: Sequence[int]) -> np.ndarray:
        phases = _phase_columns(f, np.asarray(chunk))
        partial = np.zeros(f.samples.shape, dtype=complex)
        for column, k in enumerate(chunk):
            scale = math.exp(-lam * p[k])
            profile = spatial_rescale(spectrum[k], scale, f.xs, f.grid, spatial_axes)
            partial += _broadcast_column(phases[:, column], f.n) * profile[None, ...]
        return partial

    samples = np.zeros(f.samples.shape, dtype=complex)
    for partial in parallel_map(accumulate, chunked(list(ks), worker_count())):
        samples += partial
    return f.with_samples(samples)


def weight_omega(f: GridFunction) -> WeightValue:
    """ω(f) = ∫ f dⁿx by the periodic trapezoidal rule.

    The error estimate is the change when every axis is coarsened by two plus the
    mass sitting on the grid boundary.
    """
    cell = f.h0 * f.hs ** (f.n - 1)
    value = complex(f.samples.sum() * cell)
    coarse_slice = tuple(slice(None, None, 2) for _ in range(f.n))
    coarse = complex(f.samples[coarse_slice].sum() * cell * 2**f.n)
    edge = 0.0
    for axis in range(f.n):
        for index in (0, -1):
            edge += float(np.abs(np.take(f.samples, index, axis=axis)).sum())
    error = abs(value - coarse) + edge * cell
    return WeightValue(value, float(error))


def modular_shift(f: GridFunction, s: float) -> GridFunction:
    """σ^s: x0 -> x0 + isλ, the in-band Fourier multiplier e^(-sλp0)."""
    return AxisMultiplier(shift=1j * s * f.cfg.lam).apply(f)


def twisted_trace_residual(f: GridFunction, g: GridFunction, s: Optional[float] = None) -> float:
    """|ω(f⋆g) - ω(σ^s(g)⋆f)| with s = n - 1 unless given."""
    power = f.n - 1 if s is None else s
    left = weight_omega(star_product(f, g)).value
    right = weight_omega(star_product(modular_shift(g, power), f)).value
    return abs(left - right)


def untwisted_trace_residual(f: GridFunction, g: GridFunction) -> float:
    """|ω(f⋆g) - ω(g⋆f)|; nonzero when λ > 0 witnesses that ω is not a trace."""
    return abs(weight_omega(star_product(f, g)).value - weight_omega(star_product(g, f)).value)


def kms_scan(
    f: GridFunction, g: GridFunction, powers: Optional[Sequence[float]] = None
) -> Dict[float, float]:
    """Twisted-trace residual for σ^s, s in ``powers`` (default 0, 1, ..., n)."""
    values = list(range(f.n + 1)) if powers is None else list(powers)
    return {float(s): twisted_trace_residual(f, g, s) for s in values}


def kms_multiplier(t: float, cfg: GroupConfig) -> AxisMultiplier:
    """Real-time modular flow of ω: translation x0 -> x0 - t(n-1)λ."""
    return AxisMultiplier(shift=complex(-t * (cfg.n - 1) * cfg.lam, 0.0))


def modular_operator(cfg: GroupConfig) -> AxisMultiplier:
    """Δ_ω, the multiplier e^(-(n-1)λp0)."""
    return AxisMultiplier(shift=1j * (cfg.n - 1) * cfg.lam)


def gaussian_packet(
    cfg: GroupConfig,
    grid: GridSpec,
    center: Sequence[float] = (),
    carrier: float = 0.0,
    spatial_carrier: Sequence[float] = (),
    width0: float = X0_WIDTH,
    width_s: float = SPATIAL_WIDTH,
    normalize: bool = False,
) -> GridFunction:
    """Gaussian wave packet with x0 carrier ``carrier`` and band |carrier| + 6/width0.

    With ``normalize`` the packet integrates to 1.
    """
    center = list(center) + [0.0] * (cfg.n - len(center))
    spatial_carrier = list(spatial_carrier) + [0.0] * (cfg.n - 1 - len(spatial_carrier))
    band = abs(carrier) + BAND_SIGMAS / width0

    def packet(x0: np.ndarray, *xs: np.ndarray) -> np.ndarray:
        value = np.exp(-((x0 - center[0]) ** 2) / (2 * width0**2) + 1j * carrier * x0)
        for index, x in enumerate(xs):
            value = value * np.exp(
                -((x - center[index + 1]) ** 2) / (2 * width_s**2) + 1j * spatial_carrier[index] * x
            )
        return value

    f = GridFunction.from_callable(cfg, grid, packet, band)
    if normalize:
        norm = width0 * math.sqrt(2 * math.pi) * (width_s * math.sqrt(2 * math.pi)) ** (cfg.n - 1)
        f = f * (1.0 / norm)
    return f


@dataclass
class GaussianFixtures:
    """Three packets with opposite x0 carriers on f and g, built from a seed."""

    seed: int
    f: GridFunction
    g: GridFunction
    h: GridFunction
    parameters: Dict[str, Dict[str, object]] = field(default_factory=dict)


def gaussian_fixtures(cfg: GroupConfig, grid: GridSpec, seed: int) -> GaussianFixtures:
    rng = np.random.default_rng(seed)
    specs = {
        "f": {"carrier": float(rng.uniform(0.6, 0.8))},
        "g": {"carrier": float(rng.uniform(-0.8, -0.6))},
        "h": {"carrier": float(rng.uniform(-0.2, 0.2))},
    }
    packets = {}
    for name, spec in specs.items():
        center = [float(rng.uniform(-2.0, 2.0))] + [
            float(x) for x in rng.uniform(-1.0, 1.0, cfg.n - 1)
        ]
        spec["center"] = center
        packets[name] = gaussian_packet(cfg, grid, center=center, carrier=spec["carrier"])
    return GaussianFixtures(seed, packets["f"], packets["g"], packets["h"], specs)


__all__ = [
    "GridFunction",
    "WeightValue",
    "AxisMultiplier",
    "grid_coordinates",
    "fourier_multiplier",
    "spatial_rescale",
    "star_product",
    "involution",
    "weight_omega",
    "modular_shift",
    "twisted_trace_residual",
    "untwisted_trace_residual",
    "kms_scan",
    "kms_multiplier",
    "modular_operator",
    "gaussian_packet",
    "GaussianFixtures",
    "gaussian_fixtures",
]
