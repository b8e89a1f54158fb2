"""Dirac operator, twisted commutators and the first-order differential calculus.

The Dirac symbol at momentum p is D = Γ^0 D0(p) + Σ_j Γ^j p_j with
D0(p) = λ^-1 (1 - e^(-λ p0)); the twist is σ = e^(-λ P0). On the PBW side the
time coordinate x^0 is generator x1 and x^j is generator x_{j+1}.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..algebra.gaussian_rational import GaussianRational
from ..algebra.pbw import ActionElement, PBWAlgebra, PBWElement
from ..core.errors import ConfigurationError
from ..models.config import GroupConfig
from .field_algebra import GridFunction, fourier_multiplier, modular_shift, star_product

logger = logging.getLogger(__name__)

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class CliffordSet:
    """n Hermitian matrices of size 2^[n/2] with {Γ^μ, Γ^ν} = 2 δ^μν."""

    n: int
    matrices: Tuple[np.ndarray, ...]

    @property
    def dimension(self) -> int:
        return self.matrices[0].shape[0]

    def __getitem__(self, mu: int) -> np.ndarray:
        return self.matrices[mu]

    def __len__(self) -> int:
        return len(self.matrices)

    def anticommutator_defect(self) -> float:
        """max |{Γ^μ, Γ^ν} - 2 δ^μν Id| over all pairs and entries."""
        identity = np.eye(self.dimension)
        worst = 0.0
        for mu, nu in itertools.product(range(self.n), repeat=2):
            a, b = self.matrices[mu], self.matrices[nu]
            target = 2.0 * identity if mu == nu else 0.0 * identity
            worst = max(worst, float(np.max(np.abs(a @ b + b @ a - target))))
        return worst

    def hermiticity_defect(self) -> float:
        return max(float(np.max(np.abs(g - g.conj().T))) for g in self.matrices)


def clifford(n: int) -> CliffordSet:
    """Euclidean gamma matrices by repeated tensoring with the Pauli matrices.

    Even n doubles the size every two generators; odd n appends the product of the
    previous ones, scaled to be Hermitian.
    """
    if n < 1:
        raise ConfigurationError(f"Clifford set needs n >= 1, got {n}")
    if n == 1:
        return CliffordSet(1, (np.eye(1, dtype=complex),))

    gammas: List[np.ndarray] = [_SIGMA_X, _SIGMA_Y]
    built = 2
    while built + 1 < n:
        size = gammas[0].shape[0]
        identity = np.eye(size, dtype=complex)
        gammas = [np.kron(_SIGMA_X, g) for g in gammas] + [
            np.kron(_SIGMA_Y, identity),
            np.kron(_SIGMA_Z, identity),
        ]
        built += 2

    if built < n:
        last = (1j) ** ((n - 1) // 2) * gammas[0]
        for g in gammas[1:]:
            last = last @ g
        gammas.append(last)
    for g in gammas:
        g.setflags(write=False)
    return CliffordSet(n, tuple(gammas))


def _d0(p0: np.ndarray, lam: float) -> np.ndarray:
    if lam == 0.0:
        return np.asarray(p0, dtype=float)
    return -np.expm1(-lam * np.asarray(p0, dtype=float)) / lam


def dirac_components(p: Sequence[float], cfg: GroupConfig) -> np.ndarray:
    """(D0(p), p1, ..., p_{n-1})."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != cfg.n:
        raise ConfigurationError(f"Momentum of length {p.shape[-1]} used with n={cfg.n}")
    components = p.copy()
    components[..., 0] = _d0(p[..., 0], cfg.lam)
    return components


def dirac_matrix(p: Sequence[float], cfg: GroupConfig) -> np.ndarray:
    """Γ^0 λ^-1 (1 - e^(-λ p0)) + Σ_j Γ^j p_j; Γ^μ p_μ when λ = 0."""
    gammas = clifford(cfg.n)
    components = dirac_components(p, cfg)
    return sum(c * g for c, g in zip(components, gammas.matrices))


def casimir_value(p: Sequence[float], cfg: GroupConfig) -> np.ndarray:
    """(4/λ²) sinh²(λ p0 / 2) + e^(λ p0) |p_vec|²; vectorized over leading axes."""
    p = np.asarray(p, dtype=float)
    p0 = p[..., 0]
    spatial = np.sum(p[..., 1:] ** 2, axis=-1)
    if cfg.lam == 0.0:
        return p0**2 + spatial
    lam = cfg.lam
    return (4.0 / lam**2) * np.sinh(lam * p0 / 2.0) ** 2 + np.exp(lam * p0) * spatial


def casimir_from_dirac(p: Sequence[float], cfg: GroupConfig) -> np.ndarray:
    """e^(λ p0) (D0² + |p_vec|²), the same scalar written through the Dirac symbol."""
    components = dirac_components(p, cfg)
    p0 = np.asarray(p, dtype=float)[..., 0]
    return np.exp(cfg.lam * p0) * np.sum(components**2, axis=-1)


def spatial_momentum(f: GridFunction, axis: int) -> GridFunction:
    """-i ∂_axis f by spectral differentiation, axis in 1..n-1."""
    if not 1 <= axis < f.n:
        raise ConfigurationError(f"Spatial axis {axis} outside 1..{f.n - 1}")
    q = 2.0 * np.pi * np.fft.fftfreq(f.grid.ns, f.hs)
    shape = [1] * f.n
    shape[axis] = -1
    spectrum = np.fft.fft(f.samples, axis=axis) * q.reshape(shape)
    return f.with_samples(np.fft.ifft(spectrum, axis=axis))


def translation_action(f: GridFunction, mu: int) -> GridFunction:
    """D_μ ▷ f: the multiplier D0(p0) for μ = 0, -i ∂_μ otherwise."""
    if mu == 0:
        lam = f.cfg.lam
        return fourier_multiplier(f, lambda p0: _d0(p0, lam))
    return spatial_momentum(f, mu)


@dataclass(frozen=True)
class TwistedCommutator:
    """Γ^μ (D_μ ▷ f) as a matrix-valued function, with its sup spectral norm."""

    components: Tuple[GridFunction, ...]
    gammas: CliffordSet
    sup_norm: float

    def symbol(self) -> np.ndarray:
        """Samples of shape grid + (dim, dim)."""
        return sum(
            c.samples[..., None, None] * g for c, g in zip(self.components, self.gammas.matrices)
        )


def twisted_commutator_multiplier(f: GridFunction) -> TwistedCommutator:
    """[D, f]_σ = Γ^μ (D_μ ▷ f) and the sup over the grid of its operator norm."""
    gammas = clifford(f.n)
    components = tuple(translation_action(f, mu) for mu in range(f.n))
    partial = TwistedCommutator(components, gammas, 0.0)
    norms = np.linalg.norm(partial.symbol(), ord=2, axis=(-2, -1))
    sup_norm = float(np.max(norms))
    logger.debug(f"twisted commutator sup norm {sup_norm:.6g}")
    return TwistedCommutator(components, gammas, sup_norm)


def twisted_leibniz_residual(f: GridFunction, g: GridFunction) -> float:
    """max_μ sup |D_μ▷(f⋆g) - (D_μ▷f)⋆g - σ(f)⋆(D_μ▷g)| with σ = modular_shift(·, 1)."""
    product = star_product(f, g)
    shifted = modular_shift(f, 1.0)
    worst = 0.0
    for mu in range(f.n):
        left = translation_action(product, mu)
        right = star_product(translation_action(f, mu), g) + star_product(
            shifted, translation_action(g, mu)
        )
        worst = max(worst, left.sup_distance(right))
    return worst


def _exact_lambda(cfg: GroupConfig) -> Fraction:
    return Fraction(str(cfg.lam))


def _action_on_coordinate(mu: int, coordinate: PBWElement, algebra: PBWAlgebra) -> PBWElement:
    """D_μ ▷ x in the PBW model; D0 = λ^-1 (1 - E), or P0 when λ = 0."""
    if mu == 0:
        if algebra.lam == 0:
            return algebra.act(ActionElement.p0(), coordinate)
        shifted = algebra.act(ActionElement.e(), coordinate)
        return (coordinate - shifted).scale(GaussianRational(1 / algebra.lam))
    return algebra.act(ActionElement.p(mu + 1), coordinate)


def _scalar_part(p: PBWElement) -> GaussianRational:
    if p.degree > 0:
        raise ValueError(f"Expected a scalar, got {p}")
    return p.coefficient((0,) * p.n)


def coordinate_commutator(nu: int, cfg: GroupConfig) -> np.ndarray:
    """[D, x^ν]_σ = Σ_μ Γ^μ (D_μ ▷ x^ν), assembled from exact PBW actions; equals -iΓ^ν."""
    if not 0 <= nu < cfg.n:
        raise ConfigurationError(f"Coordinate index {nu} outside 0..{cfg.n - 1}")
    algebra = PBWAlgebra(cfg.n, _exact_lambda(cfg))
    coordinate = algebra.generator(nu + 1)
    gammas = clifford(cfg.n)
    result = np.zeros((gammas.dimension, gammas.dimension), dtype=complex)
    for mu in range(cfg.n):
        value = _scalar_part(_action_on_coordinate(mu, coordinate, algebra))
        if value:
            result = result + complex(value) * gammas[mu]
    return result


def one_form_commutator(mu: int, nu: int, cfg: GroupConfig) -> List[GaussianRational]:
    """Coefficients on dx^0..dx^{n-1} of x^μ dx^ν - dx^ν x^μ.

    One-forms carry their PBW coefficients on the left; the right module action is
    dx^ν · a = (E⁻¹ ▷ a) dx^ν.
    """
    if not (0 <= mu < cfg.n and 0 <= nu < cfg.n):
        raise ConfigurationError(f"Indices ({mu}, {nu}) outside 0..{cfg.n - 1}")
    algebra = PBWAlgebra(cfg.n, _exact_lambda(cfg))
    coordinate = algebra.generator(mu + 1)
    left = {nu: coordinate}
    right = {nu: algebra.act(ActionElement.e_inv(), coordinate)}
    zero = algebra.zero()
    return [
        _scalar_part(left.get(rho, zero) - right.get(rho, zero)) for rho in range(cfg.n)
    ]


def bimodule_relation(mu: int, nu: int, cfg: GroupConfig) -> GaussianRational:
    """Coefficient c in x^μ dx^ν - dx^ν x^μ = c dx^ν; iλ for μ = 0, otherwise 0."""
    return one_form_commutator(mu, nu, cfg)[nu]


def bicovariant_structure_constants(cfg: GroupConfig) -> np.ndarray:
    """A[μ, ν, ρ] with x^μ dx^ν - dx^ν x^μ = i A^{μν}_ρ dx^ρ; equals λ δ^μ_0 δ^ν_ρ."""
    n = cfg.n
    constants = np.zeros((n, n, n))
    for mu, nu in itertools.product(range(n), repeat=2):
        for rho, coefficient in enumerate(one_form_commutator(mu, nu, cfg)):
            constants[mu, nu, rho] = float((coefficient / GaussianRational(0, 1)).re)
    return constants


def represent_orientation_cycle(cfg: GroupConfig) -> np.ndarray:
    """Σ_s sgn(s) [D, x^s(0)]_σ ... [D, x^s(n-1)]_σ."""
    n = cfg.n
    commutators = [coordinate_commutator(nu, cfg) for nu in range(n)]
    size = commutators[0].shape[0]
    total = np.zeros((size, size), dtype=complex)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        product = np.eye(size, dtype=complex)
        for index in perm:
            product = product @ commutators[index]
        total += (-1) ** inversions * product
    return total


def orientation_volume_form(n: int) -> np.ndarray:
    """(-i)^n n! Γ^0 Γ^1 ... Γ^{n-1}."""
    gammas = clifford(n)
    product = np.eye(gammas.dimension, dtype=complex)
    for g in gammas.matrices:
        product = product @ g
    return (-1j) ** n * math.factorial(n) * product


__all__ = [
    "CliffordSet",
    "clifford",
    "dirac_components",
    "dirac_matrix",
    "casimir_value",
    "casimir_from_dirac",
    "spatial_momentum",
    "translation_action",
    "TwistedCommutator",
    "twisted_commutator_multiplier",
    "twisted_leibniz_residual",
    "coordinate_commutator",
    "bimodule_relation",
    "one_form_commutator",
    "bicovariant_structure_constants",
    "represent_orientation_cycle",
    "orientation_volume_form",
]
