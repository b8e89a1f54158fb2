"""Complex Gamma function (Lanczos, g=7) and pole-aware ratios built on it."""

from __future__ import annotations

import cmath
import math
from typing import Optional, Union

from scipy import special

from ..core.errors import GammaPoleError

Number = Union[int, float, complex]

LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Arguments this close to a nonpositive integer are treated as lying on the pole.
POLE_SNAP = 1e-12

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def nonpositive_integer(z: Number, snap: float = POLE_SNAP) -> Optional[int]:
    """Return -j when ``z`` is (within ``snap``) the nonpositive integer -j, else None."""
    z = complex(z)
    k = round(z.real)
    if k > 0:
        return None
    if abs(z - k) <= snap * max(1.0, abs(k)):
        return int(k)
    return None


def _sinpi(z: complex) -> complex:
    """sin(pi z) with the integer part removed first, accurate near integers."""
    k = round(z.real)
    value = cmath.sin(math.pi * (z - k))
    return -value if k % 2 else value


def _lanczos(z: complex) -> complex:
    z = z - 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for index, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += coefficient / (z + index)
    t = z + LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * series


def gamma_fn(z: Number) -> complex:
    """Gamma function on the complex plane.

    Uses the Lanczos approximation for Re z >= 1/2 and the reflection formula
    elsewhere.

    Raises:
        GammaPoleError: ``z`` is a nonpositive integer.
    """
    z = complex(z)
    if nonpositive_integer(z, snap=0.0) is not None:
        raise GammaPoleError(z)
    if z.real < 0.5:
        return math.pi / (_sinpi(z) * _lanczos(1.0 - z))
    return _lanczos(z)


def rgamma(z: Number) -> complex:
    """Reciprocal Gamma function; entire, zero at the nonpositive integers."""
    z = complex(z)
    if nonpositive_integer(z) is not None:
        return 0j
    if z.real < 0.5:
        return _sinpi(z) * _lanczos(1.0 - z) / math.pi
    return 1.0 / _lanczos(z)


def gamma_ratio(a: Number, b: Number) -> complex:
    """Gamma(a)/Gamma(b), continued through simultaneous poles.

    When both arguments sit on poles (-j and -k) the ratio of residues
    (-1)^(j-k) k!/j! is returned, the limit along a common shift a+e, b+e.

    Raises:
        GammaPoleError: only ``a`` is at a pole.
    """
    pole_a = nonpositive_integer(a)
    pole_b = nonpositive_integer(b)
    if pole_a is not None and pole_b is not None:
        j, k = -pole_a, -pole_b
        sign = -1.0 if (j - k) % 2 else 1.0
        return complex(sign * math.factorial(k) / math.factorial(j))
    if pole_a is not None:
        raise GammaPoleError(complex(a))
    if pole_b is not None:
        return 0j
    return gamma_fn(a) * rgamma(b)


def digamma(z: Number) -> complex:
    """Digamma function psi(z); raises GammaPoleError at nonpositive integers."""
    if nonpositive_integer(z, snap=0.0) is not None:
        raise GammaPoleError(complex(z))
    return complex(special.digamma(complex(z)))


def psi_over_gamma(z: Number) -> complex:
    """psi(z)/Gamma(z), entire; equals (-1)^(j+1) j! at z = -j."""
    pole = nonpositive_integer(z)
    if pole is not None:
        j = -pole
        return complex((-1.0) ** (j + 1) * math.factorial(j))
    return digamma(z) * rgamma(z)


def pochhammer(a: Number, k: int) -> complex:
    """Rising factorial (a)_k for integer k >= 0."""
    result = 1.0 + 0j
    for index in range(k):
        result *= complex(a) + index
    return result


__all__ = [
    "LANCZOS_G",
    "LANCZOS_COEFFICIENTS",
    "nonpositive_integer",
    "gamma_fn",
    "rgamma",
    "gamma_ratio",
    "digamma",
    "psi_over_gamma",
    "pochhammer",
]
