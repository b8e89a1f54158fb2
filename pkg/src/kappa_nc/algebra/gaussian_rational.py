"""Exact scalars of Q(i): a + b i with rational a, b."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union["GaussianRational", Fraction, int]

_TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*\*\s*i\^([0-3])\s*$")


@dataclass(frozen=True)
class GaussianRational:
    """Exact Gaussian rational. Never converted to floating point internally."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: Scalar) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(Fraction(value))
        raise TypeError(f"Cannot use {value!r} as an exact Gaussian rational")

    @classmethod
    def i_power(cls, k: int, coefficient: Union[Fraction, int] = 1) -> GaussianRational:
        """coefficient * i^k."""
        c = Fraction(coefficient)
        return (cls(c), cls(0, c), cls(-c), cls(0, -c))[k % 4]

    def __add__(self, other: Scalar) -> GaussianRational:
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> GaussianRational:
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other: Scalar) -> GaussianRational:
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Scalar) -> GaussianRational:
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> GaussianRational:
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other: Scalar) -> GaussianRational:
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int) -> GaussianRational:
        if exponent < 0:
            return GaussianRational(1) / self ** (-exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def text_terms(self) -> list[str]:
        """Rational times i^k pieces, real part first; empty for zero."""
        pieces = []
        if self.re:
            pieces.append(f"{self.re} * i^0")
        if self.im:
            pieces.append(f"{self.im} * i^1")
        return pieces

    @classmethod
    def parse_term(cls, text: str) -> GaussianRational:
        """Parse one ``coeff * i^k`` piece."""
        match = _TERM.match(text)
        if not match:
            raise ValueError(f"Not a 'coeff * i^k' term: {text!r}")
        return cls.i_power(int(match.group(2)), Fraction(match.group(1)))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

__all__ = ["GaussianRational", "Scalar", "ZERO", "ONE", "I"]
