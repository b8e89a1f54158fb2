"""Enveloping algebra U(g_κ) in PBW normal form, with exact coefficients.

Generators x1, ..., xn satisfy [x1, xj] = T xj (j >= 2) with T = iλ; x2..xn
commute. A normal monomial is x1^a1 x2^a2 ... xn^an, stored as its exponent
tuple. Moving x1 to the left through a monomial m' in x2..xn of total degree s
uses m' x1 = (x1 - sT) m'.

Translations act as a module algebra: P0 is a derivation with P0 ▷ x1 = -i,
Pj is a twisted derivation with coproduct Pj ⊗ 1 + E ⊗ Pj, and E is the
automorphism x1 -> x1 + T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .gaussian_rational import ONE, ZERO, GaussianRational, Scalar

Exponents = Tuple[int, ...]


def graded_key(exps: Exponents) -> Tuple[int, Exponents]:
    """Graded lexicographic key: total degree first, then exponents."""
    return (sum(exps), exps)


def monomials_up_to(n: int, d: int) -> List[Exponents]:
    """All exponent tuples of total degree <= d in graded lexicographic order."""

    def compositions(total: int, parts: int) -> Iterable[Exponents]:
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    result: List[Exponents] = []
    for degree in range(d + 1):
        result.extend(sorted(compositions(degree, n)))
    return result


@dataclass(frozen=True, eq=False)
class PBWElement:
    """Finite sum of normal monomials; zero coefficients are never stored."""

    algebra: PBWAlgebra
    terms: Tuple[Tuple[Exponents, GaussianRational], ...]

    @property
    def n(self) -> int:
        return self.algebra.n

    def as_dict(self) -> Dict[Exponents, GaussianRational]:
        return dict(self.terms)

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self.as_dict().get(tuple(exps), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero element."""
        return max((sum(exps) for exps, _ in self.terms), default=-1)

    def __add__(self, other: PBWElement) -> PBWElement:
        return self.algebra.combine([(ONE, self), (ONE, other)])

    def __sub__(self, other: PBWElement) -> PBWElement:
        return self.algebra.combine([(ONE, self), (-ONE, other)])

    def __neg__(self) -> PBWElement:
        return self.scale(-ONE)

    def __mul__(self, other: Union[PBWElement, Scalar]) -> PBWElement:
        if isinstance(other, PBWElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> PBWElement:
        return self.scale(other)

    def scale(self, factor: Scalar) -> PBWElement:
        return self.algebra.element({exps: c * factor for exps, c in self.terms})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.algebra, self.terms))

    def to_text(self) -> str:
        return self.algebra.format(self)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PBWAlgebra:
    """U(g_κ) on n generators with deformation λ (exact); T = iλ."""

    n: int
    lam: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"PBW algebra needs n >= 1, got {self.n}")
        object.__setattr__(self, "lam", Fraction(self.lam))

    @property
    def T(self) -> GaussianRational:
        return GaussianRational(0, self.lam)

    def mass_parameter(self, mu: Union[Fraction, int]) -> GaussianRational:
        """U = iμ."""
        return GaussianRational(0, Fraction(mu))

    def element(self, terms: Mapping[Exponents, Scalar]) -> PBWElement:
        cleaned = []
        for exps, coefficient in terms.items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != self.n or min(exps, default=0) < 0:
                raise ValueError(f"Invalid exponents {exps} for n={self.n}")
            value = GaussianRational.coerce(coefficient)
            if value:
                cleaned.append((exps, value))
        cleaned.sort(key=lambda item: graded_key(item[0]))
        return PBWElement(self, tuple(cleaned))

    def combine(self, pieces: Iterable[Tuple[Scalar, PBWElement]]) -> PBWElement:
        """Linear combination Σ c_k p_k."""
        total: Dict[Exponents, GaussianRational] = {}
        for factor, element in pieces:
            for exps, coefficient in element.terms:
                total[exps] = total.get(exps, ZERO) + coefficient * factor
        return self.element(total)

    def zero(self) -> PBWElement:
        return PBWElement(self, ())

    def scalar(self, value: Scalar) -> PBWElement:
        return self.element({(0,) * self.n: value})

    def one(self) -> PBWElement:
        return self.scalar(ONE)

    def monomial(self, exps: Sequence[int], coefficient: Scalar = ONE) -> PBWElement:
        return self.element({tuple(exps): coefficient})

    def generator(self, j: int) -> PBWElement:
        """x_j, 1-based."""
        self._check_index(j)
        exps = [0] * self.n
        exps[j - 1] = 1
        return self.monomial(exps)

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise ValueError(f"Generator index {j} outside 1..{self.n}")

    def _monomial_product(
        self, left: Exponents, right: Exponents
    ) -> Dict[Exponents, GaussianRational]:
        """x^left x^right = x1^l1 (x1 - sT)^r1 x'^(l' + r'), s = |l'|."""
        shift = -self.T * sum(left[1:])
        tail = tuple(a + b for a, b in zip(left[1:], right[1:]))
        b = right[0]
        result: Dict[Exponents, GaussianRational] = {}
        for k in range(b + 1):
            coefficient = shift**k * math.comb(b, k)
            if coefficient:
                result[(left[0] + b - k,) + tail] = coefficient
        return result

    def multiply(self, p: PBWElement, q: PBWElement) -> PBWElement:
        if p.algebra != self or q.algebra != self:
            raise ValueError("PBW elements belong to different algebras")
        total: Dict[Exponents, GaussianRational] = {}
        for left, a in p.terms:
            for right, b in q.terms:
                for exps, c in self._monomial_product(left, right).items():
                    total[exps] = total.get(exps, ZERO) + a * b * c
        return self.element(total)

    def normal_form(self, word: Sequence[int], scale: Scalar = ONE) -> PBWElement:
        """scale * x_{w1} x_{w2} ... rewritten into normal order."""
        result = self.scalar(scale)
        for j in word:
            result = self.multiply(result, self.generator(j))
        return result

    def power(self, p: PBWElement, exponent: int) -> PBWElement:
        result = self.one()
        for _ in range(exponent):
            result = self.multiply(result, p)
        return result

    def _shift_x1(self, p: PBWElement, shift: GaussianRational) -> PBWElement:
        """Automorphism x1 -> x1 + shift (central shift), xj fixed."""
        if not shift:
            return p
        total: Dict[Exponents, GaussianRational] = {}
        for exps, coefficient in p.terms:
            a = exps[0]
            for k in range(a + 1):
                term = coefficient * shift ** (a - k) * math.comb(a, k)
                key = (k,) + exps[1:]
                total[key] = total.get(key, ZERO) + term
        return self.element(total)

    def sigma(self, p: PBWElement, U: Scalar) -> PBWElement:
        """σ_U: x1 -> x1 + U, xj -> xj."""
        return self._shift_x1(p, GaussianRational.coerce(U))

    def twisted_adjoint(self, j: int, m: PBWElement, U: Scalar) -> PBWElement:
        """x_j(m) = σ(x_j) m - m x_j."""
        generator = self.generator(j)
        return self.multiply(self.sigma(generator, U), m) - self.multiply(m, generator)

    def bracket(self, i: int, j: int) -> PBWElement:
        """[x_i, x_j] from the defining relations."""
        self._check_index(i)
        self._check_index(j)
        if i == j or (i != 1 and j != 1):
            return self.zero()
        if i == 1:
            return self.generator(j).scale(self.T)
        return self.generator(i).scale(-self.T)

    def act(self, h: ActionElement, p: PBWElement) -> PBWElement:
        """Left action h ▷ p of a translation-sector generator."""
        if h.kind is ActionKind.E:
            return self._shift_x1(p, self.T)
        if h.kind is ActionKind.E_INV:
            return self._shift_x1(p, -self.T)
        minus_i = GaussianRational(0, -1)
        total: Dict[Exponents, GaussianRational] = {}
        if h.kind is ActionKind.P0:
            for exps, coefficient in p.terms:
                if exps[0]:
                    key = (exps[0] - 1,) + exps[1:]
                    total[key] = total.get(key, ZERO) + coefficient * minus_i * exps[0]
            return self.element(total)

        j = h.index
        if j is None or not 2 <= j <= self.n:
            raise ValueError(f"P_j needs a spatial generator index in 2..{self.n}, got {j}")
        # Pj ▷ (x1^a m') = (x1 + T)^a (Pj ▷ m'), Pj an ordinary derivation on x2..xn
        lowered: Dict[Exponents, GaussianRational] = {}
        for exps, coefficient in p.terms:
            b = exps[j - 1]
            if b:
                key = exps[: j - 1] + (b - 1,) + exps[j:]
                lowered[key] = lowered.get(key, ZERO) + coefficient * minus_i * b
        return self._shift_x1(self.element(lowered), self.T)

    def coproduct(
        self, h: ActionElement
    ) -> List[Tuple[Optional[ActionElement], Optional[ActionElement]]]:
        """Sweedler pieces (h1, h2) of Δ(h); None stands for the unit."""
        if h.kind in (ActionKind.E, ActionKind.E_INV):
            return [(h, h)]
        if h.kind is ActionKind.P0:
            return [(h, None), (None, h)]
        return [(h, None), (ActionElement.e(), h)]

    def act_or_identity(self, h: Optional[ActionElement], p: PBWElement) -> PBWElement:
        return p if h is None else self.act(h, p)

    def module_algebra_residual(self, h: ActionElement, p: PBWElement, q: PBWElement) -> PBWElement:
        """h ▷ (pq) - Σ (h1 ▷ p)(h2 ▷ q); identically zero."""
        left = self.act(h, self.multiply(p, q))
        pieces = [
            (ONE, self.multiply(self.act_or_identity(h1, p), self.act_or_identity(h2, q)))
            for h1, h2 in self.coproduct(h)
        ]
        return left - self.combine(pieces)

    def format(self, p: PBWElement) -> str:
        """Canonical text: ``coeff * i^k * x1^a1 ... xn^an`` joined by `` + ``."""
        if p.is_zero():
            return "0"
        parts = []
        for exps, coefficient in p.terms:
            monomial = " ".join(f"x{j + 1}^{a}" for j, a in enumerate(exps))
            for piece in coefficient.text_terms():
                parts.append(f"{piece} * {monomial}")
        return " + ".join(parts)

    def parse(self, text: str) -> PBWElement:
        """Inverse of :meth:`format`."""
        if text.strip() == "0":
            return self.zero()
        total: Dict[Exponents, GaussianRational] = {}
        for part in text.split(" + "):
            pieces = [piece.strip() for piece in part.split("*")]
            if len(pieces) != 3:
                raise ValueError(f"Malformed PBW term: {part!r}")
            coefficient = GaussianRational.parse_term(f"{pieces[0]} * {pieces[1]}")
            factors = pieces[2].split()
            if len(factors) != self.n:
                raise ValueError(f"Expected {self.n} factors in {pieces[2]!r}")
            exps = []
            for j, factor in enumerate(factors):
                name, _, exponent = factor.partition("^")
                if name != f"x{j + 1}" or not exponent.isdigit():
                    raise ValueError(f"Malformed factor {factor!r}")
                exps.append(int(exponent))
            key = tuple(exps)
            total[key] = total.get(key, ZERO) + coefficient
        return self.element(total)


class ActionKind(str, Enum):
    P0 = "P0"
    P = "P"
    E = "E"
    E_INV = "E^-1"


@dataclass(frozen=True)
class ActionElement:
    """Translation-sector generator: P0, P_j (j = PBW index 2..n), E or E^-1."""

    kind: ActionKind
    index: Optional[int] = None

    @classmethod
    def p0(cls) -> ActionElement:
        return cls(ActionKind.P0)

    @classmethod
    def p(cls, j: int) -> ActionElement:
        return cls(ActionKind.P, j)

    @classmethod
    def e(cls) -> ActionElement:
        return cls(ActionKind.E)

    @classmethod
    def e_inv(cls) -> ActionElement:
        return cls(ActionKind.E_INV)

    def __str__(self) -> str:
        return f"P{self.index}" if self.kind is ActionKind.P else self.kind.value


__all__ = [
    "Exponents",
    "graded_key",
    "monomials_up_to",
    "PBWElement",
    "PBWAlgebra",
    "ActionKind",
    "ActionElement",
]
