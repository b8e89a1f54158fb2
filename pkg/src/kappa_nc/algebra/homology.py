"""Twisted Chevalley-Eilenberg complex of g_κ and the map to Hochschild chains.

Coefficients live in M = U(g_κ) with the twisted adjoint action
X(m) = σ(X) m - m X, σ: x1 -> x1 + U. A chain of degree k is a sparse sum of
m ⊗ x_S with m a normal monomial of total degree <= d and S an increasing
k-subset of {1..n}. The differential is

    δ(m ⊗ X1∧...∧Xk) = Σ_{i<j} (-1)^(i+j) m ⊗ [Xi, Xj] ∧ X1∧..X̂i..X̂j..∧Xk
                      + Σ_i (-1)^i Xi(m) ⊗ X1∧..X̂i..∧Xk.

δ preserves total PBW degree bounds and the multigrade in x2..xn (exponents of m
plus wedge indicators), so matrices split into small blocks.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..core.errors import ChainComplexDefect
from ..core.workers import parallel_map
from ..models.config import HomologyParams
from .gaussian_rational import ONE, ZERO, GaussianRational, Scalar
from .linear_algebra import determinant, nullspace, rank
from .pbw import Exponents, PBWAlgebra, PBWElement, graded_key, monomials_up_to

logger = logging.getLogger(__name__)

Wedge = Tuple[int, ...]
ChainKey = Tuple[Exponents, Wedge]
HochschildKey = Tuple[Exponents, Tuple[Exponents, ...]]
Vector = Sequence[Scalar]


def colex_key(wedge: Wedge) -> Tuple[int, ...]:
    return tuple(reversed(wedge))


def wedge_subsets(n: int, k: int) -> List[Wedge]:
    """Increasing k-subsets of {1..n} in colex order."""
    return sorted(itertools.combinations(range(1, n + 1), k), key=colex_key)


def sort_wedge(indices: Sequence[int]) -> Tuple[int, Optional[Wedge]]:
    """(sign, sorted indices) of x_{i1}∧...∧x_{ik}; (0, None) on a repeated index."""
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(
        1 for a, b in itertools.combinations(range(len(indices)), 2) if indices[a] > indices[b]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


def permutation_sign(perm: Sequence[int]) -> int:
    sign, _ = sort_wedge(perm)
    return sign


def _add(target: Dict, key, value: GaussianRational) -> None:
    total = target.get(key, ZERO) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


@dataclass(frozen=True, eq=False)
class ChainVector:
    """Sparse element of M_{<=d} ⊗ Λ^k g."""

    k: int
    entries: Tuple[Tuple[ChainKey, GaussianRational], ...]
    degree_bound: Optional[int] = None

    def as_dict(self) -> Dict[ChainKey, GaussianRational]:
        return dict(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def pbw_degree(self) -> int:
        return max((sum(exps) for (exps, _), _ in self.entries), default=-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainVector):
            return NotImplemented
        return self.k == other.k and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.k, self.entries))


@dataclass(frozen=True, eq=False)
class HochschildChain:
    """Sparse element of M ⊗ U(g)^{⊗k} on PBW basis monomials."""

    k: int
    entries: Tuple[Tuple[HochschildKey, GaussianRational], ...]

    def as_dict(self) -> Dict[HochschildKey, GaussianRational]:
        return dict(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HochschildChain):
            return NotImplemented
        return self.k == other.k and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.k, self.entries))


@dataclass(frozen=True)
class TwistedComplex:
    """CE complex of U(g_κ) on n generators, twist U = iμ, truncated at PBW degree d."""

    algebra: PBWAlgebra
    U: GaussianRational
    d: Optional[int] = None

    @classmethod
    def from_params(cls, params: HomologyParams) -> TwistedComplex:
        algebra = PBWAlgebra(params.n, params.lam)
        return cls(algebra, algebra.mass_parameter(params.mu), params.d)

    @classmethod
    def create(cls, n: int, lam: Fraction, mu: Fraction, d: Optional[int] = None) -> TwistedComplex:
        algebra = PBWAlgebra(n, lam)
        return cls(algebra, algebra.mass_parameter(mu), d)

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def T(self) -> GaussianRational:
        return self.algebra.T

    def chain(self, k: int, entries: Mapping[ChainKey, Scalar]) -> ChainVector:
        """Canonical chain; wedges are sorted with their sign.

        Raises:
            ChainComplexDefect: a monomial exceeds the degree bound
        """
        total: Dict[ChainKey, GaussianRational] = {}
        for (exps, wedge), coefficient in entries.items():
            if len(wedge) != k:
                raise ValueError(f"Wedge {wedge} does not have degree {k}")
            sign, ordered = sort_wedge(wedge)
            if not sign:
                continue
            exps = tuple(exps)
            if self.d is not None and sum(exps) > self.d:
                raise ChainComplexDefect(
                    f"Monomial {exps} of degree {sum(exps)} exceeds the bound d={self.d}"
                )
            _add(total, (exps, ordered), GaussianRational.coerce(coefficient) * sign)
        ordered_entries = sorted(
            total.items(), key=lambda item: (graded_key(item[0][0]), colex_key(item[0][1]))
        )
        return ChainVector(k, tuple(ordered_entries), self.d)

    def basis(self, k: int) -> List[ChainKey]:
        """Basis of M_{<=d} ⊗ Λ^k in (graded lex, colex) order."""
        if self.d is None:
            raise ValueError("A basis needs a degree bound d")
        return [
            (exps, wedge)
            for exps in monomials_up_to(self.n, self.d)
            for wedge in wedge_subsets(self.n, k)
        ]

    def multigrade(self, key: ChainKey) -> Tuple[int, ...]:
        exps, wedge = key
        return tuple(exps[j] + (1 if j + 1 in wedge else 0) for j in range(1, self.n))

    def unit_vector(self, j: int) -> List[GaussianRational]:
        vector = [ZERO] * self.n
        vector[j - 1] = ONE
        return vector

    def bracket_vector(self, X: Vector, Y: Vector) -> List[GaussianRational]:
        """[X, Y] as a coefficient vector, from the generator brackets."""
        result = [ZERO] * self.n
        for a, b in itertools.product(range(1, self.n + 1), repeat=2):
            factor = GaussianRational.coerce(X[a - 1]) * Y[b - 1]
            if not factor:
                continue
            for exps, coefficient in self.algebra.bracket(a, b).terms:
                result[exps.index(1)] = result[exps.index(1)] + factor * coefficient
        return result

    def act_vector(self, X: Vector, m: PBWElement) -> PBWElement:
        """X(m) for X = Σ X_a x_a."""
        pieces = [
            (GaussianRational.coerce(X[a - 1]), self.algebra.twisted_adjoint(a, m, self.U))
            for a in range(1, self.n + 1)
            if X[a - 1]
        ]
        return self.algebra.combine(pieces)

    def wedge_entries(
        self, m: PBWElement, vectors: Sequence[Vector], scale: Scalar = ONE
    ) -> Dict[ChainKey, GaussianRational]:
        """Expand scale * m ⊗ V1∧...∧Vk into basis entries."""
        total: Dict[ChainKey, GaussianRational] = {}
        if m.is_zero():
            return total
        supports = [[j for j in range(1, self.n + 1) if v[j - 1]] for v in vectors]
        for choice in itertools.product(*supports):
            sign, ordered = sort_wedge(choice)
            if not sign:
                continue
            factor = GaussianRational.coerce(scale) * sign
            for v, j in zip(vectors, choice):
                factor = factor * v[j - 1]
            for exps, coefficient in m.terms:
                _add(total, (exps, ordered), coefficient * factor)
        return total

    def wedge_chain(self, m: PBWElement, vectors: Sequence[Vector]) -> ChainVector:
        return self.chain(len(vectors), self.wedge_entries(m, vectors))

    def differential_of_wedge(
        self, m: PBWElement, vectors: Sequence[Vector]
    ) -> Dict[ChainKey, GaussianRational]:
        """δ(m ⊗ X1∧...∧Xk) straight from the two-sum formula."""
        k = len(vectors)
        total: Dict[ChainKey, GaussianRational] = {}
        for i, j in itertools.combinations(range(k), 2):
            bracket = self.bracket_vector(vectors[i], vectors[j])
            if not any(bracket):
                continue
            rest = [v for index, v in enumerate(vectors) if index not in (i, j)]
            sign = -1 if (i + j) % 2 else 1
            for key, value in self.wedge_entries(m, [bracket] + rest, sign).items():
                _add(total, key, value)
        for i in range(k):
            acted = self.act_vector(vectors[i], m)
            rest = [v for index, v in enumerate(vectors) if index != i]
            sign = -1 if (i + 1) % 2 else 1
            for key, value in self.wedge_entries(acted, rest, sign).items():
                _add(total, key, value)
        return total

    def differential(self, c: ChainVector) -> ChainVector:
        """ce_differential on a chain; degree 0 maps to zero.

        Raises:
            ChainComplexDefect: the image exceeds the degree bound
        """
        if c.k == 0:
            return ChainVector(0, (), self.d)
        total: Dict[ChainKey, GaussianRational] = {}
        for (exps, wedge), coefficient in c.entries:
            m = self.algebra.monomial(exps, coefficient)
            vectors = [self.unit_vector(j) for j in wedge]
            for key, value in self.differential_of_wedge(m, vectors).items():
                _add(total, key, value)
        return self.chain(c.k - 1, total)

    def lemma_form(self, m: PBWElement, C: Sequence[Sequence[Scalar]]) -> ChainVector:
        """det C · [-(n-1) T m ⊗ x̂1 + Σ_j (-1)^j x_j(m) ⊗ x̂j] in top degree."""
        n = self.n
        det = determinant(C)
        total: Dict[ChainKey, GaussianRational] = {}
        full = tuple(range(1, n + 1))
        for exps, coefficient in m.terms:
            _add(total, (exps, full[1:]), coefficient * self.T * (-(n - 1)) * det)
        for j in range(1, n + 1):
            acted = self.algebra.twisted_adjoint(j, m, self.U)
            sign = -1 if j % 2 else 1
            missing = full[: j - 1] + full[j:]
            for exps, coefficient in acted.terms:
                _add(total, (exps, missing), coefficient * det * sign)
        return self.chain(n - 1, total)

    def delta_split_check(self, m: PBWElement, C: Sequence[Sequence[Scalar]]) -> ChainVector:
        """δ(m ⊗ X1∧...∧Xn), X_i = Σ_j C[i][j] x_j, minus its lemma form; always zero."""
        if len(C) != self.n or any(len(row) != self.n for row in C):
            raise ValueError(f"C must be {self.n}x{self.n}")
        direct = self.chain(self.n - 1, self.differential_of_wedge(m, C))
        return subtract_chains(self, direct, self.lemma_form(m, C))

    def _block_keys(self, k: int) -> Dict[Tuple[int, ...], List[ChainKey]]:
        blocks: Dict[Tuple[int, ...], List[ChainKey]] = {}
        for key in self.basis(k):
            blocks.setdefault(self.multigrade(key), []).append(key)
        return blocks

    def blocks(
        self, k: int
    ) -> List[Tuple[List[ChainKey], List[ChainKey], List[List[GaussianRational]]]]:
        """Matrix blocks of δ: C_k -> C_{k-1} as (columns, rows, matrix) per multigrade."""
        sources = self._block_keys(k)
        targets = self._block_keys(k - 1) if k >= 1 else {}
        result = []
        for grade, columns in sorted(sources.items()):
            rows = targets.get(grade, [])
            index = {key: r for r, key in enumerate(rows)}

            def column(key: ChainKey) -> Dict[ChainKey, GaussianRational]:
                return self.differential(self.chain(k, {key: ONE})).as_dict()

            images = parallel_map(column, columns)
            matrix = [[ZERO] * len(columns) for _ in rows]
            for c, image in enumerate(images):
                for key, value in image.items():
                    if key not in index:
                        raise ChainComplexDefect(
                            f"δ moved {columns[c]} outside its multigrade block to {key}"
                        )
                    matrix[index[key]][c] = value
            result.append((columns, rows, matrix))
        logger.debug(
            f"δ_{k} blocks for n={self.n}, d={self.d}: "
            f"{[(len(cols), len(rows)) for cols, rows, _ in result]}"
        )
        return result

    def differential_rank(self, k: int) -> int:
        """Rank of δ: C_k -> C_{k-1}; zero outside 1..n."""
        if k < 1 or k > self.n:
            return 0
        return sum(rank(matrix) for _, rows, matrix in self.blocks(k) if rows)

    def top_kernel(self) -> List[ChainVector]:
        """Kernel of δ on M_{<=d} ⊗ Λ^n g in canonical basis order."""
        order = {key: i for i, key in enumerate(self.basis(self.n))}
        found = []
        for columns, rows, matrix in self.blocks(self.n):
            for vector in nullspace(matrix, n_cols=len(columns)):
                entries = {columns[c]: value for c, value in enumerate(vector) if value}
                lead = min(order[key] for key in entries)
                found.append((lead, self.chain(self.n, entries)))
        found.sort(key=lambda item: item[0])
        return [chain for _, chain in found]

    # Hochschild side

    def hochschild_chain(self, k: int, entries: Mapping[HochschildKey, Scalar]) -> HochschildChain:
        total: Dict[HochschildKey, GaussianRational] = {}
        for (m_exps, factors), coefficient in entries.items():
            if len(factors) != k:
                raise ValueError(f"Hochschild key {factors} does not have {k} factors")
            key = (tuple(m_exps), tuple(tuple(a) for a in factors))
            _add(total, key, GaussianRational.coerce(coefficient))
        ordered = sorted(
            total.items(),
            key=lambda item: (graded_key(item[0][0]), [graded_key(a) for a in item[0][1]]),
        )
        return HochschildChain(k, tuple(ordered))

    def epsilon(self, c: ChainVector) -> HochschildChain:
        """Antisymmetrization m ⊗ X1∧...∧Xk -> Σ_s sgn(s) m ⊗ X_s(1) ⊗ ... ⊗ X_s(k)."""
        total: Dict[HochschildKey, GaussianRational] = {}
        for (exps, wedge), coefficient in c.entries:
            for perm in itertools.permutations(range(len(wedge))):
                factors = tuple(self._generator_exps(wedge[p]) for p in perm)
                _add(total, (exps, factors), coefficient * permutation_sign(perm))
        return self.hochschild_chain(c.k, total)

    def _generator_exps(self, j: int) -> Exponents:
        exps = [0] * self.n
        exps[j - 1] = 1
        return tuple(exps)

    def _expand(
        self,
        total: Dict[HochschildKey, GaussianRational],
        head: PBWElement,
        factors: Sequence[PBWElement],
        scale: GaussianRational,
    ) -> None:
        for choice in itertools.product(head.terms, *[f.terms for f in factors]):
            value = scale
            for _, coefficient in choice:
                value = value * coefficient
            key = (choice[0][0], tuple(exps for exps, _ in choice[1:]))
            _add(total, key, value)

    def hochschild_boundary(self, hc: HochschildChain) -> HochschildChain:
        """b for the bimodule a·m·c = σ(a) m c; degree 0 maps to zero."""
        if hc.k == 0:
            return HochschildChain(0, ())
        algebra = self.algebra
        total: Dict[HochschildKey, GaussianRational] = {}
        for (m_exps, factor_exps), coefficient in hc.entries:
            m = algebra.monomial(m_exps)
            a = [algebra.monomial(exps) for exps in factor_exps]
            k = hc.k
            self._expand(total, algebra.multiply(m, a[0]), a[1:], coefficient)
            for i in range(1, k):
                merged = algebra.multiply(a[i - 1], a[i])
                sign = -ONE if i % 2 else ONE
                self._expand(total, m, a[: i - 1] + [merged] + a[i + 1 :], coefficient * sign)
            last = algebra.multiply(algebra.sigma(a[k - 1], self.U), m)
            sign = -ONE if k % 2 else ONE
            self._expand(total, last, a[: k - 1], coefficient * sign)
        return self.hochschild_chain(hc.k - 1, total)

    def orientation_cycle(self) -> HochschildChain:
        """ε(1 ⊗ x1∧...∧xn)."""
        top = self.chain(self.n, {((0,) * self.n, tuple(range(1, self.n + 1))): ONE})
        return self.epsilon(top)


def subtract_chains(cx: TwistedComplex, a: ChainVector, b: ChainVector) -> ChainVector:
    if a.k != b.k:
        raise ValueError(f"Cannot subtract chains of degrees {a.k} and {b.k}")
    total = a.as_dict()
    for key, value in b.entries:
        _add(total, key, -value)
    return cx.chain(a.k, total)


def subtract_hochschild(
    cx: TwistedComplex, a: HochschildChain, b: HochschildChain
) -> HochschildChain:
    if a.k != b.k:
        raise ValueError(f"Cannot subtract chains of degrees {a.k} and {b.k}")
    total = a.as_dict()
    for key, value in b.entries:
        _add(total, key, -value)
    return cx.hochschild_chain(a.k, total)


def ce_differential(c: ChainVector, cx: TwistedComplex) -> ChainVector:
    return cx.differential(c)


def epsilon_map(c: ChainVector, cx: TwistedComplex) -> HochschildChain:
    return cx.epsilon(c)


def hochschild_boundary(hc: HochschildChain, cx: TwistedComplex) -> HochschildChain:
    return cx.hochschild_boundary(hc)


def chain_map_residual(c: ChainVector, cx: TwistedComplex) -> HochschildChain:
    """ε(δc) - b(ε(c)); zero for every chain."""
    direct = cx.epsilon(cx.differential(c))
    return subtract_hochschild(cx, direct, cx.hochschild_boundary(cx.epsilon(c)))


def delta_split_check(
    m: PBWElement, C: Sequence[Sequence[Scalar]], cx: TwistedComplex
) -> ChainVector:
    return cx.delta_split_check(m, C)


def top_kernel(params: HomologyParams) -> List[ChainVector]:
    return TwistedComplex.from_params(params).top_kernel()


def kernel_mu_scan(
    n: int, d: int, lam: Fraction, mu_list: Iterable[Fraction]
) -> Dict[Fraction, int]:
    """Top-kernel dimension for each μ."""
    dims = {}
    for mu in mu_list:
        mu = Fraction(mu)
        dims[mu] = len(TwistedComplex.create(n, lam, mu, d).top_kernel())
        logger.debug(f"n={n}, d={d}, mu={mu}: top kernel dimension {dims[mu]}")
    return dims


def expected_kernel_dimension(n: int, d: int, lam: Fraction, mu: Fraction) -> int:
    """Number of monomials in x2..xn of degree k when μ = -λ(n-1+k), 0 <= k <= d; else 0."""
    ratio = -Fraction(mu) / Fraction(lam) - (n - 1)
    if ratio.denominator != 1 or not 0 <= ratio <= d:
        return 0
    k = int(ratio)
    return math.comb(k + n - 2, n - 2)


@dataclass
class DegreeSummary:
    dim_chain: int
    rank_delta_in: int
    rank_delta_out: int
    kernel_dim: int
    homology_dim: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "dim_chain": self.dim_chain,
            "rank_delta_in": self.rank_delta_in,
            "rank_delta_out": self.rank_delta_out,
            "kernel_dim": self.kernel_dim,
            "homology_dim": self.homology_dim,
        }


@dataclass
class HomologyReport:
    """Truncated ranks per degree plus the top-degree kernel basis."""

    n: int
    d: int
    lam: Fraction
    mu: Fraction
    T: GaussianRational
    U: GaussianRational
    per_degree: Dict[int, DegreeSummary] = field(default_factory=dict)
    top_kernel_basis: List[str] = field(default_factory=list)
    orientation_cycle_closed: bool = False

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "d": self.d,
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "T": " + ".join(self.T.text_terms()) or "0",
            "U": " + ".join(self.U.text_terms()) or "0",
            "per_degree": {str(k): summary.to_dict() for k, summary in self.per_degree.items()},
            "top_kernel_basis": self.top_kernel_basis,
            "top_kernel_dim": len(self.top_kernel_basis),
            "orientation_cycle_closed": self.orientation_cycle_closed,
        }


def homology_report(params: HomologyParams) -> HomologyReport:
    """Ranks of the truncated complex in every degree 0..n and the top kernel.

    Middle-degree numbers describe the truncation only.
    """
    cx = TwistedComplex.from_params(params)
    n = params.n
    ranks = {k: cx.differential_rank(k) for k in range(1, n + 1)}
    size = len(monomials_up_to(n, params.d))
    report = HomologyReport(n=n, d=params.d, lam=params.lam, mu=params.mu, T=cx.T, U=cx.U)
    for k in range(n + 1):
        dim_chain = size * math.comb(n, k)
        rank_out = ranks.get(k, 0)
        rank_in = ranks.get(k + 1, 0)
        kernel_dim = dim_chain - rank_out
        report.per_degree[k] = DegreeSummary(
            dim_chain, rank_in, rank_out, kernel_dim, kernel_dim - rank_in
        )
    report.top_kernel_basis = [
        cx.algebra.element({exps: c for (exps, _), c in chain.entries}).to_text()
        for chain in cx.top_kernel()
    ]
    report.orientation_cycle_closed = cx.hochschild_boundary(cx.orientation_cycle()).is_zero()
    return report


__all__ = [
    "ChainVector",
    "HochschildChain",
    "TwistedComplex",
    "wedge_subsets",
    "sort_wedge",
    "subtract_chains",
    "subtract_hochschild",
    "ce_differential",
    "epsilon_map",
    "hochschild_boundary",
    "chain_map_residual",
    "delta_split_check",
    "top_kernel",
    "kernel_mu_scan",
    "expected_kernel_dimension",
    "DegreeSummary",
    "HomologyReport",
    "homology_report",
]
