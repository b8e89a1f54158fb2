#!/usr/bin/env python3
"""Tests for the enveloping algebra in PBW normal form."""

from fractions import Fraction

import pytest

from kappa_nc.algebra.gaussian_rational import I, ONE, GaussianRational
from kappa_nc.algebra.pbw import ActionElement, PBWAlgebra, monomials_up_to


class TestPBWAlgebra:
    """Normal ordering and the defining relations."""

    def setup_method(self):
        self.algebra = PBWAlgebra(3, Fraction(1, 2))
        self.x1, self.x2, self.x3 = (self.algebra.generator(j) for j in (1, 2, 3))

    def test_monomial_order(self):
        assert monomials_up_to(2, 2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
        assert len(monomials_up_to(3, 2)) == 10

    def test_reordering(self):
        T = self.algebra.T
        assert T == GaussianRational(0, Fraction(1, 2))
        product = self.algebra.normal_form([2, 1])
        expected = self.algebra.element({(1, 1, 0): 1, (0, 1, 0): -T})
        assert product == expected

    def test_moving_x1_past_a_higher_degree_monomial(self):
        T = self.algebra.T
        word = self.algebra.normal_form([2, 3, 1])
        expected = self.algebra.element({(1, 1, 1): 1, (0, 1, 1): -2 * T})
        assert word == expected

    def test_brackets(self):
        T = self.algebra.T
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                commutator = self.algebra.multiply(
                    self.algebra.generator(i), self.algebra.generator(j)
                ) - self.algebra.multiply(self.algebra.generator(j), self.algebra.generator(i))
                assert commutator == self.algebra.bracket(i, j)
        assert self.algebra.bracket(1, 3) == self.x3.scale(T)
        assert self.algebra.bracket(2, 3).is_zero()

    def test_associativity(self):
        p = self.x1 + self.x2.scale(I)
        q = self.algebra.power(self.x1, 2) + self.x3
        r = self.x2 * self.x1 + self.algebra.scalar(2)
        left = self.algebra.multiply(self.algebra.multiply(p, q), r)
        right = self.algebra.multiply(p, self.algebra.multiply(q, r))
        assert left == right

    def test_degree(self):
        assert self.algebra.zero().degree == -1
        assert self.algebra.one().degree == 0
        assert self.algebra.normal_form([3, 1, 2]).degree == 3

    def test_invalid_generators(self):
        with pytest.raises(ValueError):
            self.algebra.generator(4)
        with pytest.raises(ValueError):
            self.algebra.element({(1, 0): 1})
        with pytest.raises(ValueError):
            PBWAlgebra(0)

    def test_different_algebras_do_not_mix(self):
        other = PBWAlgebra(3, Fraction(1))
        with pytest.raises(ValueError):
            self.algebra.multiply(self.x1, other.generator(1))

    def test_text_round_trip(self):
        p = self.algebra.normal_form([2, 1], scale=GaussianRational(Fraction(3, 2), -1))
        text = p.to_text()
        assert "3/2 * i^0 * x1^1 x2^1 x3^0" in text
        assert self.algebra.parse(text) == p
        assert self.algebra.parse("0").is_zero()
        assert self.algebra.zero().to_text() == "0"

    @pytest.mark.parametrize(
        "text", ["1 * i^0 * x1^1 x2^0", "1 * x1^1 x2^0 x3^0", "1 * i^0 * y1^1 x2^0 x3^0"]
    )
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            self.algebra.parse(text)


class TestTranslationAction:
    """The Hopf action of translations on the algebra."""

    def setup_method(self):
        self.algebra = PBWAlgebra(3, Fraction(2))
        self.x1, self.x2, self.x3 = (self.algebra.generator(j) for j in (1, 2, 3))

    def test_generators(self):
        T = self.algebra.T
        minus_i = GaussianRational(0, -1)
        assert self.algebra.act(ActionElement.e(), self.x1) == self.x1 + self.algebra.scalar(T)
        assert self.algebra.act(ActionElement.e_inv(), self.x1) == self.x1 - self.algebra.scalar(T)
        assert self.algebra.act(ActionElement.p0(), self.x1) == self.algebra.scalar(minus_i)
        assert self.algebra.act(ActionElement.p(2), self.x2) == self.algebra.scalar(minus_i)
        assert self.algebra.act(ActionElement.p(3), self.x2).is_zero()

    def test_e_and_inverse(self):
        p = self.algebra.normal_form([1, 1, 2])
        there = self.algebra.act(ActionElement.e(), p)
        assert self.algebra.act(ActionElement.e_inv(), there) == p

    def test_spatial_derivative_shifts_time(self):
        p = self.algebra.normal_form([1, 2])
        acted = self.algebra.act(ActionElement.p(2), p)
        expected = (self.x1 + self.algebra.scalar(self.algebra.T)).scale(GaussianRational(0, -1))
        assert acted == expected

    @pytest.mark.parametrize(
        "h",
        [ActionElement.p0(), ActionElement.p(2), ActionElement.p(3), ActionElement.e()],
        ids=str,
    )
    def test_module_algebra_property(self, h):
        p = self.algebra.normal_form([2, 1, 1]) + self.x3.scale(I)
        q = self.algebra.normal_form([1, 3, 2])
        assert self.algebra.module_algebra_residual(h, p, q).is_zero()

    def test_spatial_index_checked(self):
        with pytest.raises(ValueError):
            self.algebra.act(ActionElement.p(1), self.x1)

    def test_sigma_and_twisted_adjoint(self):
        U = GaussianRational(0, 3)
        assert self.algebra.sigma(self.x1, U) == self.x1 + self.algebra.scalar(U)
        assert self.algebra.sigma(self.x2, U) == self.x2
        assert self.algebra.twisted_adjoint(1, self.algebra.one(), U) == self.algebra.scalar(U)
        assert self.algebra.twisted_adjoint(2, self.x1, U) == self.x2.scale(-self.algebra.T)
        assert str(ActionElement.p(2)) == "P2"
        assert str(ActionElement.e_inv()) == "E^-1"
        assert ONE == self.algebra.one().coefficient((0, 0, 0))
