"""Unit tests for the exact polynomial layer."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import random_poly
from multistruct.arith import (
    MultiPoly,
    PolyT,
    binomial_poly,
    const,
    format_poly,
    parse_poly,
    substitute_eval,
    univariate_resultant,
    var,
)

t = var("t")
r = var("r")


class TestConstruction:
    def test_zero_and_const(self):
        assert MultiPoly.zero().is_zero()
        assert const(0).is_zero()
        assert const(5).as_fraction() == 5
        assert const(Fraction(2, 3)).as_fraction() == Fraction(2, 3)

    def test_unknown_variable_rejected(self):
        with pytest.raises(ValueError):
            var("q")

    def test_int_coercion(self):
        assert (t + 1) - 1 == t
        assert 2 * t == t + t
        assert 1 - t == -(t - 1)

    def test_equality_against_scalars(self):
        assert const(7) == 7
        assert const(Fraction(1, 2)) == Fraction(1, 2)
        assert t != 1


class TestArithmetic:
    def test_product_expansion(self):
        assert (t + 1) * (t - 1) == t * t - 1
        assert (t + r) ** 2 == t * t + 2 * t * r + r * r

    def test_pow(self):
        assert (t + 1) ** 0 == 1
        assert (t + 1) ** 3 == t**3 + 3 * t * t + 3 * t + 1
        with pytest.raises(ValueError):
            (t + 1) ** -1

    def test_scalar_div(self):
        assert (2 * t).scalar_div(2) == t
        assert t.scalar_div(Fraction(1, 3)) == 3 * t
        with pytest.raises(ZeroDivisionError):
            t.scalar_div(0)

    def test_degree(self):
        p = t**3 * r + 1
        assert p.degree() == 4
        assert p.degree("t") == 3
        assert p.degree("r") == 1
        assert MultiPoly.zero().degree() == -1

    def test_variables_used(self):
        assert (t * r + 1).variables_used() == ("t", "r")
        assert const(3).variables_used() == ()


class TestSubstitution:
    def test_scalar_substitution(self):
        p = t * t + r * t + 1
        assert p.substitute({"t": 2}) == 2 * r + 5

    def test_polynomial_substitution(self):
        p = t * t + 1
        assert p.substitute({"t": r + 1}) == r * r + 2 * r + 2

    def test_substitute_eval(self):
        p = t * r + r
        assert substitute_eval(p, {"t": 1, "r": Fraction(1, 2)}) == 1

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            t.substitute({"q": 1})


class TestPolyT:
    def test_coeff_extraction(self):
        p = PolyT(3 * t * t + r * t + 7)
        assert p.coeff(2) == 3
        assert p.coeff(1) == r
        assert p.coeff(0) == 7
        assert p.degree_t() == 2

    def test_arithmetic_mirrors_poly(self):
        p = PolyT(t + 1)
        q = p * p - 2 * p + 1
        assert q == PolyT(t * t)

    def test_binomial_poly(self):
        assert binomial_poly(0) == 1
        assert binomial_poly(1) == PolyT(t + 1)
        assert binomial_poly(2) == PolyT((t + 2) * (t + 1)).scalar_div(2)
        # integer values on a window
        for n in range(4):
            p = binomial_poly(n)
            for value in range(-6, 7):
                got = p.poly.substitute({"t": value}).as_fraction()
                assert got.denominator == 1


class TestFormatParse:
    def test_canonical_examples(self):
        assert format_poly(MultiPoly.zero()) == "0"
        assert format_poly(2 * t + 1) == "2*t + 1"
        assert format_poly(-t + Fraction(1, 2)) == "-t + (1/2)"
        assert format_poly(t**2 * r) == "t^2*r"

    def test_round_trip_random(self):
        rng = random.Random(20260815)
        for _ in range(100):
            p = random_poly(rng, names=("t", "r", "s"), max_degree=4)
            assert parse_poly(format_poly(p)) == p

    def test_parse_rejects_garbage(self):
        for bad in ("", "t +", "2 ** t", "q + 1", "t^(2)"):
            with pytest.raises(ValueError):
                parse_poly(bad)


class TestResultant:
    def test_linear_pair(self):
        x = var("x")
        assert univariate_resultant(x, x - 1) == 1

    def test_common_root_detected(self):
        x = var("x")
        f = (x - 2) * (x + 1)
        g = (x - 2) * (x - 5)
        assert univariate_resultant(f, g) == 0

    def test_no_common_root(self):
        x = var("x")
        assert univariate_resultant(x * x + 1, x - 3) != 0
