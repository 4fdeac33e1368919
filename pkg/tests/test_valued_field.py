"""Tests for the model field Q(p^(1/e)) and its valuation."""

from fractions import Fraction
from math import inf

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis.strategies import fractions, integers, lists

from src.phinmod.error_handler import FieldDivisionError, FieldError, FieldMismatchError
from src.phinmod.valued_field import make_field, padic_valuation

E = make_field(2, 6)


def elements(field=E):
    """Hypothesis strategy for field elements with small rational coefficients."""
    coefficient = fractions(min_value=-8, max_value=8, max_denominator=6)
    return lists(coefficient, min_size=field.ramification, max_size=field.ramification).map(
        field.from_coefficients
    )


class TestFieldSpec:

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 19])
    def test_accepts_primes(self, p):
        """Test that every small prime gives a field."""
        assert make_field(p, 2).prime == p

    def test_rejects_composite_prime(self):
        """Test that a non-prime p is refused."""
        with pytest.raises(FieldError):
            make_field(4, 6)

    def test_rejects_bad_ramification(self):
        """Test that e must be positive."""
        with pytest.raises(FieldError):
            make_field(2, 0)

    def test_uniformizer_power_is_p(self):
        """Test that u^e = p."""
        u = E.uniformizer
        assert u ** 6 == 2
        assert E.uniformizer_power(6) == 2
        assert E.uniformizer_power(-6) == Fraction(1, 2)

    def test_grid(self):
        """Test the valuation grid (1/e)Z on an interval."""
        grid = E.grid_valuations(0, 1)
        assert len(grid) == 7
        assert grid[0] == 0 and grid[-1] == 1 and grid[1] == Fraction(1, 6)

    def test_parse_encodings(self):
        """Test the coefficient-list and scalar encodings."""
        assert E.parse("3/4") == Fraction(3, 4)
        assert E.parse(5) == 5
        assert E.parse(["0", "1", 0, 0, 0, 0]) == E.uniformizer

    def test_parse_rejects_floats(self):
        """Test that floats are not accepted as exact values."""
        with pytest.raises(FieldError):
            E.parse(0.5)

    def test_parse_rejects_wrong_length(self):
        """Test that a coefficient list must have e entries."""
        with pytest.raises(FieldError):
            E.parse([1, 2])


class TestValuation:

    def test_padic_valuation(self):
        """Test v_p on rationals."""
        assert padic_valuation(Fraction(12), 2) == 2
        assert padic_valuation(Fraction(3, 8), 2) == -3
        assert padic_valuation(Fraction(5), 2) == 0
        assert padic_valuation(Fraction(-45, 7), 3) == 2

    def test_zero_has_infinite_valuation(self):
        """Test v(0) = +inf."""
        assert E.zero.valuation() == inf

    def test_valuation_of_uniformizer(self):
        """Test v(u) = 1/e and v(p) = 1."""
        assert E.uniformizer.valuation() == Fraction(1, 6)
        assert E.element(2).valuation() == 1
        assert (E.uniformizer ** 5 * 3).valuation() == Fraction(5, 6)

    def test_mixed_terms_take_minimum(self):
        """Test that v(a0 + a1 u) picks the smaller term."""
        x = E.from_coefficients([4, 1, 0, 0, 0, 0])
        assert x.valuation() == Fraction(1, 6)

    def test_element_with_valuation(self):
        """Test that random elements hit the requested valuation."""
        rng = np.random.default_rng(7)
        for k in range(-6, 19):
            v = Fraction(k, 6)
            assert E.element_with_valuation(v, rng).valuation() == v

    def test_element_with_valuation_off_grid(self):
        """Test that valuations outside (1/e)Z are refused."""
        with pytest.raises(FieldError):
            E.element_with_valuation(Fraction(1, 4), np.random.default_rng(0))

    def test_random_unit(self):
        """Test that random units have valuation zero."""
        rng = np.random.default_rng(3)
        assert all(E.random_unit(rng).valuation() == 0 for _ in range(50))


class TestArithmetic:

    def test_division_by_zero(self):
        """Test the dedicated division error."""
        with pytest.raises(FieldDivisionError):
            E.one / E.zero

    def test_mixed_fields_refused(self):
        """Test that elements of different fields do not combine."""
        other = make_field(3, 2)
        with pytest.raises(FieldMismatchError):
            E.one + other.one

    def test_rational_coercion(self):
        """Test arithmetic with plain integers and Fractions."""
        x = E.uniformizer
        assert 1 - x == -(x - 1)
        assert 2 * x == x + x
        assert (1 / x) * x == 1
        assert x / 2 == x * Fraction(1, 2)

    def test_immutable(self):
        """Test that elements cannot be mutated."""
        with pytest.raises(AttributeError):
            E.one.coefficients = ()

    def test_hash_matches_rationals(self):
        """Test that rational elements hash like their Fraction."""
        assert hash(E.element(Fraction(2, 3))) == hash(Fraction(2, 3))
        assert len({E.element(1), E.one, E.from_coefficients([1, 0, 0, 0, 0, 0])}) == 1


class TestFieldProperties:

    @given(x=elements())
    @settings(max_examples=60, deadline=None)
    def test_inverse(self, x):
        assume(not x.is_zero())
        assert x * x.inverse() == 1

    @given(x=elements(), y=elements())
    @settings(max_examples=60, deadline=None)
    def test_valuation_is_multiplicative(self, x, y):
        assume(not x.is_zero() and not y.is_zero())
        assert (x * y).valuation() == x.valuation() + y.valuation()

    @given(x=elements(), y=elements())
    @settings(max_examples=60, deadline=None)
    def test_ultrametric(self, x, y):
        assume(not (x + y).is_zero())
        assert (x + y).valuation() >= min(x.valuation(), y.valuation())

    @given(x=elements(), y=elements(), z=elements())
    @settings(max_examples=40, deadline=None)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(x=elements(), k=integers(min_value=-3, max_value=5))
    @settings(max_examples=40, deadline=None)
    def test_power(self, x, k):
        assume(not x.is_zero())
        assert (x ** k).valuation() == k * x.valuation()


class TestNumberFieldBridge:

    def test_domain_round_trip(self):
        """Test that conversion to the sympy number field keeps coefficients."""
        x = E.from_coefficients([Fraction(1, 3), 0, -2, 0, 0, 5])
        assert E.from_domain(E.to_domain(x)) == x
        assert E.from_domain(E.to_domain(E.zero)) == E.zero

    def test_domain_arithmetic_agrees(self):
        """Test that products and inverses agree with the number field's."""
        x = E.from_coefficients([1, 1, 0, 0, 0, 0])
        y = E.uniformizer ** 5
        K = E.domain
        assert E.from_domain(E.to_domain(x) * E.to_domain(y)) == x * y
        assert E.from_domain(K.one / E.to_domain(x)) == x.inverse()

    def test_uniformizer_power_wraps(self):
        """Test that u^e reduces to p in the number field."""
        assert E.from_domain(E.to_domain(E.uniformizer) ** 6) == 2

    def test_rational_field(self):
        """Test the degenerate extension e = 1."""
        q = make_field(5, 1)
        assert q.element(Fraction(2, 5)).inverse() == Fraction(5, 2)
        assert q.from_domain(q.to_domain(q.element(7))) == 7
