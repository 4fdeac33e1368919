"""Exact arithmetic in the model coefficient field E = Q(p^(1/e)).

An element is a list of e rationals ``(a_0, ..., a_{e-1})`` standing for
``sum a_i u^i`` where the uniformizer u satisfies ``u^e = p``. Because
``x^e - p`` is Eisenstein, E is a field, and the p-adic valuation extends
uniquely with ``v(p) = 1`` and ``v(u) = 1/e``.

Inverses are taken with sympy polynomials modulo ``x^e - p``; matrix work
goes through sympy's number field ``QQ<p^(1/e)>`` (see ``FieldSpec.domain``).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math
from math import inf
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from sympy import Integer, Poly, QQ, Rational as SympyRational, Symbol, isprime, multiplicity
from sympy.polys.domains import Domain

from .error_handler import FieldDivisionError, FieldError, FieldMismatchError

Rational = Union[int, Fraction]
Valuation = Union[Fraction, float]  # float only for +inf

UNIFORMIZER = Symbol("u")


def padic_valuation(q: Rational, p: int) -> int:
    """v_p of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero rational")
    return multiplicity(p, abs(q.numerator)) - multiplicity(p, q.denominator)


def _to_qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


def _from_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


@lru_cache(maxsize=None)
def _modulus(prime: int, ramification: int) -> Poly:
    """x^e - p over QQ."""
    return Poly(UNIFORMIZER ** ramification - prime, UNIFORMIZER, domain=QQ)


@lru_cache(maxsize=None)
def _number_field(prime: int, ramification: int) -> Domain:
    """QQ<p^(1/e)>, generated by the uniformizer itself; plain QQ for e = 1."""
    if ramification == 1:
        return QQ
    return QQ.algebraic_field(Integer(prime) ** SympyRational(1, ramification))


@dataclass(frozen=True)
class FieldSpec:
    """The model field Q(p^(1/e)).

    Attributes:
        prime: The residue characteristic p
        ramification: The degree e of the extension
    """

    prime: int
    ramification: int

    def __post_init__(self):
        if not isinstance(self.prime, int) or not isprime(self.prime):
            raise FieldError(f"p={self.prime} is not prime")
        if not isinstance(self.ramification, int) or self.ramification < 1:
            raise FieldError(f"ramification e={self.ramification} must be >= 1")

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def uniformizer(self) -> "FieldElement":
        """The element u with u^e = p."""
        return self.uniformizer_power(1)

    @property
    def domain(self) -> Domain:
        """The sympy domain used for exact matrix computations."""
        return _number_field(self.prime, self.ramification)

    def to_domain(self, x: "FieldElement"):
        """The sympy number field element with the same coefficients."""
        if self.ramification == 1:
            return _to_qq(x.coefficients[0])
        return self.domain.new([_to_qq(c) for c in reversed(x.coefficients)])

    def from_domain(self, a) -> "FieldElement":
        """Inverse of ``to_domain``."""
        if self.ramification == 1:
            return FieldElement(self, [_from_qq(a)])
        coefficients = [_from_qq(c) for c in reversed(a.to_list())]
        coefficients += [Fraction(0)] * (self.ramification - len(coefficients))
        return FieldElement(self, coefficients)

    def element(self, value: Union["FieldElement", Rational, str]) -> "FieldElement":
        """Coerce an integer, rational or rational string into E."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        coefficients = [Fraction(value)] + [Fraction(0)] * (self.ramification - 1)
        return FieldElement(self, coefficients)

    def parse(self, value) -> "FieldElement":
        """Decode the text encoding: a list of e rationals, or one rational."""
        if isinstance(value, (list, tuple)):
            return self.from_coefficients([Fraction(c) for c in value])
        if isinstance(value, float):
            raise FieldError("floating point values are not exact")
        return self.element(value)

    def from_coefficients(self, coefficients: Sequence[Union[Rational, str]]) -> "FieldElement":
        """Build ``sum a_i u^i`` from exactly e coefficients."""
        if len(coefficients) != self.ramification:
            raise FieldError(
                f"expected {self.ramification} coefficients, got {len(coefficients)}"
            )
        return FieldElement(self, [Fraction(c) for c in coefficients])

    def uniformizer_power(self, k: int) -> "FieldElement":
        """u^k for any integer k (negative powers included)."""
        q, r = divmod(k, self.ramification)
        coefficients = [Fraction(0)] * self.ramification
        coefficients[r] = Fraction(self.prime) ** q
        return FieldElement(self, coefficients)

    def random_unit(self, rng: np.random.Generator, size: int = 4) -> "FieldElement":
        """A random element of valuation exactly 0.

        Args:
            rng: numpy random generator
            size: bound on the integer coefficients drawn

        Returns:
            ``a_0 + a_1 u + ...`` with ``p`` not dividing ``a_0``
        """
        while True:
            a0 = int(rng.integers(-size, size + 1))
            if a0 % self.prime != 0:
                break
        coefficients = [Fraction(a0)]
        for _ in range(1, self.ramification):
            coefficients.append(Fraction(int(rng.integers(-size, size + 1))))
        return FieldElement(self, coefficients)

    def element_with_valuation(self, valuation: Rational, rng: np.random.Generator) -> "FieldElement":
        """A random element whose valuation is exactly ``valuation``.

        Raises:
            FieldError: if the valuation is not in (1/e)Z
        """
        scaled = Fraction(valuation) * self.ramification
        if scaled.denominator != 1:
            raise FieldError(f"valuation {valuation} not in (1/{self.ramification})Z")
        return self.uniformizer_power(int(scaled)) * self.random_unit(rng)

    def random_element(self, rng: np.random.Generator, size: int = 3,
                       zero_probability: float = 0.0) -> "FieldElement":
        """A random element with small rational coefficients."""
        if zero_probability and rng.random() < zero_probability:
            return self.zero
        coefficients = []
        for _ in range(self.ramification):
            num = int(rng.integers(-size, size + 1))
            den = int(rng.integers(1, size + 1))
            coefficients.append(Fraction(num, den))
        return FieldElement(self, coefficients)

    def grid_valuations(self, low: Rational, high: Rational) -> List[Fraction]:
        """All valuations in (1/e)Z between ``low`` and ``high`` inclusive."""
        e = self.ramification
        start = math.ceil(Fraction(low) * e)
        stop = math.floor(Fraction(high) * e)
        return [Fraction(k, e) for k in range(start, stop + 1)]

    def to_json(self) -> dict:
        return {"prime": self.prime, "ramification": self.ramification}


def make_field(p: int, e: int) -> FieldSpec:
    """Create a field specification for Q(p^(1/e)).

    Args:
        p: A prime
        e: Ramification index, at least 1

    Returns:
        Validated FieldSpec

    Raises:
        FieldError: for non-prime p or e <= 0
    """
    return FieldSpec(p, e)


class FieldElement:
    """An exact element of E = Q(p^(1/e)).

    Instances are immutable and hashable; arithmetic with plain ints and
    Fractions coerces them into the same field.
    """

    __slots__ = ("field", "coefficients")

    def __init__(self, field: FieldSpec, coefficients: Iterable[Fraction]):
        coefficients = tuple(Fraction(c) for c in coefficients)
        if len(coefficients) != field.ramification:
            raise FieldError(
                f"expected {field.ramification} coefficients, got {len(coefficients)}"
            )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field} and {other.field}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, (a + b for a, b in zip(self.coefficients, other.coefficients)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, (-a for a in self.coefficients))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, (a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        e = self.field.ramification
        p = self.field.prime
        product = [Fraction(0)] * (2 * e - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                if b:
                    product[i + j] += a * b
        # u^(e+k) = p u^k
        for k in range(2 * e - 2, e - 1, -1):
            if product[k]:
                product[k - e] += p * product[k]
        return FieldElement(self.field, product[:e])

    __rmul__ = __mul__

    def as_poly(self) -> Poly:
        """The representative ``sum a_i u^i`` as a sympy polynomial over QQ."""
        return Poly.from_list([_to_qq(c) for c in reversed(self.coefficients)],
                              UNIFORMIZER, domain=QQ)

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse modulo ``x^e - p``.

        Raises:
            FieldDivisionError: if self is zero
        """
        if self.is_zero():
            raise FieldDivisionError("inverse of zero")
        # x^e - p is irreducible, so every nonzero residue is invertible
        inv = self.as_poly().invert(_modulus(self.field.prime, self.field.ramification))
        coefficients = [_from_qq(c) for c in reversed(inv.rep.to_list())]
        coefficients += [Fraction(0)] * (self.field.ramification - len(coefficients))
        return FieldElement(self.field, coefficients)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == self.field.element(other).coefficients
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coefficients[0])
        return hash((self.field, self.coefficients))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def is_rational(self) -> bool:
        return not any(self.coefficients[1:])

    def sort_key(self) -> Tuple[Tuple[int, int], ...]:
        """Total order on encodings, used to break valuation ties."""
        return tuple((c.numerator, c.denominator) for c in self.coefficients)

    # -- valuation --------------------------------------------------------

    def valuation(self) -> Valuation:
        """v(x) = min over nonzero a_i of v_p(a_i) + i/e; +inf for zero.

        The minimizing index is unique since the candidates have pairwise
        distinct fractional parts i/e.
        """
        e = self.field.ramification
        best = None
        best_index = -1
        ties = 0
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            candidate = padic_valuation(a, self.field.prime) + Fraction(i, e)
            if best is None or candidate < best:
                best, best_index, ties = candidate, i, 0
            elif candidate == best:
                ties += 1
        if best is None:
            return inf
        assert ties == 0, f"non-unique minimizing index {best_index} in valuation"
        return best

    # -- encoding ---------------------------------------------------------

    def to_strings(self) -> List[str]:
        """Text encoding: e rationals as ``"num/den"`` strings."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*u")
            else:
                terms.append(f"{c}*u^{i}")
        return " + ".join(terms) if terms else "0"
