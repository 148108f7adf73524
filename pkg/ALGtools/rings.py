"""
Exact arithmetic in the supported base rings: Z, Q, Z/n and prime fields F_p.

Ring elements are kept in canonical form (arbitrary precision integers for Z,
reduced fractions with positive denominator for Q, least non-negative residues
for Z/n and F_p), so equality of elements is equality of representations.

Hot loops elsewhere in the package work on the raw canonical values directly
and call `RingSpec.reduce` after each operation; `RingElem` is the public,
type-checked wrapper.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from sympy import isprime

from ALGtools import exceptions


Raw = Union[int, Fraction]

INTEGERS = 'Z'
RATIONALS = 'Q'
MOD_RING = 'Z/'
PRIME_FIELD = 'F'

_RING_PATTERN = re.compile(r'^(?:(Z)|(Q)|Z/([0-9]+)|F([0-9]+))$')
_NUMBER_PATTERN = re.compile(r'^(-?[0-9]+)(?:/([0-9]+))?$')


@dataclass(frozen=True)
class RingSpec:
    """
    A base ring. Equality is structural, so Z/2 and F2 are different specs
    even though they have the same arithmetic.

    Use the factory functions `Integers`, `Rationals`, `ModRing`, `PrimeField`
    or `parse_ring` rather than the constructor.
    """
    variant: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.variant in (MOD_RING, PRIME_FIELD):
            if self.modulus is None or self.modulus < 2:
                raise exceptions.RingParseError(f"modulus must be at least 2, got {self.modulus}")
            if self.variant == PRIME_FIELD and not isprime(self.modulus):
                raise exceptions.RingParseError(f"F{self.modulus}: characteristic must be prime (no extension fields)")
        elif self.variant in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise exceptions.RingParseError(f"{self.variant} takes no modulus")
        else:
            raise exceptions.RingParseError(f"unknown ring variant {self.variant!r}")

    def __str__(self) -> str:
        if self.variant == MOD_RING:
            return f"Z/{self.modulus}"
        if self.variant == PRIME_FIELD:
            return f"F{self.modulus}"
        return self.variant

    # Structure

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    @property
    def order(self) -> int:
        """
        Number of elements of a finite ring.

        Raises
        ------
        InfiniteRing
            For Z and Q
        """
        self.require_finite()
        return self.modulus

    @property
    def is_field(self) -> bool:
        if self.variant in (RATIONALS, PRIME_FIELD):
            return True
        return self.variant == MOD_RING and isprime(self.modulus)

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    @property
    def two_is_unit(self) -> bool:
        return self.is_unit_raw(self.reduce(2))

    def require_finite(self) -> None:
        if not self.is_finite:
            raise exceptions.InfiniteRing(f"{self} is infinite; exhaustive enumeration is impossible")

    # Raw canonical values

    def reduce(self, value: Raw) -> Raw:
        """
        Bring a raw value to the canonical representative of this ring.
        Re-reducing a canonical value is the identity.
        """
        if self.modulus is not None:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    return (value.numerator * self.inv_raw(value.denominator % self.modulus)) % self.modulus
                value = value.numerator
            return value % self.modulus
        if self.variant == RATIONALS:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise exceptions.NotAUnit(f"{value} is not an integer")
            return value.numerator
        return int(value)

    def is_unit_raw(self, value: Raw) -> bool:
        if self.variant == INTEGERS:
            return value in (1, -1)
        if self.variant == RATIONALS:
            return value != 0
        return math.gcd(value, self.modulus) == 1

    def inv_raw(self, value: Raw) -> Raw:
        """
        Inverse of a canonical raw value.

        Raises
        ------
        NotAUnit
            When the value has no inverse in this ring
        """
        if not self.is_unit_raw(value):
            raise exceptions.NotAUnit(f"{value} is not a unit in {self}")
        if self.variant == INTEGERS:
            return value
        if self.variant == RATIONALS:
            return 1 / value
        return pow(value, -1, self.modulus)

    def raw_elements(self) -> range:
        self.require_finite()
        return range(self.modulus)

    def random_raw(self, rng: random.Random) -> Raw:
        """
        A random element: uniform on finite rings, small numerators and
        denominators on Z and Q.
        """
        if self.modulus is not None:
            return rng.randrange(self.modulus)
        if self.variant == INTEGERS:
            return rng.randint(-10, 10)
        return Fraction(rng.randint(-10, 10), rng.randint(1, 6))

    def format_raw(self, value: Raw) -> str:
        return str(value)

    # RingElem construction

    def elem(self, value: Raw) -> RingElem:
        return RingElem(self, value)

    @property
    def zero(self) -> RingElem:
        return RingElem(self, 0)

    @property
    def one(self) -> RingElem:
        return RingElem(self, 1)

    def parse_elem(self, text: str) -> RingElem:
        """
        Parse a decimal string ("5", "-1", "2/3") into an element of this ring.
        Fractions are accepted in every ring where the denominator is a unit.

        Raises
        ------
        RingParseError
            When the text is not a decimal integer or fraction
        NotAUnit
            When the denominator is not invertible in this ring
        """
        match = _NUMBER_PATTERN.match(text.strip())
        if not match:
            raise exceptions.RingParseError(f"can't parse {text!r} as a number")
        numerator, denominator = int(match.group(1)), int(match.group(2) or 1)
        if denominator == 0:
            raise exceptions.NotAUnit(f"{text}: division by zero")
        return RingElem(self, self.reduce(Fraction(numerator, denominator)))


def Integers() -> RingSpec:
    return RingSpec(INTEGERS)


def Rationals() -> RingSpec:
    return RingSpec(RATIONALS)


def ModRing(modulus: int) -> RingSpec:
    return RingSpec(MOD_RING, modulus)


def PrimeField(p: int) -> RingSpec:
    return RingSpec(PRIME_FIELD, p)


def parse_ring(text: str) -> RingSpec:
    """
    Parse a ring-spec string. Parsing is case-sensitive:
    "Z", "Q", "Z/<n>" with n >= 2, "F<p>" with p prime.

    Raises
    ------
    RingParseError
        For anything else, including composite p in "F<p>"
    """
    match = _RING_PATTERN.match(text)
    if not match:
        raise exceptions.RingParseError(f"can't parse ring spec {text!r}")
    integers, rationals, modulus, prime = match.groups()
    if integers:
        return Integers()
    if rationals:
        return Rationals()
    if modulus is not None:
        return ModRing(int(modulus))
    return PrimeField(int(prime))


@dataclass(frozen=True)
class RingElem:
    """
    An element of a base ring, in canonical form.

    Mixing elements of different rings raises `RingMismatch`.
    """
    ring: RingSpec
    value: Raw

    def __post_init__(self):
        object.__setattr__(self, 'value', self.ring.reduce(self.value))

    def _check(self, other: RingElem) -> None:
        if not isinstance(other, RingElem):
            raise TypeError(f"expected a RingElem, got {type(other).__name__}")
        if other.ring != self.ring:
            raise exceptions.RingMismatch(f"can't combine elements of {self.ring} and {other.ring}")

    def __add__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.ring, self.value + other.value)

    def __sub__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.ring, self.value - other.value)

    def __mul__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.ring, self.value * other.value)

    def __neg__(self) -> RingElem:
        return RingElem(self.ring, -self.value)

    def inverse(self) -> RingElem:
        return RingElem(self.ring, self.ring.inv_raw(self.value))

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit_raw(self.value)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.ring.format_raw(self.value)

    def __repr__(self) -> str:
        return f"RingElem({self}, {self.ring})"


_OPERATIONS: dict[str, Callable[[RingElem, RingElem], RingElem]] = {
    'add': RingElem.__add__,
    'sub': RingElem.__sub__,
    'mul': RingElem.__mul__,
}


def elem_arith(op: str, x: RingElem, y: Optional[RingElem] = None) -> RingElem:
    """
    Apply one of the ring operations add, sub, mul (binary) or neg (unary).

    Raises
    ------
    RingMismatch
        If x and y belong to different rings
    ValueError
        For an unknown operation, or a missing/superfluous second operand
    """
    if op == 'neg':
        if y is not None:
            raise ValueError("neg takes a single operand")
        return -x
    try:
        operation = _OPERATIONS[op]
    except KeyError:
        raise ValueError(f"unknown ring operation {op!r}") from None
    if y is None:
        raise ValueError(f"{op} needs two operands")
    return operation(x, y)


def elem_inv(x: RingElem) -> RingElem:
    """
    Multiplicative inverse.

    Raises
    ------
    NotAUnit
        For zero, zero divisors and integers other than +-1
    """
    return x.inverse()


def is_unit(x: RingElem) -> bool:
    try:
        elem_inv(x)
    except exceptions.NotAUnit:
        return False
    return True


def ring_enumerate(spec: RingSpec) -> tuple[RingElem, ...]:
    """
    All elements of a finite ring in ascending order of canonical representative.

    Raises
    ------
    InfiniteRing
        For Z and Q
    """
    return tuple(RingElem(spec, v) for v in spec.raw_elements())


def iter_units(spec: RingSpec) -> Iterator[RingElem]:
    return (x for x in ring_enumerate(spec) if x.is_unit)
