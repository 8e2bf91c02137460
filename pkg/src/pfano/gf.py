"""Arithmetic in prime fields GF(q).

Elements are canonical residues ``0 <= value < q``.  Matrix code works on
plain integers through :class:`PrimeField` helpers; :class:`FieldElement`
is the checked, operator-overloaded scalar for user-facing arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, FieldMismatch, NotPrime

MAX_MODULUS = 2**31


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or isinstance(self.modulus, bool):
            raise TypeError("modulus must be an int")
        if not (2 <= self.modulus < MAX_MODULUS) or not is_prime(self.modulus):
            raise NotPrime(self.modulus)

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def order(self) -> int:
        return self.modulus

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def __repr__(self):
        return f"GF({self.modulus})"

    def elements(self):
        return [FieldElement(v, self) for v in range(self.modulus)]

    def nonzero(self) -> range:
        return range(1, self.modulus)

    def reduce(self, value: int) -> int:
        return value % self.modulus

    def inv_int(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return pow(a, -1, self.modulus)


def field_new(q: int) -> PrimeField:
    """Return GF(q); raises :class:`NotPrime` for composite ``q``."""
    return PrimeField(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not isinstance(self.value, int) or not 0 <= self.value < self.field.modulus:
            raise ValueError(f"{self.value!r} is not a canonical residue of {self.field!r}")

    def _other(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value + other.value) % self.field.modulus, self.field)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value - other.value) % self.field.modulus, self.field)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.value * other.value % self.field.modulus, self.field)

    def __neg__(self):
        return FieldElement(-self.value % self.field.modulus, self.field)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * inv(other)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.modulus})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field.inv_int(a.value), a.field)
