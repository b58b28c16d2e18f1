"""Exact Gaussian-rational scalars."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Coefficient", "as_coefficient", "ZERO", "ONE", "I"]


class Coefficient:
    """A complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable. Arithmetic never rounds.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass Fraction or int")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Coefficient is immutable")

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "Coefficient":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def from_complex(cls, value: complex) -> "Coefficient":
        """Exact rational image of a binary floating point complex."""
        value = complex(value)
        return cls._make(Fraction(value.real), Fraction(value.imag))

    def __repr__(self):
        return f"Coefficient({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}*i"

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __neg__(self):
        return Coefficient._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Coefficient._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Coefficient._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return Coefficient._make(a * c, b)
        return Coefficient._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by zero coefficient")
        if other.im == 0:
            return Coefficient._make(self.re / other.re, self.im / other.re)
        n = other.norm()
        return self * Coefficient._make(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE / (self ** -exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "Coefficient":
        return Coefficient._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``|c|**2``, always rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0


def _coerce(value):
    if isinstance(value, Coefficient):
        return value
    if isinstance(value, (int, Rational)):
        return Coefficient._make(Fraction(value), Fraction(0))
    return NotImplemented


def as_coefficient(value) -> Coefficient:
    """Convert an int, Fraction or Coefficient to a Coefficient."""
    c = _coerce(value)
    if c is NotImplemented:
        raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")
    return c


ZERO = Coefficient(0)
ONE = Coefficient(1)
I = Coefficient(0, 1)
