"""Exact Gaussian rationals: a + b*i with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

ScalarLike = Union["GaussianRational", int, Fraction]

_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*\s*I|I)?\s*")


class GaussianRational:
    """Immutable complex number with rational parts.

    Stored as ``(re_num + im_num*i) / den`` with ``den > 0`` and the three
    integers coprime, so equal values have equal representations.  ``re``
    and ``im`` are exposed as :class:`fractions.Fraction`.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass int or Fraction")
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        _set(self, re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GaussianRational:
        """Normalizing constructor from integers; ``d`` must be nonzero."""
        obj = object.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1:
            g = gcd(a, b, d)
            if g != 1:
                a, b, d = a // g, b // g, d // g
        _set(obj, a, b, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @classmethod
    def coerce(cls, value: ScalarLike) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact")
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    @classmethod
    def from_quad(cls, quad) -> GaussianRational:
        """Build from ``[re_num, re_den, im_num, im_den]``."""
        if len(quad) != 4 or not all(isinstance(v, int) and not isinstance(v, bool) for v in quad):
            raise ValueError(f"malformed scalar {quad!r}: want four integers")
        if quad[1] == 0 or quad[3] == 0:
            raise ValueError(f"malformed scalar {quad!r}: zero denominator")
        return cls(Fraction(quad[0], quad[1]), Fraction(quad[2], quad[3]))

    def to_quad(self) -> list[int]:
        re, im = self.re, self.im
        return [re.numerator, re.denominator, im.numerator, im.denominator]

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse sums of terms like ``3``, ``-1/2``, ``2/3*I``, ``I``."""
        pos, total, seen = 0, cls(0), False
        text = text.strip()
        while pos < len(text):
            m = _TERM.match(text, pos)
            sign, num, imag = m.groups()
            if m.end() == pos or (num is None and imag is None):
                raise ValueError(f"not a Gaussian rational: {text!r}")
            if seen and sign is None:
                raise ValueError(f"not a Gaussian rational: {text!r}")
            if imag is not None and imag != "I" and num is None:
                raise ValueError(f"not a Gaussian rational: {text!r}")
            value = Fraction(num) if num is not None else Fraction(1)
            if sign == "-":
                value = -value
            total = total + (cls(0, value) if imag else cls(value))
            seen, pos = True, m.end()
        if not seen:
            raise ValueError(f"not a Gaussian rational: {text!r}")
        return total

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        d, e = self._d, other._d
        if d == e:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, d)
        return GaussianRational._raw(self._a * e + other._a * d, self._b * e + other._b * d, d * e)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        d, e = self._d, other._d
        if d == e:
            return GaussianRational._raw(self._a - other._a, self._b - other._b, d)
        return GaussianRational._raw(self._a * e - other._a * d, self._b * e - other._b * d, d * e)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if not b and not e:
            return GaussianRational._raw(a * c, 0, d * f)
        return GaussianRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def inverse(self) -> GaussianRational:
        n = self._a * self._a + self._b * self._b
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        # 1/((a+bi)/d) = d(a-bi)/(a^2+b^2)
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return not self._b and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if not self._b:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def is_real(self) -> bool:
        return not self._b

    # printing

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self._b:
            return str(self.re)
        if not self._a:
            return _imag_str(self.im)
        sign = "-" if self._b < 0 else "+"
        return f"{self.re} {sign} {_imag_str(abs(self.im))}"


def _set(obj: GaussianRational, a: int, b: int, d: int) -> None:
    object.__setattr__(obj, "_a", a)
    object.__setattr__(obj, "_b", b)
    object.__setattr__(obj, "_d", d)


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "I"
    if v == -1:
        return "-I"
    return f"{v}*I"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
HALF = GaussianRational(Fraction(1, 2))
