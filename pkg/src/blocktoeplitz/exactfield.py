"""Exact arithmetic over the Gaussian rationals Q(i).

Real and imaginary parts are kept as ``int`` when integral and as
:class:`fractions.Fraction` otherwise, so that equal values are always
structurally equal and integer-heavy computations stay on the fast path.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "ParseError",
    "ZERO",
    "ONE",
    "I",
    "gr",
    "parse_gr",
    "format_gr",
    "format_rational",
]


def _norm(x):
    # canonical rational: int when the denominator is 1
    if type(x) is int:
        return x
    if x.denominator == 1:
        return int(x.numerator)
    return x


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable.  Arithmetic accepts ints,
    Fractions and other GaussianRationals; division by zero raises
    :class:`ZeroDivisionError`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, str):
            if im:
                raise TypeError("string input takes no imaginary argument")
            v = parse_gr(re)
            re, im = v.re, v.im
        if not isinstance(re, Rational) or not isinstance(im, Rational):
            raise TypeError(f"parts must be rational, got {re!r}, {im!r}")
        object.__setattr__(self, "re", _norm(Fraction(re)) if type(re) is not int else re)
        object.__setattr__(self, "im", _norm(Fraction(im)) if type(im) is not int else im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _make(cls, re, im):
        # trusted constructor: parts are already canonical int/Fraction
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- predicates ---------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic ---------------------------------------------------
    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> GaussianRational:
        return GaussianRational._make(self.re, -self.im)

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return GaussianRational._make(_norm(self.re + other.re), _norm(self.im + other.im))

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return GaussianRational._make(_norm(self.re - other.re), _norm(self.im - other.im))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational._make(_norm(a * c), 0)
            return GaussianRational._make(_norm(a * c), _norm(a * d))
        if not d:
            return GaussianRational._make(_norm(a * c), _norm(b * c))
        return GaussianRational._make(_norm(a * c - b * d), _norm(a * d + b * c))

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._make(_norm(Fraction(1, 1) / a), 0)
        den = a * a + b * b
        return GaussianRational._make(_norm(Fraction(a) / den), _norm(Fraction(-b) / den))

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self):
        """Squared modulus ``re**2 + im**2`` (a rational)."""
        return _norm(Fraction(self.re) ** 2 + Fraction(self.im) ** 2)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_gr(self)!r})"

    def __str__(self):
        return format_gr(self)


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, Rational):
        return GaussianRational(x)
    if isinstance(x, str):
        return parse_gr(x)
    return None


def gr(x) -> GaussianRational:
    """Coerce an int, Fraction, string or GaussianRational."""
    v = _coerce(x)
    if v is None:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return v


ZERO = GaussianRational._make(0, 0)
ONE = GaussianRational._make(1, 0)
I = GaussianRational._make(0, 1)


class ParseError(ValueError):
    """Malformed scalar text; ``position`` is the offending index."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"{reason} at position {position} in {text!r}")


_RAT = r"(\d+)(?:/(\d+))?"
_TOKEN = re.compile(r"([+-]?)(?:" + _RAT + r")?(i?)")


def _rat(num: str, den: str | None, text: str, pos: int):
    if den is None:
        return int(num)
    if int(den) == 0:
        raise ParseError(text, pos, "zero denominator")
    return _norm(Fraction(int(num), int(den)))


def parse_gr(text: str) -> GaussianRational:
    """Parse ``R``, ``Ri``, ``R+Ri``, ``R-Ri`` or ``+Ri``/``-Ri``.

    ``R`` is ``[-]digits[/digits]``.  A bare ``i`` (optionally signed) is
    accepted as unit coefficient.  No whitespace is allowed.
    """
    if not isinstance(text, str):
        raise TypeError("parse_gr expects a string")
    if not text:
        raise ParseError(text, 0, "empty scalar")
    pos = 0
    parts = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(text, pos, f"unexpected character {text[pos]!r}")
        sign, num, den, imag = m.groups()
        if num is None and not imag:
            raise ParseError(text, m.end(), "expected digits")
        if parts and not sign:
            raise ParseError(text, pos, "expected '+' or '-'")
        if num is None:
            value = 1
        else:
            value = _rat(num, den, text, m.start(3) if den is not None else pos)
        if sign == "-":
            value = -value
        parts.append((value, bool(imag), pos))
        pos = m.end()
    if len(parts) > 2:
        raise ParseError(text, parts[2][2], "too many terms")
    if len(parts) == 2:
        (r, r_imag, _), (c, c_imag, p2) = parts
        if r_imag or not c_imag:
            raise ParseError(text, p2, "expected real part followed by imaginary part")
        return GaussianRational._make(r, c)
    value, imag, _ = parts[0]
    return GaussianRational._make(0, value) if imag else GaussianRational._make(value, 0)


def format_rational(x) -> str:
    x = _norm(Fraction(x)) if type(x) is not int else x
    if type(x) is int:
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def format_gr(x) -> str:
    """Canonical text form; inverse of :func:`parse_gr`."""
    x = gr(x)
    if not x.im:
        return format_rational(x.re)
    im = format_rational(x.im) + "i"
    if not x.re:
        return im
    return format_rational(x.re) + ("" if im.startswith("-") else "+") + im
