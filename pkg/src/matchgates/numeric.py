"""Exact arithmetic over the Gaussian rationals Q(i).

Every weight, Pfaffian and signature entry in this package is a
:class:`GaussianRational`, so identities are checked with ``== 0`` and never
with a tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "LiteralError", "parse", "format", "as_gr", "ZERO", "ONE"]


class LiteralError(ValueError):
    """Malformed weight literal; ``pos`` is the 0-based offending column."""

    def __init__(self, text: str, pos: int, reason: str):
        super().__init__(f"bad literal {text!r} at position {pos}: {reason}")
        self.text = text
        self.pos = pos


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with both parts exact fractions."""

    __slots__ = ("_re", "_im", "_hash")

    def __init__(self, re=0, im=0):
        # Fraction normalises to lowest terms with a positive denominator.
        object.__setattr__(self, "_re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "_im", im if type(im) is Fraction else Fraction(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self._re, self._im, other._re, other._im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def inv(self) -> "GaussianRational":
        norm = self._re * self._re + self._im * self._im
        if not norm:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self._re / norm, -self._im / norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self._re) if not self._im else hash((self._re, self._im))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __repr__(self):
        return f"GaussianRational({format(self)!r})"

    def __str__(self):
        return format(self)

    def __reduce__(self):
        return (GaussianRational, (self._re, self._im))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(x, 0)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


def as_gr(x) -> GaussianRational:
    """Coerce ints, Fractions, literal strings or GaussianRationals."""
    if isinstance(x, str):
        return parse(x)
    value = _coerce(x)
    if value is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return value


ZERO = GaussianRational(0)
ONE = GaussianRational(1)


# -- literal grammar --------------------------------------------------------
#   R       := [-]p | [-]p/q        (q > 0)
#   literal := R | Ri | R+Ri | R-Ri


def _scan_rational(text: str, pos: int, signed: bool) -> tuple[Fraction, int]:
    neg = False
    if signed and pos < len(text) and text[pos] == "-":
        neg = True
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == digits:
        raise LiteralError(text, pos, "expected digits")
    num = int(text[digits:pos])
    den = 1
    if pos < len(text) and text[pos] == "/":
        pos += 1
        digits = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == digits:
            raise LiteralError(text, pos, "expected denominator digits")
        den = int(text[digits:pos])
        if den == 0:
            raise LiteralError(text, digits, "zero denominator")
    value = Fraction(num, den)
    return (-value if neg else value), pos


def parse(text: str) -> GaussianRational:
    """Parse a weight literal such as ``3/2``, ``-1``, ``2i`` or ``1/3+2/5i``."""
    if not text:
        raise LiteralError(text, 0, "empty literal")
    first, pos = _scan_rational(text, 0, signed=True)
    if pos == len(text):
        return GaussianRational(first, 0)
    ch = text[pos]
    if ch == "i":
        if pos + 1 != len(text):
            raise LiteralError(text, pos + 1, "trailing characters")
        return GaussianRational(0, first)
    if ch not in "+-":
        raise LiteralError(text, pos, f"unexpected {ch!r}")
    sign = -1 if ch == "-" else 1
    second, pos = _scan_rational(text, pos + 1, signed=False)
    if pos >= len(text) or text[pos] != "i":
        raise LiteralError(text, pos, "expected 'i' after imaginary part")
    if pos + 1 != len(text):
        raise LiteralError(text, pos + 1, "trailing characters")
    return GaussianRational(first, sign * second)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format(x) -> str:  # noqa: A001 - mirrors parse
    """Canonical literal for ``x``; ``parse(format(x)) == x``."""
    x = as_gr(x)
    if not x.im:
        return _fmt_rational(x.re)
    if not x.re:
        return _fmt_rational(x.im) + "i"
    sign = "-" if x.im < 0 else "+"
    return f"{_fmt_rational(x.re)}{sign}{_fmt_rational(abs(x.im))}i"
