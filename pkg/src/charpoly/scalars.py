"""Exact scalar fields: rationals (``Fraction``) and Gaussian rationals (``QI``).

Complex floats are plain Python/numpy ``complex``.  Nothing here compares
floats; tolerance-aware comparison lives in :func:`close`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Exact = Union[int, Fraction, "QI"]


class QI:
    """Gaussian rational ``re + im*i`` with ``Fraction`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QI):
            return other
        if isinstance(other, Rational):
            return QI(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("QI division by zero")
        return QI((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QI(1) / (self ** (-k))
        out, base = QI(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


def simplify(x):
    """Drop a zero imaginary part so real results compare as Fractions."""
    if isinstance(x, QI) and x.im == 0:
        return x.re
    return x


def is_exact(x) -> bool:
    return isinstance(x, (Rational, QI))


def to_complex(x) -> complex:
    return complex(x)


def close(a, b, rtol: float, atol: float = 0.0) -> bool:
    """Tolerance comparison; exact scalars are converted to complex first."""
    a, b = complex(a), complex(b)
    return abs(a - b) <= atol + rtol * max(abs(a), abs(b))


_RAT = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")
_DEC = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def _parse_real(tok: str):
    m = _RAT.match(tok)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2) or 1))
    if _DEC.match(tok.strip()):
        return Fraction(tok.strip())
    raise ValueError(f"bad real literal: {tok!r}")


def parse_scalar(text: str):
    """Parse ``"p/q"``, decimals, ``"a+bi"``, ``"bi"`` or ``"i"`` exactly.

    Decimal literals are read exactly (``"0.1"`` -> ``1/10``).
    """
    s = text.strip().replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty scalar literal")
    if not s.endswith("i"):
        return _parse_real(s)
    body = s[:-1]
    # split at the last sign that is not an exponent sign or leading
    split = None
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE/":
            split = pos
            break
    if split is None:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return QI(_parse_real(re_part), _parse_real(im_part))


def format_scalar(x) -> str:
    if isinstance(x, QI):
        if x.im == 0:
            return str(x.re)
        sign = "+" if x.im >= 0 else "-"
        return f"{x.re}{sign}{abs(x.im)}i"
    if isinstance(x, complex):
        return f"{x.real!r}{'+' if x.imag >= 0 else '-'}{abs(x.imag)!r}i"
    return str(x)
