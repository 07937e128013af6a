"""Scalars: exact Gaussian rationals and double-precision complex numbers."""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational


class Backend(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class Basis(enum.Enum):
    """Normalization of bosonic Fock states.

    ANALYTIC uses ``a^dag|n> = |n+1>`` and ``a|n> = n|n-1>`` so every ladder
    entry is rational. ORTHONORMAL is the usual ``sqrt(n+1)`` convention.
    """

    ANALYTIC = "analytic"
    ORTHONORMAL = "orthonormal"


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts.

    Parts are stored as :class:`fractions.Fraction`, hence always in lowest
    terms with a positive denominator.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = _to_fraction(re)
        self._im = _to_fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"``, ``"p/q*i"`` or ``"a+b*i"`` style literals."""
        from dualhahn.presentations.parser import parse_scalar

        return parse_scalar(text)

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return GaussianRational(value.real, value.imag)
        return GaussianRational(value)

    def is_zero(self) -> bool:
        return self._re == 0 and self._im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self._re, self._im, other._re, other._im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        norm = other._re * other._re + other._im * other._im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(other._re / norm, -other._im / norm)

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __pos__(self):
        return self

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __eq__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self):
        return f"GaussianRational({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self):
        return format_scalar(self)



def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise TypeError(f"refusing inexact float {value!r} in exact arithmetic")
        return Fraction(int(value))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def _maybe(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational)):
        return GaussianRational(value)
    return NotImplemented


def format_scalar(z: GaussianRational) -> str:
    """Canonical text, e.g. ``1/2``, ``-i``, ``3/4*i``, ``1/2 + 1/3*i``."""
    re, im = z.re, z.im
    if im == 0:
        return str(re)
    if abs(im) == 1:
        imag = "i"
    else:
        imag = f"{abs(im)}*i"
    if re == 0:
        return imag if im > 0 else "-" + imag
    return f"{re} {'+' if im > 0 else '-'} {imag}"


def as_scalar(value, backend: Backend):
    """Coerce ``value`` to the scalar type of ``backend``."""
    if backend is Backend.EXACT:
        return GaussianRational.coerce(value)
    return complex(value)


I = GaussianRational(0, 1)
