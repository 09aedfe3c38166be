"""Exact arithmetic in a real quadratic field Q(sqrt(D)).

Every scalar is s + t*sqrt(D) with s, t rational and D a positive square-free
integer. D = 1 means the field is plain Q and the radical part is folded away.
Comparisons are exact: the sign of s + t*sqrt(D) is decided by rational sign
logic (squaring), never by floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DiscriminantMismatch

RatLike = Union[int, Fraction]


def is_square_free(d: int) -> bool:
    if d <= 0:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _joint_disc(a: "QScalar", b: "QScalar") -> int:
    # A scalar with zero radical part is a member of every field.
    if a.disc == b.disc:
        return a.disc
    if a.rad == 0:
        return b.disc
    if b.rad == 0:
        return a.disc
    raise DiscriminantMismatch(f"cannot combine sqrt({a.disc}) with sqrt({b.disc})")


@dataclass(frozen=True)
class QScalar:
    """Immutable exact value rat + rad*sqrt(disc)."""

    rat: Fraction
    rad: Fraction
    disc: int

    def __init__(self, rat: RatLike = 0, rad: RatLike = 0, disc: int = 1):
        rat = Fraction(rat)
        rad = Fraction(rad)
        if disc == 1:
            rat, rad = rat + rad, Fraction(0)
        elif not is_square_free(disc):
            raise ValueError(f"discriminant must be square-free and positive: {disc}")
        if rad == 0:
            disc = 1
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "rad", rad)
        object.__setattr__(self, "disc", disc)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QScalar | RatLike") -> "QScalar":
        other = _coerce(other)
        d = _joint_disc(self, other)
        return QScalar(self.rat + other.rat, self.rad + other.rad, d)

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return QScalar(-self.rat, -self.rad, self.disc)

    def __sub__(self, other: "QScalar | RatLike") -> "QScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other: "QScalar | RatLike") -> "QScalar":
        return _coerce(other) + (-self)

    def __mul__(self, other: "QScalar | RatLike") -> "QScalar":
        other = _coerce(other)
        d = _joint_disc(self, other)
        return QScalar(
            self.rat * other.rat + self.rad * other.rad * d,
            self.rat * other.rad + self.rad * other.rat,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        # (s + t*sqrt(D))^-1 = (s - t*sqrt(D)) / (s^2 - t^2 D); the norm is
        # nonzero because sqrt(D) is irrational for square-free D > 1.
        norm = self.rat * self.rat - self.rad * self.rad * self.disc
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return QScalar(self.rat / norm, -self.rad / norm, self.disc)

    def __truediv__(self, other: "QScalar | RatLike") -> "QScalar":
        return self * _coerce(other).inverse()

    # -- sign and order -----------------------------------------------------

    def sign(self) -> int:
        s, t = self.rat, self.rad
        if t == 0:
            return (s > 0) - (s < 0)
        if s == 0:
            return 1 if t > 0 else -1
        if s > 0 and t > 0:
            return 1
        if s < 0 and t < 0:
            return -1
        # Opposite signs: compare s^2 against t^2 * D exactly.
        lhs, rhs = s * s, t * t * self.disc
        if lhs == rhs:
            return 0  # unreachable for square-free disc > 1, kept for safety
        bigger_is_rat = lhs > rhs
        if s > 0:
            return 1 if bigger_is_rat else -1
        return -1 if bigger_is_rat else 1

    def is_zero(self) -> bool:
        return self.rat == 0 and self.rad == 0

    def __lt__(self, other: "QScalar | RatLike") -> bool:
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other: "QScalar | RatLike") -> bool:
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other: "QScalar | RatLike") -> bool:
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other: "QScalar | RatLike") -> bool:
        return (self - _coerce(other)).sign() >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QScalar(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.rat == other.rat and self.rad == other.rad and self.disc == other.disc

    def __hash__(self) -> int:
        return hash((self.rat, self.rad, self.disc))

    # -- conversion / display ----------------------------------------------

    def __float__(self) -> float:
        return float(self.rat) + float(self.rad) * math.sqrt(self.disc)

    def __str__(self) -> str:
        if self.rad == 0:
            return _frac_str(self.rat)
        if self.rat == 0:
            return f"{_frac_str(self.rad)}√{self.disc}"
        sep = "+" if self.rad > 0 else "-"
        return f"{_frac_str(self.rat)}{sep}{_frac_str(abs(self.rad))}√{self.disc}"

    def __repr__(self) -> str:
        return f"QScalar({self.rat!r}, {self.rad!r}, {self.disc})"


def _coerce(x: "QScalar | RatLike") -> QScalar:
    if isinstance(x, QScalar):
        return x
    return QScalar(x)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def scalar_cmp(a: QScalar, b: QScalar) -> int:
    """Exact three-way comparison of two scalars sharing a field: -1, 0 or +1."""
    _joint_disc(a, b)
    return (a - b).sign()
