"""Rationals extended by a single positive infinitesimal.

A value ``a/b + s*e`` is stored as three integers.  The infinitesimal is a
formal symbol: it is positive and smaller than every positive rational, so
ordering is lexicographic on ``(a/b, s)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import gcd
from numbers import Rational

__all__ = ["PerturbedRational", "floor_mul", "ceil_mul", "frac_bar"]

_TEXT = re.compile(r"^\s*(?:(?P<q>[+-]?\d+(?:/\d+)?)\s*(?P<s>[+-])\s*e|(?P<r>[+-]?\d+(?:/\d+)?)|(?P<e>[+-]?)e)\s*$")


@total_ordering
class PerturbedRational:
    __slots__ = ("num", "den", "eps")

    num: int
    den: int
    eps: int

    def __init__(self, num: int | Fraction = 0, den: int = 1, eps: int = 0):
        if isinstance(num, Rational) and not isinstance(num, int):
            f = Fraction(num) / den
            num, den = f.numerator, f.denominator
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if eps not in (-1, 0, 1):
            raise ValueError(f"eps must be -1, 0 or 1, got {eps!r}")
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)
        object.__setattr__(self, "eps", eps)

    def __setattr__(self, name, value):
        raise AttributeError("PerturbedRational is immutable")

    @classmethod
    def parse(cls, text: str) -> PerturbedRational:
        """Parse ``"a/b"``, ``"a/b+e"``, ``"a/b-e"``, ``"e"`` or ``"-e"``."""
        if isinstance(text, PerturbedRational):
            return text
        m = _TEXT.match(str(text))
        if m is None:
            raise ValueError(f"malformed perturbed rational: {text!r}")
        if m["q"] is not None:
            return cls(Fraction(m["q"]), 1, 1 if m["s"] == "+" else -1)
        if m["r"] is not None:
            return cls(Fraction(m["r"]))
        return cls(0, 1, -1 if m["e"] == "-" else 1)

    @classmethod
    def coerce(cls, x) -> PerturbedRational:
        if isinstance(x, PerturbedRational):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, Rational):
            return cls(Fraction(x))
        raise TypeError(f"cannot interpret {x!r} as a perturbed rational")

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_integer_valued(self) -> bool:
        return self.den == 1

    def __str__(self) -> str:
        base = str(self.value)
        return base if self.eps == 0 else base + ("+e" if self.eps > 0 else "-e")

    def __repr__(self) -> str:
        return f"PerturbedRational({self})"

    def _key(self) -> tuple[Fraction, int]:
        return (self.value, self.eps)

    def __eq__(self, other) -> bool:
        try:
            o = PerturbedRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den and self.eps == o.eps

    def __lt__(self, other) -> bool:
        try:
            o = PerturbedRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() < o._key()

    def __hash__(self) -> int:
        return hash((self.num, self.den, self.eps))

    def __neg__(self) -> PerturbedRational:
        return PerturbedRational(-self.num, self.den, -self.eps)

    def __add__(self, other) -> PerturbedRational:
        try:
            o = PerturbedRational.coerce(other)
        except TypeError:
            return NotImplemented
        if self.eps and o.eps and self.eps != o.eps:
            # e - e has no definite sign in this model
            raise ValueError("sum of opposite infinitesimals is not representable")
        return PerturbedRational(self.value + o.value, 1, self.eps or o.eps)

    __radd__ = __add__

    def __sub__(self, other) -> PerturbedRational:
        return self + (-PerturbedRational.coerce(other))

    def __rsub__(self, other) -> PerturbedRational:
        return PerturbedRational.coerce(other) + (-self)

    def __mul__(self, k) -> PerturbedRational:
        """Scale by an integer or rational; the infinitesimal keeps its sign up to sign(k)."""
        if not isinstance(k, Rational):
            return NotImplemented
        k = Fraction(k)
        sign = (k > 0) - (k < 0)
        return PerturbedRational(self.value * k, 1, self.eps * sign)

    __rmul__ = __mul__

    def floor(self) -> int:
        q, r = divmod(self.num, self.den)
        return q - 1 if r == 0 and self.eps < 0 else q

    def ceil(self) -> int:
        return -(-self).floor()

    def frac(self) -> PerturbedRational:
        """Fractional part in [0, 1) of the extended order."""
        return self - self.floor()


def floor_mul(theta: PerturbedRational, k: int) -> int:
    """Floor of ``k * theta`` in the extended order (k >= 0)."""
    q, r = divmod(k * theta.num, theta.den)
    if r == 0 and theta.eps < 0 and k > 0:
        return q - 1
    return q


def ceil_mul(theta: PerturbedRational, k: int) -> int:
    return -floor_mul(-theta, k)


def frac_bar(theta: PerturbedRational) -> PerturbedRational:
    """Distance from ``theta`` to the nearest integer, as an element of [0, 1/2]."""
    f = theta.frac()
    return min(f, 1 - f)
