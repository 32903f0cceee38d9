"""Certified sign of sums of rational multiples of rational powers of an integer.

A sum ``sum c_i * q**e_i`` is bracketed with integer n-th roots at a binary
precision that doubles until the bracket excludes zero.  Exact zero is
decided first by grouping terms whose powers differ by a rational factor;
radicals of a positive integer in distinct groups are linearly independent
over the rationals, so the sum vanishes iff every group sum does.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

__all__ = ["Term", "power_bounds", "rational_power", "sign_of_sum", "greater"]

Term = tuple[Fraction, Fraction]
"""(coefficient, exponent) standing for coefficient * q**exponent."""


def power_bounds(q: int, e: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds of q**e with error at most 2**-bits (e >= 0)."""
    e = Fraction(e)
    if e < 0:
        raise ValueError("negative exponents are not needed here")
    n, d = e.numerator, e.denominator
    scaled = gmpy2.mpz(q) ** n << (d * bits)
    r, exact = gmpy2.iroot(scaled, d)
    lo = Fraction(int(r), 1 << bits)
    return lo, (lo if exact else lo + Fraction(1, 1 << bits))


def rational_power(q: int, e: Fraction) -> Fraction | None:
    """q**e if it is rational, else None."""
    e = Fraction(e)
    r, exact = gmpy2.iroot(gmpy2.mpz(q), e.denominator)
    if not exact:
        return None
    return Fraction(int(r)) ** e.numerator


def _exactly_zero(terms: Sequence[Term], q: int) -> bool:
    if q == 1:
        return sum(c for c, _ in terms) == 0
    groups: list[tuple[Fraction, Fraction]] = []  # (representative exponent, accumulated coefficient)
    for c, e in terms:
        for i, (rep, acc) in enumerate(groups):
            ratio = rational_power(q, e - rep) if e >= rep else None
            if ratio is None and e < rep:
                inv = rational_power(q, rep - e)
                ratio = None if inv is None else 1 / inv
            if ratio is not None:
                groups[i] = (rep, acc + c * ratio)
                break
        else:
            groups.append((e, Fraction(c)))
    return all(acc == 0 for _, acc in groups)


def sign_of_sum(terms: Iterable[Term], q: int, bits: int = 64) -> int:
    """Exact sign of sum(c * q**e)."""
    terms = [(Fraction(c), Fraction(e)) for c, e in terms if c != 0]
    if q < 1:
        raise ValueError("q must be a positive integer")
    if not terms or _exactly_zero(terms, q):
        return 0
    while True:
        lo = hi = Fraction(0)
        for c, e in terms:
            a, b = power_bounds(q, e, bits)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def greater(lhs: Iterable[Term], rhs: Iterable[Term], q: int, bits: int = 64) -> bool:
    """Certified ``sum(lhs) > sum(rhs)`` at q."""
    return sign_of_sum([*lhs, *((-c, e) for c, e in rhs)], q, bits) > 0
