"""Positive and negative partitions from extremal lattice paths.

The positive partition of ``m`` for rotation ``theta`` reads off the
horizontal steps between consecutive lattice points of the highest concave
lattice path from (0, 0) to (m, floor(m*theta)) that stays below the line of
slope ``theta``.  The negative partition uses the lowest convex path above
the line.  Both are computed from a hull of the points (k, floor/ceil(k*theta)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .exactnum import PerturbedRational, ceil_mul, floor_mul

__all__ = [
    "Partition",
    "positive_partition",
    "negative_partition",
    "signed_partition",
    "is_exceptional",
    "check_partition_conditions",
    "one_in_partition_equivalence",
    "multiset_union",
    "bruteforce_positive_partition",
]

Partition = tuple[int, ...]
"""Parts sorted in descending order."""


def _canonical(parts: Iterable[int]) -> Partition:
    return tuple(sorted(parts, reverse=True))


def multiset_union(a: Sequence[int], b: Sequence[int]) -> Partition:
    return _canonical([*a, *b])


def _reduce(theta: PerturbedRational) -> PerturbedRational:
    # partitions only see theta mod 1
    return PerturbedRational(theta.num % theta.den, theta.den, theta.eps)


def _cross(o: tuple[int, int], a: tuple[int, int], b: tuple[int, int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _edge_parts(vertices: list[tuple[int, int]]) -> Partition:
    parts: list[int] = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        dx, dy = x1 - x0, y1 - y0
        g = gcd(dx, dy)
        parts.extend([dx // g] * g)
    return _canonical(parts)


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"multiplicity must be a positive integer, got {m!r}")


@lru_cache(maxsize=1 << 16)
def positive_partition(theta: PerturbedRational, m: int) -> Partition:
    _check_m(m)
    t = _reduce(theta)
    hull: list[tuple[int, int]] = []
    for k in range(m + 1):
        p = (k, floor_mul(t, k))
        # upper hull: pop while the turn is not strictly clockwise
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0:
            hull.pop()
        hull.append(p)
    return _edge_parts(hull)


@lru_cache(maxsize=1 << 16)
def negative_partition(theta: PerturbedRational, m: int) -> Partition:
    _check_m(m)
    t = _reduce(theta)
    hull: list[tuple[int, int]] = []
    for k in range(m + 1):
        p = (k, ceil_mul(t, k))
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return _edge_parts(hull)


def signed_partition(theta: PerturbedRational, m: int, sign: str) -> Partition:
    """Partition of ``m`` for ``sign`` in ``{"+", "-"}``; the empty partition for m = 0."""
    if m == 0:
        return ()
    if sign == "+":
        return positive_partition(theta, m)
    if sign == "-":
        return negative_partition(theta, m)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def is_exceptional(theta: PerturbedRational, m: int) -> bool:
    return len(positive_partition(theta, m)) + len(negative_partition(theta, m)) <= 3


def check_partition_conditions(theta: PerturbedRational, total: int, curve_parts: Sequence[int], sign: str) -> bool:
    """Whether ends with covers ``curve_parts`` can sit inside ``total`` alongside trivial cylinders.

    For each n up to the trivial-cylinder multiplicity ``total - sum(curve_parts)``,
    the partition of ``sum(curve_parts) + n`` must be ``curve_parts`` together
    with the partition of ``n``.
    """
    if any(c < 1 for c in curve_parts):
        raise ValueError("covers must be positive")
    used = sum(curve_parts)
    if used > total:
        raise ValueError(f"covers sum to {used}, exceeding total {total}")
    parts = _canonical(curve_parts)
    for n in range(total - used + 1):
        if used + n == 0:
            continue
        if signed_partition(theta, used + n, sign) != multiset_union(parts, signed_partition(theta, n, sign)):
            return False
    return True


def one_in_partition_equivalence(theta: PerturbedRational, m: int, m_prime: int) -> bool:
    if not 0 < m_prime < m:
        raise ValueError(f"need 0 < m_prime < m, got m={m}, m_prime={m_prime}")
    return (1 in positive_partition(theta, m - m_prime)) == (1 in positive_partition(theta, m))


def bruteforce_positive_partition(theta: PerturbedRational, m: int) -> Partition:
    """Enumerate every concave lattice path under the line and keep the highest one.

    Independent of the hull code: paths are built from primitive steps, so the
    lattice points on a path are exactly its step endpoints.  Used as a test oracle.
    """
    _check_m(m)
    end = floor_mul(theta, m)
    below = [floor_mul(theta, k) for k in range(m + 1)]
    best: list[tuple[int, list[tuple[int, int]]]] = []

    def lower(x: int) -> int:
        # a concave path from (0,0) to (m,end) lies above the chord
        return -((-end * x) // m)

    def extend(x: int, y: int, slope: tuple[int, int] | None, steps: list[tuple[int, int]]) -> None:
        if x == m:
            if y == end:
                best.append((_area2(steps), list(steps)))
            return
        for dx in range(1, m - x + 1):
            for y1 in range(lower(x + dx), below[x + dx] + 1):
                dy = y1 - y
                if gcd(dx, abs(dy)) != 1:
                    continue
                if slope is not None and dy * slope[0] > slope[1] * dx:
                    continue
                steps.append((dx, dy))
                extend(x + dx, y1, (dx, dy), steps)
                steps.pop()

    extend(0, 0, None, [])
    top_area = max(a for a, _ in best)
    winners = [s for a, s in best if a == top_area]
    heights = [_heights(s) for s in winners]
    for _, s in best:
        h = _heights(s)
        if any(h[i] > heights[0][i] for i in range(m + 1)):
            raise AssertionError("no pointwise-maximal path")
    return _canonical(dx for dx, _ in winners[0])


def _area2(steps: list[tuple[int, int]]) -> int:
    y, area = 0, 0
    for dx, dy in steps:
        area += dx * (2 * y + dy)
        y += dy
    return area


def _heights(steps: list[tuple[int, int]]) -> list[Fraction]:
    out, y = [Fraction(0)], 0
    for dx, dy in steps:
        for i in range(1, dx + 1):
            out.append(y + Fraction(dy * i, dx))
        y += dy
    return out
