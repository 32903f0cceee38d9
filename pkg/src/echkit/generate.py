"""Seeded generators of catalogs, valid records, chains and puncture data.

Records are built end-first: ends obey the partition conditions by
construction, and the relative class data is solved so that the declared
ECH index is 2.  When a record has no trivial cylinders the Chern number is
taken from the Fredholm index of an embedded curve with ind = I = 2, which
makes the J0 identity a genuine check rather than an input.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Mapping

from .auditor import ChainRecord, ConstantsLedger, choose_M, rotation_B0
from .exactnum import PerturbedRational
from .index import (
    PunctureData,
    RelClassData,
    _cz_total,
    check_gap,
    cz,
    cz_top,
    j0_topological,
    rotation_spectrum,
    GapViolation,
)
from .orbits import Catalog, OrbitKind, OrbitSet, SimpleOrbit, action
from .partitions import check_partition_conditions, negative_partition, positive_partition
from .score import End, UCurveRecord

__all__ = [
    "random_rotation",
    "random_catalog",
    "random_generator_set",
    "random_record",
    "random_chain",
    "random_punctures",
    "fredholm_chern",
]


def random_rotation(rng: random.Random, max_den: int, eps_choices=(-1, 1)) -> PerturbedRational:
    b = rng.randint(1, max_den)
    a = rng.choice([a for a in range(b) if gcd(a, b) == 1])
    return PerturbedRational(a, b, rng.choice(eps_choices))


def random_catalog(rng: random.Random, n_elliptic: int = 3, n_hyperbolic: int = 2, max_den: int = 6, max_action: int = 6) -> Catalog:
    orbits = []
    for i in range(n_elliptic):
        orbits.append(SimpleOrbit(f"e{i + 1}", Fraction(rng.randint(1, 4 * max_action), rng.randint(1, 4)), random_rotation(rng, max_den)))
    for i in range(n_hyperbolic):
        pos = rng.random() < 0.5
        w = rng.randint(-1, 1)
        rot = PerturbedRational(w) if pos else PerturbedRational(2 * w + 1, 2)
        kind = OrbitKind.POSITIVE_HYPERBOLIC if pos else OrbitKind.NEGATIVE_HYPERBOLIC
        orbits.append(SimpleOrbit(f"h{i + 1}", Fraction(rng.randint(1, 4 * max_action), rng.randint(1, 4)), rot, kind))
    return Catalog(orbits)


def random_generator_set(rng: random.Random, catalog: Mapping[str, SimpleOrbit], max_mult: int = 4) -> OrbitSet:
    out = {}
    for g, o in catalog.items():
        if rng.random() < 0.4:
            out[g] = 1 if o.kind.hyperbolic else rng.randint(1, max_mult)
    return OrbitSet(out)


def fredholm_chern(genus: int, ends, catalog: Mapping[str, SimpleOrbit], index: int = 2) -> int | None:
    """c_tau of an embedded curve with the given ends and Fredholm index, or None on parity mismatch."""
    cz_ind = sum((1 if e.sign == "+" else -1) * cz(e.cover * catalog[e.orbit].rotation) for e in ends)
    chi = 2 - 2 * genus - len(ends)
    twice = index + chi - cz_ind
    return None if twice % 2 else twice // 2


def random_record(
    rng: random.Random,
    catalog: Mapping[str, SimpleOrbit],
    beta: Mapping[str, int] | None = None,
    max_cover: int = 4,
    genus_range: tuple[int, int] = (0, 2),
    tries: int = 10_000,
) -> UCurveRecord:
    """A valid index-2 record with positive energy, lowering to ``beta`` if given."""
    ids = sorted(catalog)
    for _ in range(tries):
        b = OrbitSet(beta) if beta is not None else random_generator_set(rng, catalog, max_cover)
        ends: list[End] = []
        trivial: dict[str, int] = {}
        consumed: dict[str, int] = {}
        for g, m in b.items():
            theta = catalog[g].rotation
            r = rng.random()
            n = m if r < 0.6 else 0 if r < 0.9 else rng.randint(0, m)
            parts = negative_partition(theta, n) if n else ()
            if n and not check_partition_conditions(theta, m, parts, "-"):
                n, parts = 0, ()
            ends += [End(g, "-", d) for d in parts]
            trivial[g] = m - n
            consumed[g] = n
        want = rng.randint(1, 2)
        for g in rng.sample(ids, len(ids)):
            o = catalog[g]
            m0 = trivial.get(g, 0)
            if o.kind.hyperbolic and m0:
                continue
            # covers may exceed max_cover only to replace what the negative ends took away
            small = rng.sample(range(1, max_cover + 1), max_cover)
            large = list(range(max_cover + 1, max_cover + consumed.get(g, 0) + 1))
            sizes = [1] if o.kind.hyperbolic else rng.sample(small + large, len(small) + len(large))
            for n in sizes:
                parts = positive_partition(o.rotation, n)
                if check_partition_conditions(o.rotation, m0 + n, parts, "+"):
                    ends += [End(g, "+", d) for d in parts]
                    want -= 1
                    break
            if not want:
                break
        if not any(e.sign == "+" for e in ends):
            continue
        genus = rng.randint(*genus_range)
        rec = UCurveRecord.from_ends(genus, ends, trivial, RelClassData())
        if action(rec.alpha, catalog) <= action(rec.beta, catalog):
            continue
        if any(catalog[g].kind.hyperbolic and m > 1 for g, m in rec.alpha.items()):
            continue
        if not rec.trivial:
            c = fredholm_chern(genus, rec.ends, catalog)
        else:
            twice = 2 - j0_topological(rec) - cz_top(rec.alpha, catalog) + cz_top(rec.beta, catalog)
            c = None if twice % 2 else twice // 2
        if c is None:
            continue
        q = 2 - c - (_cz_total(rec.alpha, catalog) - _cz_total(rec.beta, catalog))
        return UCurveRecord(rec.alpha, rec.beta, genus, rec.ends, rec.trivial, RelClassData(c, q))
    raise RuntimeError("no valid record found; catalog too restrictive")


def random_chain(
    rng: random.Random,
    catalog: Mapping[str, SimpleOrbit],
    length: int,
    ledger_kw: Mapping | None = None,
    p0: int = 1,
    genus_range: tuple[int, int] = (0, 2),
    max_cover: int = 3,
) -> ChainRecord:
    """A chain alpha(p0) <- ... <- alpha(p0 + length) with a ledger whose q is p0 + length.

    ``ledger_kw`` overrides the default ledger constants (all equal to one,
    except eps_BM = 1/2 so that eps_BM < ell); B0 and M come from the catalog.
    """
    kw = {"B0": rotation_B0(catalog), "M": choose_M(catalog), "ell": 1, "eps_BM": Fraction(1, 2), "eta": 1, "delta1": 1, "delta2": 1, "hbar": 1}
    kw.update(ledger_kw or {})
    ledger = ConstantsLedger.build(p0=p0, q=p0 + length, **kw)
    for _ in range(100):
        steps = []
        cur = random_generator_set(rng, catalog, max_cover)
        try:
            for _ in range(length):
                rec = random_record(rng, catalog, beta=cur, max_cover=max_cover, genus_range=genus_range, tries=100)
                steps.append(rec)
                cur = rec.alpha
        except RuntimeError:
            continue  # dead end: no admissible step above cur
        break
    else:
        raise RuntimeError("could not build a chain of the requested length")
    base = rng.randint(-5, 5)
    ctaus = [base]
    for s in steps:
        ctaus.append(ctaus[-1] + s.rel.c_tau)
    return ChainRecord(tuple(steps), ledger, tuple(ctaus))


def random_punctures(
    rng: random.Random,
    max_den: int = 12,
    max_punctures: int = 4,
    delta: Fraction = Fraction(1, 1000),
    tries: int = 1000,
) -> tuple[int, list[PunctureData]]:
    """Genus and rotation-model punctures with windings on the allowed side of the gap."""
    for _ in range(tries):
        genus = rng.choice((0, 0, 0, 1, 2))
        n = rng.randint(1, max_punctures)
        signs = ["+"] + [rng.choice("+-") for _ in range(n - 1)]
        out = []
        try:
            for i, s in enumerate(signs):
                theta = random_rotation(rng, max_den, (-1, 0, 1)) + rng.randint(-2, 2)
                spec = rotation_spectrum(theta)
                if s == "+":
                    w = spec.below(-delta)[1] - rng.choice((0, 0, 0, 1, 2))
                else:
                    w = spec.at_or_above(delta)[1] + rng.choice((0, 0, 0, 1, 2))
                p = PunctureData(f"p{i}", s, 1, w, spectrum=spec)
                check_gap(p, delta)
                out.append(p)
        except GapViolation:
            continue
        return genus, out
    raise RuntimeError("could not avoid the spectral gap")
