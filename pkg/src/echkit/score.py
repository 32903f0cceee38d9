"""Score bookkeeping for index-2 currents and validation of their records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .index import RelClassData, e_gamma, ech_index, j0, j0_topological
from .orbits import OrbitKind, OrbitSet, SimpleOrbit, UnknownOrbit, is_ech_generator
from .partitions import check_partition_conditions, negative_partition, positive_partition

__all__ = [
    "End",
    "UCurveRecord",
    "InvalidRecord",
    "validate_record",
    "is_special_component",
    "is_p_plus_component",
    "is_p_minus_component",
    "orbit_score",
    "s_gamma",
    "t_gamma",
    "t_prime_gamma",
    "TotalScore",
    "total_score",
    "k_set",
    "k_score",
    "record_warnings",
    "BirkhoffReport",
    "birkhoff_eligibility",
    "score_report",
]


class InvalidRecord(ValueError):
    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant


@dataclass(frozen=True)
class End:
    orbit: str
    sign: str
    cover: int

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError(f"end sign must be '+' or '-', got {self.sign!r}")
        if not isinstance(self.cover, int) or self.cover < 1:
            raise ValueError(f"end cover must be a positive integer, got {self.cover!r}")


@dataclass(frozen=True)
class UCurveRecord:
    """Combinatorial data of a current C0 + C1 from alpha to beta.

    ``trivial`` holds the trivial-cylinder multiplicities of C0 and ``ends``
    the ends of the nontrivial part C1.
    """

    alpha: OrbitSet
    beta: OrbitSet
    genus: int
    ends: tuple[End, ...]
    trivial: OrbitSet
    rel: RelClassData = field(default_factory=RelClassData)
    declared_I: int = 2

    def __post_init__(self):
        object.__setattr__(self, "alpha", OrbitSet(self.alpha))
        object.__setattr__(self, "beta", OrbitSet(self.beta))
        object.__setattr__(self, "trivial", OrbitSet(self.trivial))
        object.__setattr__(self, "ends", tuple(sorted(self.ends, key=lambda e: (e.orbit, e.sign, -e.cover))))
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @classmethod
    def from_ends(cls, genus: int, ends: Iterable[End], trivial: Mapping[str, int], rel: RelClassData, declared_I: int = 2) -> UCurveRecord:
        ends = tuple(ends)
        alpha = OrbitSet(trivial) + OrbitSet([(e.orbit, e.cover) for e in ends if e.sign == "+"])
        beta = OrbitSet(trivial) + OrbitSet([(e.orbit, e.cover) for e in ends if e.sign == "-"])
        return cls(alpha, beta, genus, ends, OrbitSet(trivial), rel, declared_I)

    def covers(self, gamma: str, sign: str) -> tuple[int, ...]:
        return tuple(sorted((e.cover for e in self.ends if e.orbit == gamma and e.sign == sign), reverse=True))

    def end_orbits(self) -> set[str]:
        return {e.orbit for e in self.ends}

    def support(self) -> set[str]:
        return set(self.alpha) | set(self.beta) | self.end_orbits()

    def to_json(self) -> dict:
        d = {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "genus": self.genus,
            "ends": [{"orbit": e.orbit, "sign": e.sign, "cover": e.cover} for e in self.ends],
            "trivial": self.trivial.to_json(),
            "ctau": self.rel.c_tau,
            "qtau": self.rel.q_tau,
            "I": self.declared_I,
        }
        if self.rel.c1_eval:
            d["c1_eval"] = list(self.rel.c1_eval)
            d["pd_gamma_eval"] = list(self.rel.pd_gamma_eval)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> UCurveRecord:
        try:
            rel = RelClassData(int(d.get("ctau", 0)), int(d.get("qtau", 0)), d.get("c1_eval", ()), d.get("pd_gamma_eval", ()))
            ends = tuple(End(str(e["orbit"]), str(e["sign"]), int(e["cover"])) for e in d.get("ends", ()))
            return cls(
                OrbitSet.from_json(d["alpha"]),
                OrbitSet.from_json(d["beta"]),
                int(d.get("genus", 0)),
                ends,
                OrbitSet.from_json(d.get("trivial", {})),
                rel,
                int(d.get("I", 2)),
            )
        except KeyError as exc:
            raise ValueError(f"record missing field {exc}") from None


def validate_record(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit]) -> list[str]:
    """Names of violated record invariants (empty when valid)."""
    for g in rec.support():
        if g not in catalog:
            raise UnknownOrbit(g)
    bad: list[str] = []
    for g in rec.support():
        m0 = rec.trivial.get(g, 0)
        if rec.alpha.get(g, 0) != m0 + sum(rec.covers(g, "+")) or rec.beta.get(g, 0) != m0 + sum(rec.covers(g, "-")):
            bad.append("multiplicity-consistency")
            break
    if ech_index(rec.alpha, rec.beta, rec.rel, catalog) != rec.declared_I:
        bad.append("declared-index")
    if rec.declared_I == 2 and not (is_ech_generator(rec.alpha, catalog) and is_ech_generator(rec.beta, catalog)):
        bad.append("ech-generator")
    if "multiplicity-consistency" not in bad:
        for g in rec.end_orbits():
            theta = catalog[g].rotation
            ok = all(
                not rec.covers(g, s) or check_partition_conditions(theta, total.get(g, 0), rec.covers(g, s), s)
                for s, total in (("+", rec.alpha), ("-", rec.beta))
            )
            if not ok:
                bad.append("partition-conditions")
                break
    if j0(rec.alpha, rec.beta, rec.rel, catalog) != j0_topological(rec):
        bad.append("j0-consistency")
    return bad


def check_record(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit], force: bool = False) -> UCurveRecord:
    """Return ``rec`` if valid, else raise naming the first violated invariant; ``force`` skips checks."""
    if not force:
        bad = validate_record(rec, catalog)
        if bad:
            raise InvalidRecord(bad[0], f"record violates {', '.join(bad)}")
    return rec


# -- component classifiers ---------------------------------------------------


def _theta(catalog: Mapping[str, SimpleOrbit], gamma: str):
    if gamma not in catalog:
        raise UnknownOrbit(gamma)
    return catalog[gamma].rotation


def is_special_component(gamma: str, alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> bool:
    m = alpha.get(gamma, 0)
    theta = _theta(catalog, gamma)
    return m > 1 and 1 not in positive_partition(theta, m)


def is_p_plus_component(gamma: str, alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit], M: int) -> bool:
    m = alpha.get(gamma, 0)
    theta = _theta(catalog, gamma)
    return m >= M and positive_partition(theta, m) == (m,)


def is_p_minus_component(gamma: str, alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit], M: int) -> bool:
    m = alpha.get(gamma, 0)
    theta = _theta(catalog, gamma)
    return m >= M and negative_partition(theta, m) == (m,)


def orbit_score(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit], M: int) -> int:
    return sum(
        is_p_plus_component(g, alpha, catalog, M) + is_special_component(g, alpha, catalog) - is_p_minus_component(g, alpha, catalog, M)
        for g in alpha
    )


def s_gamma(rec: UCurveRecord, gamma: str, catalog: Mapping[str, SimpleOrbit], M: int) -> int:
    a, b = rec.alpha, rec.beta
    up = is_p_plus_component(gamma, a, catalog, M) + is_special_component(gamma, a, catalog) + is_p_minus_component(gamma, b, catalog, M)
    down = is_p_plus_component(gamma, b, catalog, M) + is_special_component(gamma, b, catalog) + is_p_minus_component(gamma, a, catalog, M)
    return up - down


def t_gamma(rec: UCurveRecord, gamma: str, catalog: Mapping[str, SimpleOrbit], M: int) -> int:
    return s_gamma(rec, gamma, catalog, M) + 3 * e_gamma(rec, gamma)


def t_prime_gamma(rec: UCurveRecord, gamma: str, catalog: Mapping[str, SimpleOrbit], M: int) -> int:
    return s_gamma(rec, gamma, catalog, M) + 2 * e_gamma(rec, gamma)


class TotalScore(NamedTuple):
    T: int
    T_prime: int
    y: int
    S: int
    J0: int


def total_score(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit], M: int) -> TotalScore:
    j = j0(rec.alpha, rec.beta, rec.rel, catalog)
    y = j - 2
    s = orbit_score(rec.alpha, catalog, M) - orbit_score(rec.beta, catalog, M)
    return TotalScore(3 * y + s, 2 * y + s, y, s, j)


def k_set(alpha: Mapping[str, int]) -> int:
    return -sum(1 for m in alpha.values() if m > 1)


def k_score(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit]) -> int:
    y = j0(rec.alpha, rec.beta, rec.rel, catalog) - 2
    return k_set(rec.alpha) - k_set(rec.beta) + 2 * y


def record_warnings(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit]) -> list[str]:
    """Soft checks that real U-curves satisfy but validation does not enforce."""
    k = k_score(rec, catalog)
    return [f"K = {k} is below -8"] if k < -8 else []


@dataclass(frozen=True)
class BirkhoffReport:
    at_least_two_ends: bool
    genus_zero: bool
    no_repeated_sign_at_orbit: bool
    no_positive_hyperbolic_ends: bool
    compactness: str = "not combinatorially decidable"

    @property
    def decidable_conditions_hold(self) -> bool:
        return self.at_least_two_ends and self.genus_zero and self.no_repeated_sign_at_orbit and self.no_positive_hyperbolic_ends


def birkhoff_eligibility(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit]) -> BirkhoffReport:
    seen = [(e.orbit, e.sign) for e in rec.ends]
    return BirkhoffReport(
        len(rec.ends) >= 2,
        rec.genus == 0,
        len(seen) == len(set(seen)),
        all(catalog[e.orbit].kind is not OrbitKind.POSITIVE_HYPERBOLIC for e in rec.ends),
    )


def score_report(rec: UCurveRecord, catalog: Mapping[str, SimpleOrbit], M: int) -> dict:
    ts = total_score(rec, catalog, M)
    per = {
        g: {"S": s_gamma(rec, g, catalog, M), "e": e_gamma(rec, g), "T": t_gamma(rec, g, catalog, M), "T_prime": t_prime_gamma(rec, g, catalog, M)}
        for g in sorted(rec.end_orbits())
    }
    b = birkhoff_eligibility(rec, catalog)
    return {
        "M": M,
        "J0": ts.J0,
        "J0_topological": j0_topological(rec),
        "y": ts.y,
        "S": ts.S,
        "T": ts.T,
        "T_prime": ts.T_prime,
        "K": k_score(rec, catalog),
        "warnings": record_warnings(rec, catalog),
        "orbits": per,
        "birkhoff": {
            "at_least_two_ends": b.at_least_two_ends,
            "genus_zero": b.genus_zero,
            "no_repeated_sign_at_orbit": b.no_repeated_sign_at_orbit,
            "no_positive_hyperbolic_ends": b.no_positive_hyperbolic_ends,
            "compactness": b.compactness,
        },
    }
