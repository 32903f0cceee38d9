"""Constants ledger, action-gap constants and the counting audit of U-curve chains."""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Mapping, Sequence

from .certified import Term, greater
from .exactnum import PerturbedRational, frac_bar
from .index import cz_top, ech_index, j0
from .orbits import OrbitSet, SimpleOrbit, action, cardinality, complexity
from .score import UCurveRecord, check_record, k_score, total_score

__all__ = [
    "LedgerError",
    "ChainError",
    "ConstantsLedger",
    "q_inequalities",
    "satisfies_q_inequalities",
    "solve_min_q",
    "action_values",
    "eps_M",
    "rotation_B0",
    "choose_M",
    "gap_class",
    "Dichotomy",
    "threshold_dichotomy",
    "ChainRecord",
    "StepAudit",
    "AuditReport",
    "audit_chain",
]


class LedgerError(ValueError):
    pass


class ChainError(ValueError):
    pass


F = Fraction
HALF, TWO_THIRDS, FOUR_FIFTHS, FIVE_SIXTHS = F(1, 2), F(2, 3), F(4, 5), F(5, 6)


def q_inequalities(delta1, delta2, ell, eps_prime, p0) -> list[tuple[list[Term], list[Term]]]:
    """The four (lhs, rhs) term lists that q must satisfy strictly."""
    d1, d2, l, e, p0 = F(delta1), F(delta2), F(ell), F(eps_prime), F(p0)
    return [
        ([(F(1), TWO_THIRDS)], [(4 * d2 / l + 6 * d1 * d2 + 9 * d2 / e, HALF)]),
        ([(F(1), FOUR_FIFTHS)], [(4 * d2 / l + 4 * d1 * d2 + 7 * d2 / e, HALF), (F(7), TWO_THIRDS)]),
        ([(F(1), FIVE_SIXTHS)], [(2 * d2 / l + 4 * d1 * d2 + 8 * d2 / e, HALF), (F(8), FOUR_FIFTHS), (F(8), TWO_THIRDS)]),
        ([(F(1), F(1))], [(p0, F(0)), (F(1), FIVE_SIXTHS), (F(1), FOUR_FIFTHS), (F(1), TWO_THIRDS), (d2 / e, HALF)]),
    ]


def satisfies_q_inequalities(q: int, delta1, delta2, ell, eps_prime, p0, bits: int = 64) -> list[bool]:
    return [greater(lhs, rhs, q, bits) for lhs, rhs in q_inequalities(delta1, delta2, ell, eps_prime, p0)]


def solve_min_q(delta1, delta2, ell, eps_prime, p0: int, bits: int = 64) -> int:
    """Least integer q > p0 satisfying all four inequalities.

    Each inequality, once true, stays true as q grows, so doubling then
    bisection finds the threshold.
    """
    if min(F(delta1), F(delta2), F(ell), F(eps_prime)) <= 0 or p0 < 0:
        raise ValueError("constants must be positive")
    ineqs = q_inequalities(delta1, delta2, ell, eps_prime, p0)

    def ok(q: int) -> bool:
        return all(greater(lhs, rhs, q, bits) for lhs, rhs in ineqs)

    lo, hi = p0, p0 + 1
    while not ok(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class ConstantsLedger:
    B0: int
    B: int
    M: int
    ell: Fraction
    eps_BM: Fraction
    eps_prime: Fraction
    delta1: Fraction
    delta2: Fraction
    p0: int
    q: int
    eta: Fraction
    hbar: Fraction

    def __post_init__(self):
        for name in ("ell", "eps_BM", "eps_prime", "delta1", "delta2", "eta", "hbar"):
            object.__setattr__(self, name, F(getattr(self, name)))
        problems = self.problems()
        if problems:
            raise LedgerError("; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        if min(self.B0, self.M, self.p0, self.q) < 1:
            raise LedgerError("B0, M, p0 and q must be positive integers")
        if min(self.ell, self.eps_BM, self.eps_prime, self.delta1, self.delta2, self.eta, self.hbar) <= 0:
            out.append("rational constants must be positive")
        if self.B != 4 * self.B0:
            out.append("B must equal 4*B0")
        if not (self.M > self.B0 and self.M >= 3):
            out.append("M must exceed B0 and be at least 3")
        if not self.eps_BM < self.ell:
            out.append("eps_BM must be below ell")
        if self.eps_prime != min(self.eta, self.eps_BM / 2):
            out.append("eps_prime must equal min(eta, eps_BM/2)")
        if self.q <= self.p0:
            out.append("q must exceed p0")
        return out

    @property
    def T_q_squared(self) -> Fraction:
        """T_q = delta2 * sqrt(q) is kept squared so comparisons stay exact."""
        return self.delta2**2 * self.q

    @classmethod
    def build(cls, B0: int, M: int, ell, eps_BM, eta, delta1, delta2, p0: int, hbar, q: int | None = None) -> ConstantsLedger:
        eps_prime = min(F(eta), F(eps_BM) / 2)
        if q is None:
            q = solve_min_q(delta1, delta2, ell, eps_prime, p0)
        return cls(B0, 4 * B0, M, F(ell), F(eps_BM), eps_prime, F(delta1), F(delta2), p0, q, F(eta), F(hbar))

    def q_certified(self, bits: int = 64) -> list[bool]:
        return satisfies_q_inequalities(self.q, self.delta1, self.delta2, self.ell, self.eps_prime, self.p0, bits)

    def to_json(self) -> dict:
        d = {k: getattr(self, k) for k in ("B0", "B", "M", "ell", "eps_BM", "eps_prime", "delta1", "delta2", "p0", "q", "eta", "hbar")}
        d = {k: (v if isinstance(v, int) else str(v)) for k, v in d.items()}
        d["T_q_squared"] = str(self.T_q_squared)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> ConstantsLedger:
        try:
            ints = {k: int(d[k]) for k in ("B0", "B", "M", "p0", "q")}
            rats = {k: F(str(d[k])) for k in ("ell", "eps_BM", "eps_prime", "delta1", "delta2", "eta", "hbar")}
        except KeyError as exc:
            raise LedgerError(f"ledger missing field {exc}") from None
        return cls(**ints, **rats)


# -- action gaps -------------------------------------------------------------


def action_values(actions: Sequence[Fraction], max_mult: int | None = None, cap: Fraction | None = None) -> list[Fraction]:
    """Sorted distinct actions of orbit sets with multiplicities <= max_mult and action <= cap."""
    vals = {F(0)}
    for a in actions:
        nxt = set()
        for s in vals:
            k = 0
            while (max_mult is None or k <= max_mult) and (cap is None or s + k * a <= cap):
                nxt.add(s + k * a)
                k += 1
        vals = nxt
    return sorted(vals)


def eps_M(catalog: Mapping[str, SimpleOrbit], M: int, action_cap) -> Fraction:
    """Smallest positive action gap covered by the two gap families at complexity M."""
    if not catalog:
        raise ValueError("empty catalog")
    cap = F(action_cap)
    actions = [o.action for o in catalog.values()]
    s_m = action_values(actions, max_mult=M)
    union = sorted(set(s_m) | set(action_values(actions, cap=cap)))
    best: Fraction | None = None

    def offer(x: Fraction) -> None:
        nonlocal best
        if x > 0 and (best is None or x < best):
            best = x

    for s in s_m:
        i = bisect.bisect_left(union, s)
        if i > 0:
            offer(s - union[i - 1])
        if i + 1 < len(union):
            offer(union[i + 1] - s)
    diffs = {s - t for s in s_m for t in s_m}
    span = cap + s_m[-1]
    for a in set(actions):
        zmax = floor(span / a)
        for d in diffs:
            z0 = floor(-d / a)
            for z in {min(max(z, -zmax), zmax) for z in range(z0 - 1, z0 + 3)}:
                offer(abs(d + z * a))
    if best is None:
        raise ValueError("no positive gap found; enlarge the action cap")
    return best


def rotation_B0(catalog: Mapping[str, SimpleOrbit]) -> int:
    return max((o.rotation.den for o in catalog.values()), default=1)


def choose_M(catalog: Mapping[str, SimpleOrbit], B0: int | None = None) -> int:
    """Least M >= 3 exceeding B0 and 2/frac_bar of every nonzero rotation class."""
    if B0 is None:
        B0 = rotation_B0(catalog)
    bound = F(0)
    for o in catalog.values():
        r = o.rotation
        bar = frac_bar(PerturbedRational(r.num, r.den)).value  # rational part only
        if bar:
            bound = max(bound, 2 / bar)
    return max(3, B0 + 1, floor(bound) + 1)


def gap_class(alpha: Mapping[str, int], beta: Mapping[str, int], M: int) -> bool:
    """Either set has complexity <= M, or both have one shared orbit above M."""
    if complexity(alpha) <= M or complexity(beta) <= M:
        return True
    big_a = [g for g, m in alpha.items() if m > M]
    big_b = [g for g, m in beta.items() if m > M]
    return len(big_a) == 1 and big_a == big_b


class Dichotomy(str, enum.Enum):
    NEAR = "near"
    SEPARATED = "separated"
    VIOLATED = "dichotomy violated"
    NOT_APPLICABLE = "neither-applicable"


def threshold_dichotomy(alpha: Mapping[str, int], beta: Mapping[str, int], catalog: Mapping[str, SimpleOrbit], ledger: ConstantsLedger) -> Dichotomy:
    a, b = action(alpha, catalog), action(beta, catalog)
    if cardinality(alpha) + cardinality(beta) > 4 or not gap_class(alpha, beta, ledger.M):
        return Dichotomy.NOT_APPLICABLE
    if a * a > ledger.T_q_squared or b * b > ledger.T_q_squared:
        return Dichotomy.NOT_APPLICABLE
    d = abs(a - b)
    if d <= ledger.hbar / 2:
        return Dichotomy.NEAR
    if d >= ledger.eps_prime:
        return Dichotomy.SEPARATED
    return Dichotomy.VIOLATED


# -- chain audit -------------------------------------------------------------


@dataclass(frozen=True)
class ChainRecord:
    """Steps C(p0+1), ..., C(q); step i goes from alpha(i) down to alpha(i-1).

    ``ctau_sets`` optionally lists c_tau(alpha(i)) for i = p0..q.  When
    absent, c_tau(alpha(p0)) is taken as 0 and later values are accumulated
    from the relative classes of the steps.
    """

    steps: tuple[UCurveRecord, ...]
    ledger: ConstantsLedger
    ctau_sets: tuple[int, ...] | None = None

    def orbit_sets(self) -> list[OrbitSet]:
        return [self.steps[0].beta] + [s.alpha for s in self.steps]

    def ctau_values(self) -> list[int]:
        if self.ctau_sets is not None:
            return list(self.ctau_sets)
        out = [0]
        for s in self.steps:
            out.append(out[-1] + s.rel.c_tau)
        return out


@dataclass(frozen=True)
class StepAudit:
    index: int
    action_jump: Fraction
    energy: str
    klass: str
    T: int
    T_prime: int
    K: int
    J0: int
    I: int
    ends: int
    genus: int


@dataclass
class AuditReport:
    steps: list[StepAudit]
    counts: dict[str, int]
    sums: dict[str, int]
    checks: dict[str, bool]
    ledger_checks: dict[str, bool]
    telescoping: tuple[int, int]
    low_energy_cylinders: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "counts": self.counts,
            "sums": self.sums,
            "checks": self.checks,
            "ledger_checks": self.ledger_checks,
            "telescoping": {"lhs": self.telescoping[0], "rhs": self.telescoping[1]},
            "low_energy_cylinders": self.low_energy_cylinders,
            "steps": [
                {
                    "i": s.index,
                    "action_jump": str(s.action_jump),
                    "energy": s.energy,
                    "class": s.klass,
                    "T": s.T,
                    "T_prime": s.T_prime,
                    "K": s.K,
                    "J0": s.J0,
                    "I": s.I,
                }
                for s in self.steps
            ],
        }

    def tsv(self) -> str:
        rows = ["section\tname\tvalue"]
        rows += [f"count\t{k}\t{v}" for k, v in self.counts.items()]
        rows += [f"sum\t{k}\t{v}" for k, v in self.sums.items()]
        rows += [f"check\t{k}\t{'pass' if v else 'FAIL'}" for k, v in self.checks.items()]
        rows += [f"ledger\t{k}\t{'pass' if v else 'FAIL'}" for k, v in self.ledger_checks.items()]
        rows.append(f"telescoping\tlhs=rhs\t{self.telescoping[0]}={self.telescoping[1]}")
        return "\n".join(rows) + "\n"


def _le_c_sqrt(x: Fraction, c: Fraction, q: int) -> bool:
    """x <= c*sqrt(q) for c >= 0, exactly."""
    return x <= 0 or x * x <= c * c * q


def _lt_power(n: int, e: Fraction, q: int) -> bool:
    """n < q**e for integer n >= 0, exactly."""
    return n ** e.denominator < q**e.numerator


def audit_chain(chain: ChainRecord, catalog: Mapping[str, SimpleOrbit], validate: bool = True) -> AuditReport:
    led = chain.ledger
    steps = chain.steps
    if not steps:
        raise ChainError("chain has no steps")
    if led.q - led.p0 != len(steps):
        raise LedgerError(f"ledger has q - p0 = {led.q - led.p0} but the chain has {len(steps)} steps")
    for i in range(1, len(steps)):
        if steps[i].beta != steps[i - 1].alpha:
            raise ChainError(f"chain condition fails between steps {led.p0 + i} and {led.p0 + i + 1}")
    if validate:
        for s in steps:
            check_record(s, catalog)
    ctaus = chain.ctau_values()
    if len(ctaus) != len(steps) + 1:
        raise ChainError("ctau_sets must list one value per orbit set")
    for i, s in enumerate(steps):
        if ctaus[i + 1] - ctaus[i] != s.rel.c_tau:
            raise ChainError(f"step {led.p0 + i + 1}: relative c_tau disagrees with the orbit-set values")

    audits: list[StepAudit] = []
    cylinders: list[int] = []
    for off, s in enumerate(steps):
        i = led.p0 + off + 1
        jump = action(s.alpha, catalog) - action(s.beta, catalog)
        ts = total_score(s, catalog, led.M)
        low = jump < led.eps_prime
        if not low:
            klass = "G0"
        elif ts.T == 0 and ts.J0 == 1:
            klass = "G1"
        elif ts.T == 0 and ts.J0 == 2:
            klass = "G2"
        elif ts.T > 0:
            klass = "G3"
        else:
            klass = "unclassified"
        if low and s.genus == 0 and len(s.ends) == 2:
            cylinders.append(i)
        audits.append(StepAudit(i, jump, "low" if low else "high", klass, ts.T, ts.T_prime, k_score(s, catalog), ts.J0, ech_index(s.alpha, s.beta, s.rel, catalog), len(s.ends), s.genus))

    counts = {k: sum(1 for a in audits if a.klass == k) for k in ("G0", "G1", "G2", "G3", "unclassified")}
    sums = {
        "J0": sum(a.J0 for a in audits),
        "T": sum(a.T for a in audits),
        "T_prime": sum(a.T_prime for a in audits),
        "K": sum(a.K for a in audits),
    }

    sets = chain.orbit_sets()
    lhs = sum(j0(s.alpha, s.beta, s.rel, catalog) - ech_index(s.alpha, s.beta, s.rel, catalog) for s in steps)
    rhs = (2 * ctaus[0] + cz_top(sets[0], catalog)) - (2 * ctaus[-1] + cz_top(sets[-1], catalog))

    q, L = led.q, len(steps)
    d1, d2, ell, ep = led.delta1, led.delta2, led.ell, led.eps_prime
    checks = {
        "classes_cover_steps": sum(counts.values()) == L,
        "g0_bound": _le_c_sqrt(F(counts["G0"]), d2 / ep, q),
        "telescoping": lhs == rhs,
        "j0_sum": _le_c_sqrt(F(sums["J0"] - 2 * L), 2 * d1 * d2, q),
        "coarse_T": all(a.T >= -9 for a in audits),
        "coarse_T_prime": all(a.T_prime >= -7 for a in audits),
        "coarse_K": all(a.K >= -8 for a in audits),
        "total_T": _le_c_sqrt(F(sums["T"]), (4 / ell + 6 * d1) * d2, q),
        "total_T_prime": _le_c_sqrt(F(sums["T_prime"]), (4 / ell + 4 * d1) * d2, q),
        "total_K": _le_c_sqrt(F(sums["K"]), (2 / ell + 4 * d1) * d2, q),
        "g3_bound": _lt_power(counts["G3"], TWO_THIRDS, q),
        "g1_bound": _lt_power(counts["G1"], FOUR_FIFTHS, q),
        "g2_bound": _lt_power(counts["G2"], FIVE_SIXTHS, q),
    }
    cert = led.q_certified()
    ledger_checks = {"q_ineq_1": cert[0], "q_ineq_2": cert[1], "q_ineq_3": cert[2], "step5_q_ineq_4": cert[3]}
    return AuditReport(audits, counts, sums, checks, ledger_checks, (lhs, rhs), cylinders)
