"""Index formulas: Conley-Zehnder, ECH, J0, weighted Fredholm index, windings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactnum import PerturbedRational, ceil_mul, floor_mul
from .orbits import SimpleOrbit, UnknownOrbit

__all__ = [
    "cz",
    "cz_iterated_sum",
    "cz_top",
    "RelClassData",
    "ech_index",
    "index_ambiguity",
    "shift_class",
    "j0",
    "e_gamma",
    "j0_topological",
    "SpectrumModel",
    "rotation_spectrum",
    "weighted_cz",
    "weighted_parity",
    "PunctureData",
    "GapViolation",
    "check_gap",
    "puncture_cz",
    "fredholm_index_delta",
    "WindReport",
    "wind_relations",
    "automatic_transversality_hypotheses",
]


def cz(theta: PerturbedRational) -> int:
    """floor(theta) + ceil(theta), also for integer-valued theta."""
    return theta.floor() + theta.ceil()


_PREFIX: dict[PerturbedRational, list[int]] = {}


def cz_iterated_sum(theta: PerturbedRational, m: int) -> int:
    pre = _PREFIX.setdefault(theta, [0])  # prefix sums, grown on demand
    while len(pre) <= m:
        k = len(pre)
        pre.append(pre[-1] + floor_mul(theta, k) + ceil_mul(theta, k))
    return pre[m]


def _orbit(catalog: Mapping[str, SimpleOrbit], key: str) -> SimpleOrbit:
    if key not in catalog:
        raise UnknownOrbit(key)
    return catalog[key]


def cz_top(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> int:
    return sum(floor_mul(_orbit(catalog, k).rotation, m) + ceil_mul(_orbit(catalog, k).rotation, m) for k, m in alpha.items())


def _cz_total(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> int:
    return sum(cz_iterated_sum(_orbit(catalog, k).rotation, m) for k, m in alpha.items())


@dataclass(frozen=True)
class RelClassData:
    """Relative class data supplied by the caller.

    ``c1_eval[i]`` and ``pd_gamma_eval[i]`` are the pairings of the i-th basis
    class with c1 and with twice the Poincare dual of the total homology class.
    """

    c_tau: int = 0
    q_tau: int = 0
    c1_eval: tuple[int, ...] = ()
    pd_gamma_eval: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c1_eval", tuple(self.c1_eval))
        object.__setattr__(self, "pd_gamma_eval", tuple(self.pd_gamma_eval))
        if len(self.c1_eval) != len(self.pd_gamma_eval):
            raise ValueError("c1_eval and pd_gamma_eval must have equal length")


def ech_index(alpha: Mapping[str, int], beta: Mapping[str, int], rel: RelClassData, catalog: Mapping[str, SimpleOrbit]) -> int:
    return rel.c_tau + rel.q_tau + _cz_total(alpha, catalog) - _cz_total(beta, catalog)


def index_ambiguity(delta_class: Sequence[int], rel: RelClassData) -> int:
    if len(delta_class) != len(rel.c1_eval):
        raise ValueError(f"class vector has length {len(delta_class)}, evaluators have {len(rel.c1_eval)}")
    return sum(d * (c + p) for d, c, p in zip(delta_class, rel.c1_eval, rel.pd_gamma_eval))


def shift_class(rel: RelClassData, delta_class: Sequence[int]) -> RelClassData:
    """Class data of Z + delta: c_tau moves by <delta, c1>, Q_tau by <delta, 2PD(Gamma)>."""
    if len(delta_class) != len(rel.c1_eval):
        raise ValueError("dimension mismatch")
    dc = sum(d * c for d, c in zip(delta_class, rel.c1_eval))
    dq = sum(d * p for d, p in zip(delta_class, rel.pd_gamma_eval))
    return RelClassData(rel.c_tau + dc, rel.q_tau + dq, rel.c1_eval, rel.pd_gamma_eval)


def j0(alpha: Mapping[str, int], beta: Mapping[str, int], rel: RelClassData, catalog: Mapping[str, SimpleOrbit]) -> int:
    return ech_index(alpha, beta, rel, catalog) - (2 * rel.c_tau + cz_top(alpha, catalog) - cz_top(beta, catalog))


def e_gamma(curve, gamma: str) -> int:
    """Contribution of one orbit to the topological J0 formula.

    ``curve`` needs ``ends`` (items with ``orbit`` and ``sign``) and ``trivial``.
    """
    total = 0
    has_trivial = curve.trivial.get(gamma, 0) > 0
    for sign in "+-":
        n = sum(1 for e in curve.ends if e.orbit == gamma and e.sign == sign)
        if n:
            total += 2 * n - (0 if has_trivial else 1)
    return total


def j0_topological(curve) -> int:
    orbits = {e.orbit for e in curve.ends}
    return 2 * curve.genus - 2 + sum(e_gamma(curve, g) for g in orbits)


# -- asymptotic spectra ------------------------------------------------------

Eigen = tuple[PerturbedRational, int, int]


@dataclass(frozen=True)
class SpectrumModel:
    """Finite list of (eigenvalue, winding, multiplicity), or the rotation model.

    With ``rotation`` set, eigenvalues are ``w - rotation`` with winding ``w``
    and multiplicity 2 for every integer ``w``; ``entries`` is ignored.
    """

    entries: tuple[Eigen, ...] = ()
    rotation: PerturbedRational | None = None

    def __post_init__(self):
        if self.rotation is not None:
            object.__setattr__(self, "rotation", PerturbedRational.coerce(self.rotation))
            return
        ents = tuple(sorted((PerturbedRational.coerce(e), int(w), int(m)) for e, w, m in self.entries))
        object.__setattr__(self, "entries", ents)
        count: dict[int, int] = {}
        for i, (e, w, m) in enumerate(ents):
            if m not in (1, 2):
                raise ValueError("multiplicity must be 1 or 2")
            if i and w < ents[i - 1][1]:
                raise ValueError("winding must be nondecreasing in the eigenvalue")
            count[w] = count.get(w, 0) + m
        if any(c > 2 for c in count.values()):
            raise ValueError("each winding carries total multiplicity at most 2")
        inner = sorted(count)[1:-1]
        if any(count[w] != 2 for w in inner):
            raise ValueError("interior windings must carry total multiplicity 2")

    @property
    def source(self) -> str:
        return "explicit" if self.rotation is None else f"rotation({self.rotation})"

    def below(self, delta: Fraction) -> Eigen:
        """Largest eigenvalue strictly below delta."""
        if self.rotation is not None:
            w = (self.rotation + delta).ceil() - 1
            return (w - self.rotation, w, 2)
        cands = [e for e in self.entries if e[0] < delta]
        if not cands:
            raise ValueError(f"spectrum window has no eigenvalue below {delta}")
        return cands[-1]

    def at_or_above(self, delta: Fraction) -> Eigen:
        if self.rotation is not None:
            w = (self.rotation + delta).ceil()
            return (w - self.rotation, w, 2)
        cands = [e for e in self.entries if e[0] >= delta]
        if not cands:
            raise ValueError(f"spectrum window has no eigenvalue at or above {delta}")
        return cands[0]

    def meets(self, lo: Fraction, hi: Fraction, closed_lo: bool, closed_hi: bool) -> bool:
        """Whether some eigenvalue lies in the interval between lo and hi."""
        def inside(x: PerturbedRational) -> bool:
            return (x > lo or (closed_lo and x == lo)) and (x < hi or (closed_hi and x == hi))

        if self.rotation is None:
            return any(inside(e) for e, _, _ in self.entries)
        first = (self.rotation + lo).floor() - 1
        last = (self.rotation + hi).ceil() + 1
        return any(inside(w - self.rotation) for w in range(first, last + 1))


def rotation_spectrum(theta: PerturbedRational) -> SpectrumModel:
    return SpectrumModel(rotation=PerturbedRational.coerce(theta))


def weighted_parity(spec: SpectrumModel, delta: Fraction) -> int:
    return spec.at_or_above(Fraction(delta))[1] - spec.below(Fraction(delta))[1]


def weighted_cz(spec: SpectrumModel, delta: Fraction) -> int:
    delta = Fraction(delta)
    lo = spec.below(delta)[1]
    p = spec.at_or_above(delta)[1] - lo
    if p not in (0, 1):
        raise ValueError(f"winding jump {p} across delta; spectrum window inconsistent")
    return 2 * lo + p


@dataclass(frozen=True)
class PunctureData:
    orbit: str
    sign: str
    cover: int
    winding: int
    cz: int | None = None
    spectrum: SpectrumModel | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        if self.cover < 1:
            raise ValueError("cover must be at least 1")
        if self.cz is None and self.spectrum is None:
            raise ValueError("puncture needs a weighted CZ value or a spectrum")


class GapViolation(ValueError):
    pass


def check_gap(p: PunctureData, delta: Fraction) -> None:
    """Positive ends need no eigenvalue in [-delta, 0), negative ends none in (0, delta]."""
    if p.spectrum is None:
        return
    delta = Fraction(delta)
    if p.sign == "+":
        bad = p.spectrum.meets(-delta, Fraction(0), True, False)
    else:
        bad = p.spectrum.meets(Fraction(0), delta, False, True)
    if bad:
        raise GapViolation(f"delta={delta} meets the spectrum at {p.sign} puncture on {p.orbit}")


def puncture_cz(p: PunctureData, delta: Fraction) -> int:
    """Weighted CZ used in the index: at -delta for positive ends, +delta for negative ends."""
    if p.spectrum is None:
        return p.cz  # type: ignore[return-value]
    check_gap(p, delta)
    return weighted_cz(p.spectrum, -Fraction(delta) if p.sign == "+" else Fraction(delta))


def fredholm_index_delta(genus: int, punctures: Sequence[PunctureData], delta: Fraction) -> int:
    plus = [p for p in punctures if p.sign == "+"]
    minus = [p for p in punctures if p.sign == "-"]
    return (
        -2
        + 2 * genus
        + len(plus)
        + len(minus)
        + sum(puncture_cz(p, delta) for p in plus)
        - sum(puncture_cz(p, delta) for p in minus)
    )


@dataclass(frozen=True)
class WindReport:
    wind_inf: int
    wind_pi: int
    gamma_odd_count: int
    ind_delta: int
    ineq_holds: bool

    @property
    def valid(self) -> bool:
        """The projected zero count of a real curve is never negative."""
        return self.wind_pi >= 0


def wind_relations(genus: int, punctures: Sequence[PunctureData], delta: Fraction) -> WindReport:
    wind_inf = sum(p.winding for p in punctures if p.sign == "+") - sum(p.winding for p in punctures if p.sign == "-")
    n = len(punctures)
    wind_pi = wind_inf - 2 + 2 * genus + n
    odd = sum(1 for p in punctures if puncture_cz(p, delta) % 2)
    ind = fredholm_index_delta(genus, punctures, delta)
    return WindReport(wind_inf, wind_pi, odd, ind, 2 * wind_pi <= ind - 2 + 2 * genus + n - odd)


def automatic_transversality_hypotheses(genus: int, ind_delta: int, p_values: Sequence[int]) -> bool:
    return genus == 0 and ind_delta == 2 and all(p == 1 for p in p_values)
