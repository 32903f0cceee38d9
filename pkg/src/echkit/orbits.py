"""Orbit catalogs and orbit sets."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .exactnum import PerturbedRational

__all__ = [
    "OrbitKind",
    "SimpleOrbit",
    "Catalog",
    "OrbitSet",
    "UnknownOrbit",
    "action",
    "complexity",
    "cardinality",
    "is_ech_generator",
    "grading_parity",
]


class UnknownOrbit(KeyError):
    pass


class OrbitKind(str, enum.Enum):
    ELLIPTIC = "elliptic"
    POSITIVE_HYPERBOLIC = "positive_hyperbolic"
    NEGATIVE_HYPERBOLIC = "negative_hyperbolic"

    @property
    def hyperbolic(self) -> bool:
        return self is not OrbitKind.ELLIPTIC


@dataclass(frozen=True)
class SimpleOrbit:
    id: str
    action: Fraction
    rotation: PerturbedRational
    kind: OrbitKind = OrbitKind.ELLIPTIC

    def __post_init__(self):
        object.__setattr__(self, "action", Fraction(self.action))
        object.__setattr__(self, "rotation", PerturbedRational.coerce(self.rotation))
        object.__setattr__(self, "kind", OrbitKind(self.kind))
        if self.action <= 0:
            raise ValueError(f"orbit {self.id}: action must be positive")
        r = self.rotation
        if self.kind is OrbitKind.POSITIVE_HYPERBOLIC and not (r.eps == 0 and r.den == 1):
            raise ValueError(f"orbit {self.id}: positive hyperbolic rotation must be an integer")
        if self.kind is OrbitKind.NEGATIVE_HYPERBOLIC and not (r.eps == 0 and r.den == 2):
            raise ValueError(f"orbit {self.id}: negative hyperbolic rotation must be a half-integer")
        if self.kind is OrbitKind.ELLIPTIC and r.eps == 0 and r.den == 1:
            raise ValueError(f"orbit {self.id}: elliptic rotation must be perturbed or non-integer")

    def to_json(self) -> dict:
        return {"id": self.id, "action": str(self.action), "rotation": str(self.rotation), "kind": self.kind.value}

    @classmethod
    def from_json(cls, d: Mapping) -> SimpleOrbit:
        try:
            return cls(str(d["id"]), Fraction(str(d["action"])), PerturbedRational.parse(str(d["rotation"])), d.get("kind", "elliptic"))
        except KeyError as exc:
            raise ValueError(f"orbit entry missing field {exc}") from None


class Catalog(Mapping[str, SimpleOrbit]):
    """Immutable id -> orbit map."""

    def __init__(self, orbits: Iterable[SimpleOrbit] = ()):
        self._orbits: dict[str, SimpleOrbit] = {}
        for o in orbits:
            if o.id in self._orbits:
                raise ValueError(f"duplicate orbit id {o.id!r}")
            self._orbits[o.id] = o

    def __getitem__(self, key: str) -> SimpleOrbit:
        try:
            return self._orbits[key]
        except KeyError:
            raise UnknownOrbit(key) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._orbits)

    def __len__(self) -> int:
        return len(self._orbits)

    def __eq__(self, other) -> bool:
        return isinstance(other, Catalog) and self._orbits == other._orbits

    def __repr__(self) -> str:
        return f"Catalog({list(self._orbits.values())!r})"

    def to_json(self) -> dict:
        return {"orbits": [o.to_json() for o in self._orbits.values()]}

    @classmethod
    def from_json(cls, d: Mapping) -> Catalog:
        if not isinstance(d, Mapping) or "orbits" not in d:
            raise ValueError('catalog must be an object with an "orbits" list')
        return cls(SimpleOrbit.from_json(e) for e in d["orbits"])

    @classmethod
    def loads(cls, text: str) -> Catalog:
        return cls.from_json(json.loads(text))


class OrbitSet(Mapping[str, int]):
    """Finitely supported multiplicity function; zero entries are dropped."""

    __slots__ = ("_items",)

    def __init__(self, mults: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = mults.items() if isinstance(mults, Mapping) else mults
        d: dict[str, int] = {}
        for k, v in items:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"multiplicity of {k!r} must be a nonnegative integer, got {v!r}")
            if v:
                d[str(k)] = d.get(str(k), 0) + v
        self._items = tuple(sorted(d.items()))

    def __getitem__(self, key: str) -> int:
        for k, v in self._items:
            if k == key:
                return v
        raise KeyError(key)

    def get(self, key: str, default: int = 0) -> int:  # type: ignore[override]
        for k, v in self._items:
            if k == key:
                return v
        return default

    def __iter__(self) -> Iterator[str]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, OrbitSet):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == OrbitSet(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"OrbitSet({dict(self._items)!r})"

    def __add__(self, other: Mapping[str, int]) -> OrbitSet:
        return OrbitSet([*self._items, *other.items()])

    def to_json(self) -> dict:
        return dict(self._items)

    @classmethod
    def from_json(cls, d) -> OrbitSet:
        if not isinstance(d, Mapping):
            raise ValueError("orbit set must be a JSON object of id -> multiplicity")
        return cls(d)


def _resolve(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> Iterator[tuple[SimpleOrbit, int]]:
    for k, m in alpha.items():
        if k not in catalog:
            raise UnknownOrbit(k)
        yield catalog[k], m


def action(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> Fraction:
    return sum((o.action * m for o, m in _resolve(alpha, catalog)), Fraction(0))


def complexity(alpha: Mapping[str, int]) -> int:
    return max(alpha.values(), default=0)


def cardinality(alpha: Mapping[str, int]) -> int:
    return sum(1 for m in alpha.values() if m)


def is_ech_generator(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> bool:
    return all(m == 1 or not o.kind.hyperbolic for o, m in _resolve(alpha, catalog))


def grading_parity(alpha: Mapping[str, int], catalog: Mapping[str, SimpleOrbit]) -> str:
    n = sum(1 for o, _ in _resolve(alpha, catalog) if o.kind is OrbitKind.POSITIVE_HYPERBOLIC)
    return "odd" if n % 2 else "even"
