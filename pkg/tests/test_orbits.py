import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from echkit.orbits import (
    Catalog,
    OrbitKind,
    OrbitSet,
    SimpleOrbit,
    UnknownOrbit,
    action,
    cardinality,
    complexity,
    grading_parity,
    is_ech_generator,
)

CAT = Catalog(
    [
        SimpleOrbit("g", Fraction(3, 2), "1/3+e"),
        SimpleOrbit("g1", 1, "1/5-e"),
        SimpleOrbit("g2", Fraction(5, 3), "2/7+e"),
        SimpleOrbit("h", 2, "1", "positive_hyperbolic"),
        SimpleOrbit("h1", 2, "0", "positive_hyperbolic"),
        SimpleOrbit("h2", 3, "-1", "positive_hyperbolic"),
        SimpleOrbit("n", 4, "3/2", "negative_hyperbolic"),
    ]
)


def test_action():
    assert action(OrbitSet(), CAT) == 0
    assert action(OrbitSet({"g": 2}), CAT) == 3
    assert action(OrbitSet({"g1": 1, "g2": 3}), CAT) == 6
    with pytest.raises(UnknownOrbit):
        action(OrbitSet({"zz": 1}), CAT)


@pytest.mark.parametrize("mults,cx,card", [({}, 0, 0), ({"g": 7}, 7, 1), ({"g1": 2, "g2": 5}, 5, 2)])
def test_complexity_cardinality(mults, cx, card):
    assert (complexity(OrbitSet(mults)), cardinality(OrbitSet(mults))) == (cx, card)


def test_ech_generator_and_parity():
    assert is_ech_generator(OrbitSet({"g": 5}), CAT)
    assert not is_ech_generator(OrbitSet({"h": 2}), CAT)
    assert is_ech_generator(OrbitSet(), CAT)
    assert grading_parity(OrbitSet(), CAT) == "even"
    assert grading_parity(OrbitSet({"h": 1}), CAT) == "odd"
    assert grading_parity(OrbitSet({"h1": 1, "h2": 1, "g": 3}), CAT) == "even"


def test_kind_invariants():
    with pytest.raises(ValueError):
        SimpleOrbit("x", 1, "1/2", "positive_hyperbolic")
    with pytest.raises(ValueError):
        SimpleOrbit("x", 1, "1", "negative_hyperbolic")
    with pytest.raises(ValueError):
        SimpleOrbit("x", 1, "2")
    with pytest.raises(ValueError):
        SimpleOrbit("x", 0, "1/2+e")
    assert OrbitKind("negative_hyperbolic").hyperbolic and not OrbitKind.ELLIPTIC.hyperbolic


def test_catalog_json_round_trip():
    text = json.dumps(CAT.to_json())
    assert Catalog.loads(text) == CAT
    with pytest.raises(ValueError):
        Catalog.from_json({"nope": []})
    with pytest.raises(ValueError):
        Catalog([SimpleOrbit("a", 1, "1/2"), SimpleOrbit("a", 2, "1/3")])
    with pytest.raises(UnknownOrbit):
        CAT["missing"]


def test_orbit_set_canonical():
    a = OrbitSet({"b": 1, "a": 2, "c": 0})
    assert list(a) == ["a", "b"] and "c" not in a
    assert a == {"a": 2, "b": 1}
    assert hash(a) == hash(OrbitSet([("b", 1), ("a", 2)]))
    assert a + {"a": 1, "c": 3} == OrbitSet({"a": 3, "b": 1, "c": 3})
    assert OrbitSet.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        OrbitSet({"a": -1})
    with pytest.raises(ValueError):
        OrbitSet.from_json([1, 2])


sets = st.dictionaries(st.sampled_from(["g", "g1", "g2", "n"]), st.integers(0, 6))


@given(sets, sets)
def test_action_additive(a, b):
    a, b = OrbitSet(a), OrbitSet(b)
    assert action(a + b, CAT) == action(a, CAT) + action(b, CAT)


@given(sets, sets)
def test_complexity_of_disjoint_union(a, b):
    a = OrbitSet({k: v for k, v in a.items() if k not in b})
    b = OrbitSet(b)
    assert complexity(a + b) == max(complexity(a), complexity(b))
