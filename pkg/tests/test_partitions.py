import pytest
from hypothesis import given
from hypothesis import strategies as st

from echkit.exactnum import PerturbedRational as PR
from echkit.partitions import (
    bruteforce_positive_partition,
    check_partition_conditions,
    is_exceptional,
    multiset_union,
    negative_partition,
    one_in_partition_equivalence,
    positive_partition,
    signed_partition,
)


def pr(text: str) -> PR:
    return PR.parse(text)


thetas = st.builds(PR, st.integers(-40, 40), st.integers(1, 20), st.sampled_from([-1, 0, 1]))


@pytest.mark.parametrize(
    "theta,m,plus,minus",
    [
        ("1/10", 4, (1, 1, 1, 1), (4,)),
        ("1/3+e", 6, (3, 3), (5, 1)),
        ("1/3-e", 6, (4, 1, 1), (3, 3)),
        ("1/2-e", 4, (3, 1), (2, 2)),
        ("2/5", 8, (5, 3), (5, 2, 1)),
        ("1/3+e", 3, (3,), (2, 1)),
    ],
)
def test_known_partitions(theta, m, plus, minus):
    assert positive_partition(pr(theta), m) == plus
    assert negative_partition(pr(theta), m) == minus


def test_divisible_denominator_family():
    # a/b + e with b | m: the path follows the line with primitive steps of width b
    assert positive_partition(pr("1/3+e"), 6) == (3, 3)
    assert positive_partition(pr("2/5+e"), 15) == (5, 5, 5)
    assert negative_partition(pr("1/3-e"), 9) == (3, 3, 3)


@given(thetas, st.integers(1, 40))
def test_partition_shape(theta, m):
    for p in (positive_partition(theta, m), negative_partition(theta, m)):
        assert sum(p) == m and all(x >= 1 for x in p)
        assert list(p) == sorted(p, reverse=True)


@given(thetas, st.integers(1, 30), st.integers(-3, 3))
def test_depends_only_on_class_mod_one(theta, m, k):
    assert positive_partition(theta + k, m) == positive_partition(theta, m)


@given(thetas, st.integers(1, 40))
def test_duality(theta, m):
    assert negative_partition(theta, m) == positive_partition(-theta, m)


@given(thetas, st.integers(1, 9))
def test_hull_matches_enumeration(theta, m):
    assert positive_partition(theta, m) == bruteforce_positive_partition(theta, m)


def test_zero_multiplicity():
    with pytest.raises(ValueError):
        positive_partition(pr("1/2"), 0)
    assert signed_partition(pr("1/2"), 0, "+") == ()
    with pytest.raises(ValueError):
        signed_partition(pr("1/2"), 2, "x")


def test_m_one_is_trivial():
    for t in ("0", "1/3+e", "5/7-e"):
        assert positive_partition(pr(t), 1) == negative_partition(pr(t), 1) == (1,)


@pytest.mark.parametrize("theta,m,expected", [("1/3", 1, True), ("1/10", 4, False), ("2/5", 8, False)])
def test_is_exceptional(theta, m, expected):
    assert is_exceptional(pr(theta), m) is expected


@pytest.mark.parametrize(
    "theta,total,parts,sign,expected",
    [
        ("1/10", 5, (1, 1), "+", True),
        ("1/3+e", 6, (2, 2), "+", False),
        ("1/3+e", 6, (3,), "+", True),
        ("1/3+e", 6, (3, 3), "+", True),
        ("1/10", 4, (4,), "-", True),
        ("1/10", 5, (4,), "-", False),
    ],
)
def test_check_partition_conditions(theta, total, parts, sign, expected):
    assert check_partition_conditions(pr(theta), total, parts, sign) is expected


def test_check_partition_conditions_rejects_overfull():
    with pytest.raises(ValueError):
        check_partition_conditions(pr("1/2"), 2, (3,), "+")


@pytest.mark.parametrize("theta,m,mp", [("1/10", 5, 2), ("1/3+e", 6, 3), ("e", 2, 1)])
def test_one_in_partition_equivalence(theta, m, mp):
    assert one_in_partition_equivalence(pr(theta), m, mp)


def test_one_in_partition_equivalence_bounds():
    with pytest.raises(ValueError):
        one_in_partition_equivalence(pr("1/2"), 3, 3)


@given(thetas, st.integers(2, 20), st.data())
def test_ones_propagate_under_partition_conditions(theta, m, data):
    mp = data.draw(st.integers(1, m - 1))
    parts = positive_partition(theta, mp)
    if check_partition_conditions(theta, m, parts, "+") and 1 in positive_partition(theta, m - mp):
        assert 1 in positive_partition(theta, m)


def test_multiset_union():
    assert multiset_union((2, 1), (3, 1)) == (3, 2, 1, 1)
