import random
from fractions import Fraction

import pytest

from echkit.auditor import audit_chain
from echkit.generate import fredholm_chern, random_catalog, random_chain, random_punctures, random_record
from echkit.index import check_gap, j0, j0_topological, wind_relations
from echkit.score import validate_record
from echkit.verify import ALIASES, SUITES, run_suite, single_orbit_configs, theta_grid


def test_generators_are_seeded():
    a, b = random.Random(7), random.Random(7)
    ca, cb = random_catalog(a), random_catalog(b)
    assert ca.to_json() == cb.to_json()
    assert random_record(a, ca).to_json() == random_record(b, cb).to_json()


@pytest.mark.parametrize("seed", range(20))
def test_random_records_are_valid(seed):
    rng = random.Random(seed)
    cat = random_catalog(rng)
    rec = random_record(rng, cat)
    validate_record(rec, cat)
    assert j0(rec.alpha, rec.beta, rec.rel, cat) == j0_topological(rec)
    if not rec.trivial:
        assert fredholm_chern(rec.genus, rec.ends, cat) == rec.rel.c_tau


def test_random_chain_shape():
    rng = random.Random(3)
    while True:
        cat = random_catalog(rng)
        try:
            chain = random_chain(rng, cat, 5)
            break
        except RuntimeError:
            continue
    assert len(chain.steps) == 5 and chain.ledger.q == chain.ledger.p0 + 5
    for lo, hi in zip(chain.steps, chain.steps[1:]):
        assert hi.beta == lo.alpha
    assert audit_chain(chain, cat).checks["telescoping"]


def test_random_punctures_avoid_gap():
    rng = random.Random(11)
    for _ in range(50):
        genus, ps = random_punctures(rng)
        assert ps[0].sign == "+"
        for p in ps:
            check_gap(p, Fraction(1, 1000))
        assert wind_relations(genus, ps, Fraction(1, 1000)).ind_delta is not None


def test_theta_grid_counts():
    # phi(1) + ... + phi(4) = 1 + 1 + 2 + 2 reduced fractions in [0, 1)
    assert len(list(theta_grid(4, (0,)))) == 6
    assert len(list(theta_grid(4))) == 18


def test_harness_size():
    configs, excluded = single_orbit_configs()
    assert len(configs) == 22740 and excluded == 0


def test_aliases_resolve():
    assert set(ALIASES.values()) <= set(SUITES)


@pytest.mark.parametrize(
    "name,kw",
    [
        ("partition-oracle", {"max_m": 8, "max_den": 8}),
        ("duality", {"max_m": 10, "max_den": 10}),
        ("partition-facts", {"max_m": 10, "max_den": 10}),
        ("index", {"n_grid": 50, "n_triples": 50, "n_records": 200}),
        ("tsum", {"n_records": 200}),
        ("orbit-score-floor", {"max_den": 5, "max_cover": 5, "max_m0": 2}),
        ("telescoping", {"n_chains": 3, "n_negative": 3}),
        ("winding", {"n_configs": 300}),
    ],
)
def test_small_suites_pass(name, kw):
    res = run_suite(name, **kw)
    assert res.passed, res.failures
    assert res.checked > 0
