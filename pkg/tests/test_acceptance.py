"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run directly with ``python3 -m tests.test_acceptance``.
"""

import sys

import pytest

from echkit.verify import run_suite

from .acceptance_log import record


def _run(criterion, suites, budget=None, extra=lambda rs: (True, "")):
    results = [run_suite(name, **kw) for name, kw in suites]
    secs = sum(r.seconds for r in results)
    ok_extra, note = extra(results)
    ok = all(r.passed for r in results) and ok_extra and (budget is None or secs < budget)
    checked = sum(r.checked for r in results)
    bad = sum(r.n_failures for r in results)
    detail = f"{checked} checks, {bad} failures, {secs:.1f}s" + (f", {note}" if note else "")
    record(criterion, ok, detail)
    examples = [f for r in results for f in r.failures]
    assert ok, examples or detail


def test_partition_identities():
    _run("partition identities against the oracle and closed forms", [("partition-oracle", {})], budget=30)


def test_partition_duality():
    _run("negative partition equals positive partition at -theta", [("duality", {"max_m": 40, "max_den": 40})])


def test_partition_facts():
    _run("ones, disjointness and short-partition facts", [("partition-facts", {"max_m": 30, "max_den": 30})], budget=60)


def test_index_consistency():
    _run("weighted CZ, index ambiguity linearity and J0 identity", [("index", {})])


def test_score_sums():
    _run("T and T' sum identities", [("tsum", {})])


def test_single_orbit_bounds():
    suites = [(n, {}) for n in ("orbit-score-floor", "high-positive-end", "high-negative-end", "orbit-score-prime-floor")]
    _run("single-orbit score bounds on the exhaustive harness", suites, budget=300)


def test_chain_audit():
    def planted(rs):
        n = {k: v for k, v in rs[0].notes.items() if k.startswith("planted")}
        return sum(n.values()) == 100, f"planted detected {sum(n.values())}/100"

    _run("chain telescoping and planted violations", [("telescoping", {})], extra=planted)


def test_constants():
    _run("minimal q and monotonicity of the constants", [("constants", {})], budget=60)


def test_winding_bound():
    def qualifying(rs):
        q = rs[0].notes["qualifying"]
        return q > 0, f"{q} genus-0 index-2 cases"

    _run("winding bound and its genus-0 index-2 case", [("winding", {})], extra=qualifying)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
