"""Acceptance suite: one criterion per test, each printing a PASS line.

The expensive sweeps reuse one session-scoped cache directory, so the
enumeration and per-graph work at each order happens once no matter how
many criteria consume it.  Set POLYMINOR_CACHE to persist it between
runs; order-12 tests carry the ``slow`` marker (roughly an hour of
enumeration on two cores).
"""

import os
import time

import pytest

from polyminor.catalog import FamilySpec, family_member, fixture, herschel, pattern
from polyminor.generation import enumerate_polyhedra
from polyminor.graphs import Graph, canonical_form, is_bipartite, parse_graph6, to_graph6
from polyminor.hamilton import BipartiteOddWitness, find_hamilton_cycle
from polyminor.minors import (
    brute_force_has_minor,
    find_minor_model,
    find_spanning_subgraph,
    serialize_minor_model,
    verify_minor_model,
)
from polyminor.pipelines import (
    check_family_theorem,
    check_theorem1,
    count_family_forty,
    cross_check_known,
    survey_order,
    tally_k26free,
)
from polyminor.records import cert_verify_record, write_report
from polyminor.structure import is_planar, is_polyhedral, vertex_connectivity

from oracles import count_polyhedra_by_filter, isomorph_free_graphs

# regression values frozen from full runs of this toolkit (jobs=2):
# class counts of polyhedra, their non-hamiltonian members, and the
# K26-minor-free subset of those, per order
FROZEN = {
    4: (1, 0, 0),
    5: (2, 0, 0),
    6: (7, 0, 0),
    7: (34, 0, 0),
    8: (257, 0, 0),
    9: (2606, 0, 0),
    10: (32300, 0, 0),
    11: (440564, 74, 32),
    12: None,  # pending: filled in from the completed order-12 sweep
}


def report(criterion: str, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS  {detail}", flush=True)


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    env = os.environ.get("POLYMINOR_CACHE")
    if env:
        os.makedirs(env, exist_ok=True)
        return env
    return str(tmp_path_factory.mktemp("acceptance-cache"))


@pytest.fixture(scope="session")
def jobs():
    return int(os.environ.get("POLYMINOR_JOBS", "2"))


def test_criterion_01_herschel_invariants():
    t0 = time.monotonic()
    h = herschel()
    assert h.n == 11 and h.size == 18
    bp = is_bipartite(h)
    assert bp is not None and sorted((len(bp.side_a), len(bp.side_b))) == [5, 6]
    assert is_planar(h)
    k, _ = vertex_connectivity(h)
    assert k == 3
    assert canonical_form(h).automorphism_count == 12
    verdict = find_hamilton_cycle(h)
    assert verdict.status == "non_hamiltonian"
    assert isinstance(verdict.witness, BipartiteOddWitness)
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    report("1", f"Herschel invariants checked in {elapsed:.3f}s")


@pytest.mark.parametrize("n,expected", [(4, 1), (5, None), (6, None), (7, None)])
def test_criterion_02_enumerator_vs_oracle(n, expected):
    oracle = count_polyhedra_by_filter(n)
    count = enumerate_polyhedra(n)
    assert count == oracle
    if expected is not None:
        assert count == expected
    report("2", f"n={n}: enumerator {count} == labeled-filter oracle {oracle}")


@pytest.mark.slow
def test_criterion_02_slow_tier_order_eight():
    from oracle_vectorized import count_polyhedra_vectorized

    oracle = count_polyhedra_vectorized(8)
    count = enumerate_polyhedra(8)
    assert count == oracle == 257
    report("2 (slow)", f"n=8: enumerator {count} == vectorized oracle {oracle}")


@pytest.mark.parametrize("n", range(4, 12))
def test_criterion_03_theorem1_through_eleven(n, cache_dir, jobs):
    rep, records = check_theorem1(n, cache_dir, jobs)
    assert rep.ok, rep.counterexamples[:3]
    totals = rep.totals[n]
    if n <= 10:
        assert totals["non_hamiltonian"] == 0
    assert (
        totals["polyhedra"],
        totals["non_hamiltonian"],
        totals["k26_free_non_hamiltonian"],
    ) == FROZEN[n]
    for r in records:
        assert r.minor_flags["herschel"] and "herschel" in r.certificates
    report("3", f"n={n}: zero counterexamples over {totals['polyhedra']} classes")


@pytest.mark.slow
def test_criterion_03_theorem1_at_twelve(cache_dir, jobs):
    rep, records = check_theorem1(12, cache_dir, jobs)
    assert rep.ok, rep.counterexamples[:3]
    totals = rep.totals[12]
    assert FROZEN[12] is not None, "order-12 regression values not frozen yet"
    assert (
        totals["polyhedra"],
        totals["non_hamiltonian"],
        totals["k26_free_non_hamiltonian"],
    ) == FROZEN[12]
    report("3 (slow)", f"n=12: zero counterexamples over {totals['polyhedra']} classes")


@pytest.mark.parametrize("n", [16, 17, 18])
def test_criterion_04_exactly_forty(n):
    t0 = time.monotonic()
    count, classes = count_family_forty(n)
    elapsed = time.monotonic() - t0
    assert count == 40
    assert len(set(classes)) == 40
    assert elapsed < 60.0
    report("4", f"n={n}: exactly 40 classes from 64 candidates in {elapsed:.1f}s")


@pytest.mark.parametrize("n", [11])
def test_criterion_05_family_theorem_through_eleven(n, cache_dir, jobs):
    rep, _ = check_family_theorem(n, cache_dir, jobs)
    assert rep.ok, rep.counterexamples[:3]
    report("5", f"n={n}: every K26-free non-hamiltonian class spans a family skeleton")


@pytest.mark.slow
def test_criterion_05_family_theorem_at_twelve(cache_dir, jobs):
    rep, _ = check_family_theorem(12, cache_dir, jobs)
    assert rep.ok, rep.counterexamples[:3]
    report("5 (slow)", "n=12: every K26-free non-hamiltonian class spans a family skeleton")


def test_criterion_06_minor_oracle_equivalence():
    t0 = time.monotonic()
    hosts = isomorph_free_graphs(6)
    k3 = Graph(3, [(0, 1), (0, 2), (1, 2)])
    k4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    patterns = [k3, k4, pattern("K22"), Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]), c5]
    pairs = 0
    for host in hosts:
        for pat in patterns:
            engine = find_minor_model(host, pat) is not None
            oracle = brute_force_has_minor(host, pat)
            assert engine == oracle, (host.edges(), pat.edges())
            pairs += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    report("6", f"{pairs} host/pattern pairs agree with the oracle in {elapsed:.1f}s")


@pytest.mark.parametrize("n", [11])
def test_criterion_07_cross_checks_eleven(n, cache_dir, jobs):
    rep, _ = cross_check_known(n, cache_dir, jobs)
    assert rep.ok, rep.counterexamples[:3]
    report("7", f"n={n}: K25, K115-except-Herschel, and 4-connected=>hamiltonian hold")


@pytest.mark.slow
def test_criterion_07_cross_checks_twelve(cache_dir, jobs):
    rep, _ = cross_check_known(12, cache_dir, jobs)
    assert rep.ok, rep.counterexamples[:3]
    report("7 (slow)", "n=12: all three cross-checks hold")


def test_criterion_08_family_self_validation():
    t0 = time.monotonic()
    k26 = pattern("K26")
    h = herschel()
    specs = [FamilySpec("bullet", n, m) for n in range(11, 21) for m in range(32)]
    specs += [FamilySpec("circ", n, m) for n in range(13, 21) for m in range(32)]
    specs += [FamilySpec("h13", 13, 0), FamilySpec("h15", 15, 0)]
    for spec in specs:
        g = family_member(spec)
        assert g.n == spec.n, spec
        assert is_polyhedral(g), spec
        assert find_hamilton_cycle(g).status == "non_hamiltonian", spec
        assert find_minor_model(g, k26) is None, spec
        assert find_minor_model(g, h) is not None, spec
    elapsed = time.monotonic() - t0
    assert elapsed < 300.0
    report("8", f"{len(specs)} family members validated in {elapsed:.1f}s")


def test_criterion_09_fixture_certificate():
    f = fixture("fig6_a")
    model = find_minor_model(f, pattern("K26"))
    assert model is not None
    assert verify_minor_model(f, pattern("K26"), model)
    text = serialize_minor_model(model)
    from polyminor.minors import parse_minor_model

    assert verify_minor_model(f, pattern("K26"), parse_minor_model(text))
    report("9", "fig6_a carries a verifiable K26 certificate")


def test_criterion_10_tally_through_eleven(cache_dir, jobs):
    rep, per_n = tally_k26free(11, cache_dir, jobs)
    expected = {n: FROZEN[n][2] for n in range(4, 12)}
    assert per_n == expected
    cumulative = 0
    for n in sorted(per_n):
        assert per_n[n] >= 0
        cumulative += per_n[n]
        assert cumulative <= 206
    report("10", f"per-order tallies frozen; cumulative through 11 is {cumulative} <= 206")


@pytest.mark.slow
def test_criterion_10_tally_through_twelve(cache_dir, jobs):
    assert FROZEN[12] is not None, "order-12 regression values not frozen yet"
    rep, per_n = tally_k26free(12, cache_dir, jobs)
    expected = {n: FROZEN[n][2] for n in range(4, 13)}
    assert per_n == expected
    cumulative = sum(per_n.values())
    assert cumulative <= 206
    report("10 (slow)", f"cumulative through 12 is {cumulative} <= 206")


def test_criterion_11_determinism_and_certificates(cache_dir, jobs, tmp_path):
    rep1, recs1 = check_theorem1(7, str(tmp_path / "j1"), jobs=1)
    rep2, recs2 = check_theorem1(7, str(tmp_path / "j2"), jobs=2)
    p1, p2 = tmp_path / "r1.jsonl", tmp_path / "r2.jsonl"
    write_report(rep1, recs1, p1)
    write_report(rep2, recs2, p2)
    assert p1.read_bytes() == p2.read_bytes()
    # every certificate emitted by the surveyed orders re-verifies
    checked = 0
    for n in range(4, 12):
        _, records = survey_order(n, cache_dir, jobs)
        for rec in records:
            assert cert_verify_record(rec), rec.graph6
            checked += 1
    report("11", f"byte-identical reports across worker counts; {checked} records re-verified")
