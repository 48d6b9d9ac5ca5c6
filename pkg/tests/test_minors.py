"""Minor engine: models, certificates, the oracle, rooted and spanning search."""

import pytest
from hypothesis import given, settings, strategies as st

from polyminor.catalog import FamilySpec, family_member, fixture, herschel, pattern
from polyminor.graphs import Graph
from polyminor.minors import (
    MinorModel,
    brute_force_has_minor,
    find_minor_model,
    find_rooted_k22,
    find_spanning_subgraph,
    parse_minor_model,
    serialize_minor_model,
    verify_minor_model,
)
from polyminor.structure import is_planar

from oracles import isomorph_free_graphs


def cycle_graph(k):
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete(k):
    return Graph(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


@st.composite
def random_graph(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picks = draw(st.lists(st.sampled_from(pairs), unique=True))
    return Graph(n, picks)


class TestFindMinorModel:
    def test_herschel_contains_k25(self):
        m = find_minor_model(herschel(), pattern("K25"))
        assert m is not None
        assert verify_minor_model(herschel(), pattern("K25"), m)

    def test_herschel_has_no_k26(self):
        assert find_minor_model(herschel(), pattern("K26")) is None

    def test_herschel_has_no_k115(self):
        assert find_minor_model(herschel(), pattern("K115")) is None

    def test_identity_model(self):
        h = herschel()
        m = find_minor_model(h, h)
        assert m is not None
        assert all(len(bs) == 1 for bs in m.branch_sets)

    def test_fig6_fixture_contains_k26(self):
        f = fixture("fig6_a")
        m = find_minor_model(f, pattern("K26"))
        assert m is not None
        assert verify_minor_model(f, pattern("K26"), m)

    def test_cycle_contracts_to_triangle(self):
        assert find_minor_model(cycle_graph(6), complete(3)) is not None

    @given(random_graph(min_n=2, max_n=6), random_graph(min_n=1, max_n=5))
    @settings(max_examples=250, deadline=None)
    def test_oracle_equivalence_random(self, host, pat):
        engine = find_minor_model(host, pat)
        assert (engine is not None) == brute_force_has_minor(host, pat)
        if engine is not None:
            assert verify_minor_model(host, pat, engine)

    @given(random_graph(min_n=3, max_n=6), random_graph(min_n=2, max_n=4))
    @settings(max_examples=60, deadline=None)
    def test_monotone_under_edge_addition(self, host, pat):
        if find_minor_model(host, pat) is None:
            return
        missing = [
            (u, v)
            for u in range(host.n)
            for v in range(u + 1, host.n)
            if not host.has_edge(u, v)
        ]
        for e in missing[:3]:
            assert find_minor_model(host.add_edge(*e), pat) is not None

    def test_wagner_consistency_on_corpus(self):
        k5, k33 = pattern("K5"), pattern("K33")
        corpus = [g for g in isomorph_free_graphs(6) if g.n >= 5]
        corpus += [herschel(), fixture("fig6_a"), pattern("Cube"), pattern("Qplus")]
        for g in corpus:
            minor_free = (
                find_minor_model(g, k5) is None
                and (g.n < 6 or find_minor_model(g, k33) is None)
            )
            assert minor_free == is_planar(g)


class TestVerifyMinorModel:
    def test_valid_identity_on_k4(self):
        k4 = complete(4)
        m = MinorModel(
            tuple((v,) for v in range(4)),
            {e: e for e in k4.edges()},
        )
        assert verify_minor_model(k4, k4, m)

    def test_overlapping_branch_sets_rejected(self):
        k4 = complete(4)
        m = MinorModel(
            ((0,), (0,), (2,), (3,)),
            {e: e for e in k4.edges()},
        )
        assert not verify_minor_model(k4, k4, m)

    def test_disconnected_branch_set_rejected(self):
        host = cycle_graph(5)
        pat = complete(2)
        m = MinorModel(((0, 2), (1,)), {(0, 1): (0, 1)})
        assert not verify_minor_model(host, pat, m)

    def test_wrong_edge_witness_rejected(self):
        host = cycle_graph(4)
        pat = Graph(2, [(0, 1)])
        m = MinorModel(((0,), (2,)), {(0, 1): (0, 2)})
        assert not verify_minor_model(host, pat, m)

    def test_serialization_round_trip(self):
        m = find_minor_model(herschel(), pattern("K25"))
        text = serialize_minor_model(m)
        back = parse_minor_model(text)
        assert back.branch_sets == m.branch_sets
        assert back.edge_witnesses == m.edge_witnesses
        assert verify_minor_model(herschel(), pattern("K25"), back)


class TestBruteForce:
    def test_subgraph_case(self):
        assert brute_force_has_minor(complete(4), complete(3))

    def test_cycle_case(self):
        assert brute_force_has_minor(cycle_graph(6), complete(3))

    def test_tree_has_no_cycle_minor(self):
        tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
        assert not brute_force_has_minor(tree, complete(3))

    def test_host_guard(self):
        with pytest.raises(ValueError):
            brute_force_has_minor(Graph(10), Graph(1))


class TestRootedK22:
    def test_c4_rooted_at_color_class(self):
        c4 = cycle_graph(4)
        m = find_rooted_k22(c4, 0, 2)
        assert m is not None
        assert 0 in m.branch_sets[0] and 2 in m.branch_sets[1]
        assert verify_minor_model(c4, pattern("K22"), m)

    def test_path_rooted_at_endpoints(self):
        p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert find_rooted_k22(p4, 0, 3) is None

    def test_k4_any_pair(self):
        k4 = complete(4)
        for x in range(4):
            for y in range(x + 1, 4):
                assert find_rooted_k22(k4, x, y) is not None

    def test_equal_roots_rejected(self):
        with pytest.raises(ValueError):
            find_rooted_k22(cycle_graph(4), 1, 1)

    @given(random_graph(min_n=4, max_n=6))
    @settings(max_examples=60, deadline=None)
    def test_rooted_implies_unrooted(self, g):
        m = find_rooted_k22(g, 0, 1)
        if m is not None:
            assert verify_minor_model(g, pattern("K22"), m)
            assert brute_force_has_minor(g, pattern("K22"))


class TestSpanningSubgraph:
    def test_identity(self):
        h = herschel()
        assert find_spanning_subgraph(h, h) is not None

    def test_skeleton_inside_dashed_member(self):
        for mask in (0, 7, 31):
            g = family_member(FamilySpec("bullet", 13, mask))
            skel = family_member(FamilySpec("bullet", 13, 0))
            mapping = find_spanning_subgraph(g, skel)
            assert mapping is not None
            for u, v in skel.edges():
                assert g.has_edge(mapping[u], mapping[v])

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError):
            find_spanning_subgraph(pattern("Cube"), herschel())

    def test_absent_embedding(self):
        # the 11-vertex wheel has a degree-10 hub; Herschel peaks at 4
        w11 = pattern("W11")
        assert find_spanning_subgraph(herschel(), w11) is None
