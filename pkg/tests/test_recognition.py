import random

import pytest

from kdom.families import (
    BkParams,
    SkShape,
    build_Fk_example,
    build_Sk,
    complete_bipartite,
    complete_uniform_hypergraph,
    cycle_graph,
    double_incidence_graph,
    random_bk_recipe,
    build_Bk_member,
    random_connected_bipartite_Bk,
    random_connected_uniform_hypergraph,
    random_uniform_hypergraph,
)
from kdom.graphcore import Graph, Hypergraph, lexicographic_blowup, mask_of
from kdom.recognition import (
    K_UNSUPPORTED,
    RecognitionError,
    canonical_form,
    enumerate_Hk,
    extract_underlying,
    gamma_k_simplified,
    is_gamma_gamma3_perfect,
    is_gamma_gamma_k_graph_bipartite,
    is_Hk_free,
    match_Sk,
    membership_Bk,
    parse_dump,
    satisfies_star_property,
    tc_is_extremal,
)
from kdom.solvers import edge_cover_number, gamma_k, tc_number, weak_independence_number
from kdom.verify import SuiteResult, check_recognition_instance, random_bipartite_instance

BOWTIE = Hypergraph(5, [[0, 1, 2], [2, 3, 4]])


# --- extraction and membership --------------------------------------------------------


def test_extract_round_trips_double_incidence_graph():
    for seed in range(40):
        f = random_connected_uniform_hypergraph(3 + seed % 5, 3, seed % 4, seed)
        g = double_incidence_graph(f, 3)
        ex = extract_underlying(g, range(f.n), 3)
        assert ex and ex.hypergraph == f
        assert ex.hypergraph.edges == f.edges  # same edge order as well
        assert ex.y == ()


def test_extract_recovers_recipe_hypergraph():
    for seed in range(60):
        k = 3 + seed % 2
        recipe = random_bk_recipe(k, BkParams(max_order=6), seed)
        member = build_Bk_member(recipe, k)
        ex = extract_underlying(member.graph, member.d, k)
        assert ex and ex.hypergraph == recipe.f
        # an attachment of size exactly k is indistinguishable from an edge witness
        larger = [y for y, att in zip(member.y, recipe.y_attachments) if len(att) > k]
        assert sorted(ex.y) == larger


def test_extract_complete_bipartite():
    ex = extract_underlying(complete_bipartite(3, 4), [0, 1, 2], 3)
    assert ex.hypergraph.sorted_edges() == [(0, 1, 2)]
    assert ex.witnesses == ((3, 4, 5, 6),)


def test_extract_failure_codes():
    assert extract_underlying(cycle_graph(4), [0, 1], 2).failure[0] == "d-not-independent"
    assert extract_underlying(complete_bipartite(3, 1), [0, 1, 2], 3).failure[0] == "unshared-neighbourhood"
    assert extract_underlying(complete_bipartite(2, 3), [0, 1], 3).failure[0] == "neighbourhood-too-small"
    two_edges = Graph.from_edges(10, [(v, x) for x, e in ((6, (0, 1, 2)), (7, (0, 1, 2)), (8, (3, 4, 5)), (9, (3, 4, 5))) for v in e])
    assert extract_underlying(two_edges, range(6), 3).failure[0] == "F-disconnected"


def test_membership_examples():
    report = membership_Bk(build_Sk(SkShape(3, (3, 3, 4))), 3)
    assert report
    edges = [frozenset(report.d_order[v] for v in e) for e in report.underlying.edges]
    assert len(edges) == 3
    assert all(e >= {0, 1} for e in edges)  # every edge holds the centre and its twin
    assert not membership_Bk(cycle_graph(6), 3)
    k33 = membership_Bk(complete_bipartite(3, 3), 3)
    assert k33 and k33.underlying.m == 1


def test_gamma_k_simplified_examples():
    assert gamma_k_simplified(complete_bipartite(3, 5), 3) == complete_bipartite(3, 2)
    for seed in range(40):
        member = random_connected_bipartite_Bk(3, seed=seed)
        assert gamma_k_simplified(member.graph, 3) == double_incidence_graph(member.recipe.f, 3)
    with pytest.raises(RecognitionError):
        gamma_k_simplified(cycle_graph(6), 3)


# --- TC-extremality and H_3 ---------------------------------------------------------------


def test_tc_is_extremal_examples():
    for n in range(3, 8):
        assert tc_is_extremal(complete_uniform_hypergraph(n, 3), 3)[0]
    ok, cert = tc_is_extremal(Hypergraph(6, [[0, 1, 2], [3, 4, 5]]), 3)
    assert not ok
    assert len(cert.edges) == 2 and len(cert.independent) > cert.bound == 3
    assert tc_is_extremal(build_Fk_example(4), 4)[0]
    assert tc_number(build_Fk_example(4)).value == 5 - 4 + 2
    with pytest.raises(RecognitionError):
        tc_is_extremal(Hypergraph(4, [[0, 1, 2], [0, 1, 2, 3]]), 3)


def test_tc_is_extremal_matches_exact_value():
    for seed in range(150):
        n = 3 + seed % 6
        f = random_uniform_hypergraph(n, 3, 1 + seed % min(8, n * (n - 1) * (n - 2) // 6), seed)
        assert tc_is_extremal(f, 3)[0] == (tc_number(f).value == n - 1)


def test_star_property_examples():
    assert satisfies_star_property(complete_uniform_hypergraph(4, 3)) == (True, None)
    ok, cert = satisfies_star_property(BOWTIE)
    assert not ok
    assert {*cert[0], *cert[1]} == {0, 1, 3, 4}


def test_canonical_form_is_label_invariant():
    rng = random.Random(3)
    for seed in range(30):
        f = random_uniform_hypergraph(6, 3, 1 + seed % 8, seed)
        perm = list(range(6))
        rng.shuffle(perm)
        g = Hypergraph(6, [[perm[v] for v in e] for e in f.edges])
        assert canonical_form(f, 3) == canonical_form(g, 3)


def test_enumerate_hk_members_satisfy_definition():
    members = enumerate_Hk(3)
    assert members
    assert len({canonical_form(h, 3) for h in members}) == len(members)
    for h in members:
        rho = edge_cover_number(h).value
        assert h.n <= 6
        assert h.covered == h.vertices
        assert rho <= 2
        assert weak_independence_number(h).value >= rho + 2


def test_enumerate_hk_rejects_other_k():
    with pytest.raises(RecognitionError) as info:
        enumerate_Hk(4)
    assert info.value.code == K_UNSUPPORTED


def test_hk_freeness_matches_extremality():
    for seed in range(120):
        n = 3 + seed % 6
        f = random_uniform_hypergraph(n, 3, 1 + seed % min(10, n * (n - 1) * (n - 2) // 6), seed)
        free, where = is_Hk_free(f, 3)
        assert free == tc_is_extremal(f, 3)[0] == satisfies_star_property(f)[0]
        if not free:
            sub, _ = f.induced(sorted(where))
            assert not tc_is_extremal(sub, 3)[0]


# --- the recognizer -------------------------------------------------------------------------


def test_recognizer_examples():
    report = is_gamma_gamma_k_graph_bipartite(build_Sk(SkShape(3, (3, 3, 4))), 3)
    assert report.verdict == "yes"
    assert report.d_class == frozenset({0, 1, 2, 3, 4})
    no = is_gamma_gamma_k_graph_bipartite(double_incidence_graph(BOWTIE, 3), 3)
    assert no.verdict == "no" and no.reason == "tc-not-extremal"
    g = double_incidence_graph(BOWTIE, 3)
    assert gamma_k(g, 3).value != gamma_k(g, 1).value + 1
    assert is_gamma_gamma_k_graph_bipartite(cycle_graph(5), 3).reason == "not-bipartite"
    assert is_gamma_gamma_k_graph_bipartite(cycle_graph(6), 3).reason == "max-degree"


def test_recognizer_rejects_k2():
    with pytest.raises(RecognitionError) as info:
        is_gamma_gamma_k_graph_bipartite(complete_bipartite(3, 3), 2)
    assert info.value.code == K_UNSUPPORTED


def test_recognizer_disconnected_inputs():
    k33 = complete_bipartite(3, 3)
    with_isolated = Graph.from_edges(8, k33.edges())
    report = is_gamma_gamma_k_graph_bipartite(with_isolated, 3)
    assert report and report.d_class == frozenset({0, 1, 2})
    two = Graph.from_edges(12, k33.edges() + [(u + 6, v + 6) for u, v in k33.edges()])
    assert is_gamma_gamma_k_graph_bipartite(two, 3).reason == "components"


def test_yes_reports_are_consistent():
    for seed in range(40):
        g = random_connected_bipartite_Bk(3, BkParams(max_order=5), seed=seed).graph
        report = is_gamma_gamma_k_graph_bipartite(g, 3)
        if report:
            assert report.d_class is not None and report.underlying is not None
            assert frozenset(report.d_order) == report.d_class
            for e in report.underlying.edges:
                members = mask_of(report.d_order[v] for v in e)
                assert any(g.adj[x] == members for x in range(g.n))
            dump = parse_dump(report.to_dump())
            assert dump["verdict"] == "yes"
            assert dump["d_class"] == ",".join(map(str, sorted(report.d_class)))


def test_recognizer_against_oracle():
    rng = random.Random(2024)
    res = SuiteResult("oracle")
    for _ in range(150):
        check_recognition_instance(res, random_bipartite_instance(rng, 6, 12))
    assert res.passed, res.summary()


# --- perfectness ----------------------------------------------------------------------------


def test_perfect3_examples():
    assert is_gamma_gamma3_perfect(build_Sk(SkShape(3, (4, 3)))) == SkShape(3, (3, 4))
    assert is_gamma_gamma3_perfect(complete_bipartite(3, 3)) == SkShape(3, (3,))
    assert is_gamma_gamma3_perfect(lexicographic_blowup(cycle_graph(6), 2)) is None
    assert is_gamma_gamma3_perfect(cycle_graph(6)) is None


def test_match_sk_round_trips_relabelled_graphs():
    rng = random.Random(5)
    for k in (2, 3, 4):
        for sizes in [(k,), (k, k + 1), (k + 2, k, k + 1)]:
            g = build_Sk(SkShape(k, sizes))
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
            assert match_Sk(h, k) == SkShape(k, tuple(sorted(sizes)))
