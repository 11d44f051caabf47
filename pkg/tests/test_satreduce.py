import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdom.graphcore import CapExceeded, FormatError, parse_graph, format_graph
from kdom.satreduce import (
    CnfFormula,
    ReducibilityError,
    build_gadget,
    certify_biconditional,
    check_reducibility,
    format_dimacs,
    format_roles,
    gadget_underlying,
    parse_dimacs,
    parse_roles,
    random_reducible_formula,
    satisfying_assignment,
)
from kdom.solvers import gamma_k, is_k_dominating


def first_unsatisfiable_reducible(limit=500):
    for seed in range(limit):
        f = random_reducible_formula(6, 8, seed)
        if satisfying_assignment(f) is None:
            return f
    raise AssertionError("no unsatisfiable instance found")


@st.composite
def formulas(draw, max_vars=7, max_clauses=6):
    s = draw(st.integers(3, max_vars))
    clause = st.lists(st.integers(1, s), min_size=3, max_size=3, unique=True).flatmap(
        lambda vs: st.tuples(*[st.sampled_from((v, -v)) for v in vs])
    )
    return CnfFormula(s, tuple(draw(st.lists(clause, max_size=max_clauses))))


def test_parse_dimacs_examples():
    f = parse_dimacs("c example\np cnf 3 1\n1 -2 3 0\n")
    assert f.num_vars == 3 and f.clauses == ((1, -2, 3),)
    with pytest.raises(FormatError):
        parse_dimacs("p cnf 3 1\n1 1 2 0\n")
    empty = parse_dimacs("p cnf 4 0\n")
    assert empty.clauses == () and satisfying_assignment(empty) == (False,) * 4


def test_parse_dimacs_errors():
    for bad in (
        "1 2 3 0\n",
        "p cnf 3\n",
        "p sat 3 1\n1 2 3 0\n",
        "p cnf 3 1\n1 2 4 0\n",
        "p cnf 3 1\n1 2 0\n",
        "p cnf 4 1\n1 2 3 4 0\n",
        "p cnf 3 2\n1 2 3 0\n",
        "p cnf 3 1\n1 2 3\n",
        "p cnf 3 1\n1 x 3 0\n",
    ):
        with pytest.raises(FormatError):
            parse_dimacs(bad)


def test_dimacs_clauses_may_span_lines():
    assert parse_dimacs("p cnf 3 1\n1\n-2 3\n0\n").clauses == ((1, -2, 3),)


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_dimacs_round_trip(f):
    assert parse_dimacs(format_dimacs(f)) == f


def test_formula_validation():
    with pytest.raises(ValueError):
        CnfFormula(3, ((1, 2),))
    with pytest.raises(ValueError):
        CnfFormula(3, ((1, -1, 2),))
    with pytest.raises(ValueError):
        CnfFormula(2, ((1, 2, 3),))


def test_reducibility_examples():
    assert not check_reducibility(CnfFormula(3, ((1, 2, 3),)))
    assert not check_reducibility(CnfFormula(3, ()))
    assert check_reducibility(CnfFormula(2, ()))
    # two disjoint clauses on six variables leave {x1, x2, x4} meeting both
    assert not check_reducibility(CnfFormula(6, ((1, 2, 3), (4, 5, 6))))
    every_triple = tuple(itertools.combinations(range(1, 7), 3))
    assert check_reducibility(CnfFormula(6, every_triple))


def test_small_formulas_are_never_reducible_once_they_have_clauses():
    for s in range(3, 6):
        triples = list(itertools.combinations(range(1, s + 1), 3))
        for ell in range(1, 4):
            for combo in itertools.combinations_with_replacement(triples, ell):
                assert not check_reducibility(CnfFormula(s, combo))


@pytest.mark.parametrize("seed", range(10))
def test_random_reducible_formulas(seed):
    f = random_reducible_formula(6 + seed % 2, seed % 5, seed)
    assert check_reducibility(f)


def test_satisfying_assignment_is_correct():
    f = CnfFormula(3, ((1, 2, 3), (-1, -2, -3), (1, -2, 3)))
    a = satisfying_assignment(f)
    assert all(any(a[abs(x) - 1] == (x > 0) for x in c) for c in f.clauses)
    all_clauses = tuple(
        tuple(v * sign for v, sign in zip((1, 2, 3), signs)) for signs in itertools.product((1, -1), repeat=3)
    )
    assert satisfying_assignment(CnfFormula(3, all_clauses)) is None


def test_gadget_order_and_roles():
    f = CnfFormula(4, ((1, 2, 3), (-1, 2, 4), (2, -3, -4), (1, 3, 4), (-1, -2, -3)))
    with pytest.raises(ReducibilityError):
        build_gadget(f, 3)
    gg = build_gadget(f, 3, check=False)
    assert gg.graph.n == 3 * 4 + 5 + 3 + 1 == 21
    assert gg.roles[:3] == ("x1^t", "x1^f", "v1")
    assert gg.roles[-5:] == ("c5", "c*", "v5", "v0^1", "v0^2")
    assert parse_roles(format_roles(gg)) == dict(enumerate(gg.roles))
    with pytest.raises(FormatError):
        parse_roles("rol 1 x\n")


@settings(max_examples=60, deadline=None)
@given(formulas(), st.integers(2, 4))
def test_gadget_structure(f, k):
    gg = build_gadget(f, k, check=False)
    g, s, ell = gg.graph, f.num_vars, len(f.clauses)
    assert g.n == 3 * s + ell + k + 1
    v_set = {gg.v(i) for i in range(1, s + 2)}
    for h in gg.hubs:
        assert g.degree(h) == 2 * s + ell + 1
        assert all(not g.has_edge(h, v) for v in v_set)
        assert all(not g.has_edge(h, other) for other in gg.hubs if other != h)
    for j, clause in enumerate(f.clauses, start=1):
        lits = {gg.x_true(x) if x > 0 else gg.x_false(-x) for x in clause}
        assert {u for u in range(g.n) if g.has_edge(u, gg.c(j))} == lits | {gg.v(s + 1)} | set(gg.hubs)
    assert is_k_dominating(g, gg.k_dominating_core, k)
    underlying = gadget_underlying(gg)
    hubs = {sorted(gg.k_dominating_core).index(h) for h in gg.hubs}
    assert underlying.is_uniform(k)
    for a, b in itertools.combinations(underlying.edges, 2):
        assert a & b == hubs


def test_gadget_gamma_k_on_sampled_instances():
    for seed in range(4):
        f = random_reducible_formula(6, seed, seed)
        for k in (2, 3):
            assert gamma_k(build_gadget(f, k).graph, k).value == k + 6


def test_certify_satisfiable_instance():
    f = next(f for f in (random_reducible_formula(6, 0, s) for s in range(50)) if satisfying_assignment(f))
    for k in (2, 3):
        cert = certify_biconditional(f, k)
        assert cert.satisfiable and cert.gap_holds
        assert cert.gamma == f.num_vars + 1 < cert.gamma_k - k + 2
        assert len(cert.dominating_from_assignment) == f.num_vars + 1


def test_certify_unsatisfiable_instance():
    f = first_unsatisfiable_reducible()
    for k in (2, 3):
        cert = certify_biconditional(f, k)
        assert not cert.satisfiable and not cert.gap_holds
        assert cert.gamma >= cert.gamma_k - k + 2
        assert cert.dominating_from_assignment is None


def test_certify_respects_cap():
    f = random_reducible_formula(6, 0, 0)
    with pytest.raises(CapExceeded):
        certify_biconditional(f, 3, n_max=20)


def test_gadget_graph_round_trips_through_text():
    gg = build_gadget(random_reducible_formula(6, 1, 3), 2)
    assert parse_graph(format_graph(gg.graph)) == gg.graph
