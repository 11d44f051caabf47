"""Acceptance criteria 1-10, each at its stated size and time budget.

Every test prints one ``criterion N: PASS|FAIL ...`` line; the lines are also
repeated in the pytest terminal summary.
"""

import itertools
import math
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from kdom.families import (
    BkParams,
    SkShape,
    build_Fk_example,
    build_Sk,
    complete_uniform_hypergraph,
    cycle_graph,
    double_incidence_graph,
    random_connected_bipartite_Bk,
    random_graph,
    random_uniform_hypergraph,
    two_k23_bridge,
)
from kdom.graphcore import graph_square_induced, is_bipartite, lexicographic_blowup
from kdom.recognition import (
    K_UNSUPPORTED,
    RecognitionError,
    enumerate_Hk,
    is_gamma_gamma3_perfect,
    is_gamma_gamma_k_graph_bipartite,
    match_Sk,
)
from kdom.solvers import (
    edge_cover_number,
    gamma,
    gamma_k,
    is_threshold,
    tc_number,
    transversal_number,
    weak_independence_number,
)
from kdom.verify import (
    SuiteConfig,
    SuiteResult,
    check_bounds_instance,
    check_perfect_shape,
    check_recognition_instance,
    check_simplify_instance,
    check_tc_instance,
    random_bipartite_instance,
    suite_sat,
)

pytestmark = pytest.mark.acceptance


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def failures(res: SuiteResult) -> int:
    return sum(pc.failed for pc in res.properties.values())


def counts(res: SuiteResult) -> str:
    return ", ".join(f"{name}={pc.checked - pc.failed}/{pc.checked}" for name, pc in res.properties.items())


# --- 1 -------------------------------------------------------------------------------------


def test_criterion_1_complete_uniform_closed_forms():
    start = time.perf_counter()
    bad = []
    checked = 0
    for n in range(2, 10):
        for k in range(2, n + 1):
            h = complete_uniform_hypergraph(n, k)
            got = (
                transversal_number(h).value,
                weak_independence_number(h).value,
                edge_cover_number(h).value,
                tc_number(h).value,
            )
            want = (n - k + 1, k - 1, math.ceil(n / k), n - k + 2)
            checked += 1
            if got != want:
                bad.append((n, k, got, want))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    report(1, ok, f"{checked} (n,k) pairs, {len(bad)} mismatches, {elapsed:.2f}s (< 10s)")
    assert not bad, bad[:3]
    assert elapsed < 10


# --- 2 -------------------------------------------------------------------------------------


def criterion_2_shapes():
    for k in (2, 3, 4):
        for r in (1, 2, 3):
            for sizes in itertools.product(range(k, k + 3), repeat=r):
                yield SkShape(k, sizes)


def test_criterion_2_sk_family():
    start = time.perf_counter()
    bad = []
    shapes = list(criterion_2_shapes())
    for shape in shapes:
        g = build_Sk(shape)
        got = (gamma_k(g, shape.k).value, gamma(g).value)
        if got != (shape.r + shape.k - 1, shape.r + 1):
            bad.append((str(shape), got))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    report(2, ok, f"{len(shapes)} shapes, {len(bad)} mismatches, {elapsed:.2f}s (< 30s)")
    assert not bad, bad[:3]
    assert elapsed < 30


# --- 3 and 9 share the bipartite sweep ------------------------------------------------------


@pytest.fixture(scope="module")
def bipartite_sweep():
    rng = random.Random(20240603)
    res = SuiteResult("recognition-oracle")
    yes_instances = []
    sizes = []
    start = time.perf_counter()
    for _ in range(2000):
        g = random_bipartite_instance(rng, 6, 13)
        sizes.append(g.n)
        verdict, oracle = check_recognition_instance(res, g)
        if verdict and oracle:
            yes_instances.append((g, verdict.d_class))
    return res, yes_instances, sizes, time.perf_counter() - start


def test_criterion_3_recognizer_oracle_equivalence(bipartite_sweep):
    res, yes_instances, sizes, elapsed = bipartite_sweep
    disagreements = res.properties["oracle-agreement"].failed
    total = res.properties["oracle-agreement"].checked
    ok = disagreements == 0 and total >= 2000 and elapsed < 300
    report(
        3,
        ok,
        f"{total} connected bipartite graphs (n {min(sizes)}..{max(sizes)}), {len(yes_instances)} yes, "
        f"{disagreements} disagreements, {elapsed:.1f}s (< 300s)",
    )
    assert disagreements == 0, res.properties["oracle-agreement"].counterexample
    assert total >= 2000 and min(sizes) >= 6 and max(sizes) <= 13
    assert elapsed < 300


def test_criterion_9_threshold_square(bipartite_sweep):
    _, yes_instances, _, _ = bipartite_sweep
    bad = [g for g, d in yes_instances if not is_threshold(graph_square_induced(g, d))]
    ok = not bad and len(yes_instances) > 0
    report(9, ok, f"{len(yes_instances)} bipartite (gamma,gamma_3)-graphs, {len(bad)} non-threshold G^2[D]")
    assert yes_instances
    assert not bad


# --- 4 -------------------------------------------------------------------------------------


def test_criterion_4_simplification_equivalence():
    rng = random.Random(4)
    res = SuiteResult("simplify-equiv")
    params = BkParams(min_order=3, max_order=6, max_extra_edges=3)
    for _ in range(300):
        member = random_connected_bipartite_Bk(3, params, seed=rng.getrandbits(32))
        check_simplify_instance(res, member.graph)
    pc = res.properties["equality-preserved"]
    report(4, pc.failed == 0 and pc.checked >= 300, f"{pc.checked} B_3 members, {pc.failed} violations")
    assert pc.checked >= 300
    assert pc.failed == 0, pc.counterexample


# --- 5 -------------------------------------------------------------------------------------


def test_criterion_5_tc_extremality_equivalence():
    enumerate_Hk(3)  # build the forbidden family once
    rng = random.Random(5)
    res = SuiteResult("tc-extremal")
    extremal = 0
    for _ in range(500):
        n = rng.randint(3, 8)
        m = rng.randint(1, min(14, math.comb(n, 3)))
        f = random_uniform_hypergraph(n, 3, m, seed=rng.getrandbits(32))
        check_tc_instance(res, f, 3)
        extremal += tc_number(f).value == n - 1
    total = res.properties["extremal-vs-exact"].checked
    ok = failures(res) == 0 and total >= 500
    report(5, ok, f"{total} 3-uniform hypergraphs ({extremal} extremal), {counts(res)}")
    assert total >= 500
    assert failures(res) == 0, res.summary()


# --- 6 -------------------------------------------------------------------------------------


def test_criterion_6_lower_bound_and_witness_structure():
    rng = random.Random(6)
    res = SuiteResult("bounds")
    params = BkParams(min_order=3, max_order=5, max_extra_edges=2, max_twins=1, max_y=1)
    done = equal = 0
    while done < 1000:
        k = rng.choice((2, 3, 4))
        if k >= 3 and rng.random() < 0.4:
            g = random_connected_bipartite_Bk(k, params, seed=rng.getrandbits(32)).graph
            if g.n > 14:
                continue
        else:
            g = random_graph(rng.randint(k + 1, 14), rng.uniform(0.2, 0.8), seed=rng.getrandbits(32))
        if g.max_degree < k:
            continue
        equal += check_bounds_instance(res, g, k, witness_n_max=14)
        done += 1
    witnesses = res.properties["witness-max-degree"].checked
    ok = failures(res) == 0 and done >= 1000 and witnesses > 0
    report(6, ok, f"{done} graphs, {equal} at equality, {witnesses} minimum witnesses checked, {counts(res)}")
    assert witnesses > 0
    assert failures(res) == 0, res.summary()


# --- 7 -------------------------------------------------------------------------------------


def test_criterion_7_perfectness():
    res = SuiteResult("perfect3")
    for shape in criterion_2_shapes():
        g = build_Sk(shape)
        if shape.k == 3:
            check_perfect_shape(res, shape, subgraph_n_max=0)
        else:
            res.check("not-S3", is_gamma_gamma3_perfect(g) is None, str(shape))
            res.check("round-trip", match_Sk(g, shape.k) == shape.canonical(), str(shape))
    rng = random.Random(7)
    sampled = [s for s in criterion_2_shapes() if s.k == 3 and s.order <= 13]
    for shape in rng.sample(sampled, 6) + [SkShape(3, (3, 3))]:
        check_perfect_shape(res, shape, subgraph_n_max=13)

    c6 = lexicographic_blowup(cycle_graph(6), 2)
    g4, g1 = gamma_k(c6, 4).value, gamma(c6).value
    res.check("C6-blowup-values", (g4, g1) == (6, 4), f"gamma_4={g4} gamma={g1}")
    res.check("C6-blowup-not-Sk", match_Sk(c6, 4) is None and is_gamma_gamma3_perfect(c6) is None)
    fk = double_incidence_graph(build_Fk_example(4), 4)
    res.check(
        "F4-extremal",
        fk.max_degree >= 4 and gamma_k(fk, 4).value == gamma(fk).value + 2 and is_bipartite(fk) is not None,
    )
    subgraphs = res.properties["induced-subgraphs"].checked
    report(7, failures(res) == 0, f"{counts(res)} ({subgraphs} induced subgraphs)")
    assert failures(res) == 0, res.summary()


# --- 8 -------------------------------------------------------------------------------------


def test_criterion_8_sat_reduction():
    start = time.perf_counter()
    res = suite_sat(SuiteConfig(seed=8, trials=200, s_max=6))
    elapsed = time.perf_counter() - start
    total = res.properties["biconditional"].checked
    ok = failures(res) == 0 and elapsed < 600 and total >= 400
    report(8, ok, f"{total} certifications (k=2,3), {counts(res)}, {elapsed:.1f}s (< 600s)")
    assert failures(res) == 0, res.summary()
    assert total >= 400
    assert elapsed < 600


# --- 10 ------------------------------------------------------------------------------------


def test_criterion_10_k2_boundary():
    g = two_k23_bridge()
    g2, g1 = gamma_k(g, 2).value, gamma(g).value
    split = is_bipartite(g)
    class_sizes = sorted((len(split.class_a), len(split.class_b)))
    try:
        is_gamma_gamma_k_graph_bipartite(g, 2)
        code = None
    except RecognitionError as exc:
        code = exc.code
    ok = (g2, g1) == (4, 4) and code == K_UNSUPPORTED and g2 not in class_sizes
    report(10, ok, f"gamma_2={g2} gamma={g1} partite classes {class_sizes}, k=2 rejected with code {code!r}")
    assert (g2, g1) == (4, 4)
    assert g2 not in class_sizes  # neither partite class is a minimum 2-dominating set
    assert code == K_UNSUPPORTED
