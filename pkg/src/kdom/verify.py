"""Randomised property suites comparing the fast routines with exact oracles.

Each suite returns a :class:`SuiteResult` whose per-property counters are
deterministic for a given seed; trials run in index order and the first
counterexample (lowest trial index) is kept.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .families import (
    BkParams,
    build_Sk,
    random_connected_bipartite,
    random_connected_bipartite_Bk,
    random_graph,
    random_uniform_hypergraph,
    SkShape,
)
from .graphcore import (
    Graph,
    graph_square_induced,
    induced_subgraph,
    is_connected,
    mask_of,
)
from .recognition import (
    RecognitionReport,
    enumerate_Hk,
    gamma_k_simplified,
    is_gamma_gamma3_perfect,
    is_gamma_gamma_k_graph_bipartite,
    is_Hk_free,
    satisfies_star_property,
    tc_is_extremal,
)
from .satreduce import (
    CnfFormula,
    certify_biconditional,
    check_reducibility,
    random_reducible_formula,
)
from .solvers import (
    all_minimum_k_dominating_sets,
    edge_cover_number,
    gamma,
    gamma_k,
    is_threshold,
    tc_number,
    weak_independence_number,
)

__all__ = ["SUITES", "PropertyCount", "SuiteConfig", "SuiteResult", "run_suite"]


@dataclass
class PropertyCount:
    checked: int = 0
    failed: int = 0
    counterexample: str | None = None


@dataclass
class SuiteResult:
    suite: str
    properties: dict[str, PropertyCount] = field(default_factory=dict)

    def check(self, name: str, ok: bool, detail: Callable[[], str] | str = "") -> bool:
        pc = self.properties.setdefault(name, PropertyCount())
        pc.checked += 1
        if not ok:
            pc.failed += 1
            if pc.counterexample is None:
                pc.counterexample = detail() if callable(detail) else detail
        return ok

    @property
    def passed(self) -> bool:
        return all(pc.failed == 0 for pc in self.properties.values())

    def summary(self) -> str:
        lines = []
        for name, pc in self.properties.items():
            status = "PASS" if pc.failed == 0 else "FAIL"
            lines.append(f"{status} {self.suite}/{name}: checked={pc.checked} failed={pc.failed}")
            if pc.counterexample:
                lines.append(f"  counterexample: {pc.counterexample}")
        lines.append(f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 200
    n_max: int = 12
    s_max: int = 6


def _edges(g: Graph) -> str:
    return f"n={g.n} edges={sorted(g.edges())}"


def _max_degree_within(g: Graph, d: frozenset[int]) -> int:
    m = mask_of(d)
    return max(((g.adj[v] & m).bit_count() for v in d), default=0)


def check_bounds_instance(res: SuiteResult, g: Graph, k: int, witness_n_max: int = 14) -> bool:
    """Lower bound ``gamma_k >= gamma + k - 2`` and, at equality, the
    structure of every minimum ``k``-dominating set."""
    gm = gamma(g).value
    gk = gamma_k(g, k).value
    res.check("lower-bound", gk >= gm + k - 2, lambda: f"k={k} gamma={gm} gamma_k={gk} {_edges(g)}")
    if gk != gm + k - 2 or g.n > witness_n_max:
        return gk == gm + k - 2
    for d in all_minimum_k_dominating_sets(g, k):
        res.check(
            "witness-max-degree",
            _max_degree_within(g, d) <= k - 2,
            lambda: f"k={k} D={sorted(d)} {_edges(g)}",
        )
        sub, _ = induced_subgraph(g, d)
        res.check(
            "witness-domination",
            gamma(sub).value >= gk - (k - 2),
            lambda: f"k={k} D={sorted(d)} {_edges(g)}",
        )
    return True


_BOUNDS_BK = BkParams(min_order=3, max_order=5, max_extra_edges=2, max_twins=1, max_y=1)


def suite_bounds(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("bounds")
    rng = random.Random(cfg.seed)
    done = 0
    while done < cfg.trials:
        k = rng.choice((2, 3, 4))
        if k >= 3 and rng.random() < 0.4:
            # members of B_k frequently meet the bound with equality
            g = random_connected_bipartite_Bk(k, _BOUNDS_BK, seed=rng.getrandbits(32)).graph
            if g.n > max(cfg.n_max, 14):
                continue
        else:
            n = rng.randint(max(k + 1, 4), max(k + 1, cfg.n_max))
            g = random_graph(n, rng.uniform(0.2, 0.8), seed=rng.getrandbits(32))
        if g.max_degree < k:
            continue
        check_bounds_instance(res, g, k)
        done += 1
    return res


def _oracle_yes(g: Graph, k: int) -> bool:
    return g.max_degree >= k and gamma_k(g, k).value == gamma(g).value + k - 2


def random_bipartite_instance(rng: random.Random, n_min: int, n_max: int) -> Graph:
    """Connected bipartite graph; one in three comes from ``B_3``."""
    if rng.random() < 1 / 3:
        while True:
            member = random_connected_bipartite_Bk(
                3, BkParams(min_order=3, max_order=5, max_extra_edges=2), seed=rng.getrandbits(32)
            )
            if n_min <= member.graph.n <= n_max:
                return member.graph
    n = rng.randint(n_min, n_max)
    a = rng.randint(2, n - 2)
    return random_connected_bipartite(a, n - a, rng.uniform(0.2, 0.9), seed=rng.getrandbits(32))


def check_recognition_instance(res: SuiteResult, g: Graph, k: int = 3) -> tuple[RecognitionReport, bool]:
    """Recognizer versus brute force; on yes-instances also the partite-class
    minimality and the threshold property of ``G^2[D]``.

    Returns the report and the brute-force verdict.
    """
    report = is_gamma_gamma_k_graph_bipartite(g, k)
    truth = _oracle_yes(g, k)
    res.check("oracle-agreement", bool(report) == truth, lambda: f"verdict={report.verdict} oracle={truth} {_edges(g)}")
    if report and truth:
        d = report.d_class
        res.check("class-is-minimum", len(d) == gamma_k(g, k).value, lambda: f"D={sorted(d)} {_edges(g)}")
        res.check(
            "square-threshold",
            is_threshold(graph_square_induced(g, d)),
            lambda: f"D={sorted(d)} {_edges(g)}",
        )
    return report, truth


def suite_recognition_oracle(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("recognition-oracle")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        check_recognition_instance(res, random_bipartite_instance(rng, 6, max(6, cfg.n_max)))
    return res


def check_simplify_instance(res: SuiteResult, g: Graph, k: int = 3) -> None:
    simple = gamma_k_simplified(g, k)
    lhs = gamma_k(g, k).value == gamma(g).value + k - 2
    rhs = gamma_k(simple, k).value == gamma(simple).value + k - 2
    res.check("equality-preserved", lhs == rhs, lambda: f"g:{lhs} simplified:{rhs} {_edges(g)}")


def suite_simplify_equiv(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("simplify-equiv")
    rng = random.Random(cfg.seed)
    params = BkParams(min_order=3, max_order=6, max_extra_edges=3)
    done = 0
    while done < cfg.trials:
        member = random_connected_bipartite_Bk(3, params, seed=rng.getrandbits(32))
        if member.graph.n > max(cfg.n_max, 10) + 8:
            continue
        check_simplify_instance(res, member.graph)
        done += 1
    return res


def check_tc_instance(res: SuiteResult, f, k: int = 3) -> None:
    ext, _ = tc_is_extremal(f, k)
    exact = tc_number(f).value == f.n - k + 2
    res.check("extremal-vs-exact", ext == exact, lambda: f"extremal={ext} exact={exact} edges={f.sorted_edges()}")
    if k == 3:
        free, _ = is_Hk_free(f, 3)
        star, _ = satisfies_star_property(f)
        res.check("extremal-vs-hk-free", ext == free, lambda: f"n={f.n} edges={f.sorted_edges()}")
        res.check("extremal-vs-star", ext == star, lambda: f"n={f.n} edges={f.sorted_edges()}")


def suite_tc_extremal(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("tc-extremal")
    rng = random.Random(cfg.seed)
    top = min(max(cfg.n_max, 3), 8)
    for _ in range(cfg.trials):
        n = rng.randint(3, top)
        m = rng.randint(1, min(12, n * (n - 1) * (n - 2) // 6))
        check_tc_instance(res, random_uniform_hypergraph(n, 3, m, seed=rng.getrandbits(32)))
    return res


def connected_induced_min_degree(g: Graph, k: int):
    """Vertex subsets inducing connected subgraphs of minimum degree ``>= k``."""
    for size in range(k + 1, g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            sub, _ = induced_subgraph(g, s)
            if sub.min_degree >= k and is_connected(sub):
                yield s, sub


def check_perfect_shape(res: SuiteResult, shape: SkShape, subgraph_n_max: int = 13) -> None:
    g = build_Sk(shape)
    found = is_gamma_gamma3_perfect(g) if shape.k == 3 else None
    if shape.k == 3:
        res.check("round-trip", found == shape.canonical(), lambda: f"{shape} -> {found}")
        if g.n <= subgraph_n_max:
            for s, sub in connected_induced_min_degree(g, 3):
                res.check(
                    "induced-subgraphs",
                    gamma_k(sub, 3).value == gamma(sub).value + 1,
                    lambda: f"{shape} subset={list(s)}",
                )
    res.check(
        "closed-form",
        gamma_k(g, shape.k).value == shape.r + shape.k - 1 and gamma(g).value == shape.r + 1,
        lambda: f"{shape}",
    )


def suite_perfect3(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("perfect3")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        r = rng.randint(1, 3)
        shape = SkShape(3, tuple(rng.randint(3, 5) for _ in range(r)))
        check_perfect_shape(res, shape, subgraph_n_max=cfg.n_max)
    return res


def small_formula_classes(s_max: int = 5, l_max: int = 6):
    """Multisets of clause variable-sets over ``s <= s_max`` variables.

    Reducibility only depends on which variables each clause uses, so these
    classes cover every formula up to literal polarity and clause order.
    """
    for s in range(s_max + 1):
        triples = list(itertools.combinations(range(1, s + 1), 3))
        for ell in range(l_max + 1):
            for combo in itertools.combinations_with_replacement(triples, ell):
                yield s, combo


def all_polarities(s: int, combo) -> list[CnfFormula]:
    out = []
    for signs in itertools.product((1, -1), repeat=3 * len(combo)):
        it = iter(signs)
        out.append(CnfFormula(s, tuple(tuple(v * next(it) for v in t) for t in combo)))
    return out


def check_sat_instance(res: SuiteResult, f: CnfFormula, k: int) -> None:
    try:
        cert = certify_biconditional(f, k)
    except AssertionError as exc:
        res.check("biconditional", False, f"k={k} clauses={list(f.clauses)}: {exc}")
        return
    res.check("biconditional", cert.satisfiable == cert.gap_holds, "")
    res.check("gamma_k-closed-form", cert.gamma_k == k + f.num_vars, "")
    res.check("order", cert.order == 3 * f.num_vars + len(f.clauses) + k + 1, "")


def suite_sat(cfg: SuiteConfig) -> SuiteResult:
    """Every reducible small formula (``s <= min(s_max, 5)``, ``l <= 6``) in
    all polarities, then ``trials`` random reducible formulas with ``s = 6``
    when ``s_max >= 6``."""
    res = SuiteResult("sat")
    for s, combo in small_formula_classes(min(cfg.s_max, 5)):
        if not check_reducibility(CnfFormula(s, combo)):
            continue
        for f in all_polarities(s, combo):
            for k in (2, 3):
                check_sat_instance(res, f, k)
    if cfg.s_max >= 6:
        rng = random.Random(cfg.seed)
        for _ in range(cfg.trials):
            f = random_reducible_formula(6, rng.randint(0, 8), seed=rng.getrandbits(32))
            for k in (2, 3):
                check_sat_instance(res, f, k)
    return res


def suite_hk(cfg: SuiteConfig) -> SuiteResult:
    res = SuiteResult("hk")
    for h in enumerate_Hk(3):
        rho = edge_cover_number(h).value
        alpha = weak_independence_number(h).value
        res.check("order", h.n <= 6, lambda: f"n={h.n} edges={h.sorted_edges()}")
        res.check("edge-cover", rho <= 2, lambda: f"edges={h.sorted_edges()}")
        res.check("weak-independence", alpha >= rho + 2, lambda: f"edges={h.sorted_edges()}")
        res.check("not-extremal", not tc_is_extremal(h, 3)[0], lambda: f"edges={h.sorted_edges()}")
    return res


SUITES: dict[str, Callable[[SuiteConfig], SuiteResult]] = {
    "bounds": suite_bounds,
    "recognition-oracle": suite_recognition_oracle,
    "simplify-equiv": suite_simplify_equiv,
    "tc-extremal": suite_tc_extremal,
    "perfect3": suite_perfect3,
    "sat": suite_sat,
    "hk": suite_hk,
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](cfg or SuiteConfig())

