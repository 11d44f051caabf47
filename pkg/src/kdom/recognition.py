"""Recognition of bipartite graphs meeting ``gamma_k = gamma + k - 2``.

The polynomial route for ``k >= 3``:

1. take the non-trivial component and require ``Delta >= k``;
2. pick a partite class ``D`` and read the underlying ``k``-uniform
   hypergraph ``F`` off the neighbourhoods of the other class
   (:func:`extract_underlying`);
3. accept iff ``F`` is TC-extremal (:func:`tc_is_extremal`), which only looks
   at unions of at most ``k-1`` edges.

No exponential domination solver is called on this path.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cache
from typing import Iterable

import numpy as np

from .families import SkShape, double_incidence_graph
from .graphcore import (
    Graph,
    Hypergraph,
    bits,
    connected_components,
    hypergraph_is_connected,
    induced_subgraph,
    is_bipartite,
    is_connected,
    mask_of,
    two_section,
)
from .solvers import edge_cover_number, max_weakly_independent_within, weak_independence_number

__all__ = [
    "Extraction",
    "RecognitionError",
    "RecognitionReport",
    "TcViolation",
    "canonical_form",
    "enumerate_Hk",
    "extract_underlying",
    "gamma_k_simplified",
    "is_Hk_free",
    "is_gamma_gamma3_perfect",
    "is_gamma_gamma_k_graph_bipartite",
    "match_Sk",
    "membership_Bk",
    "parse_dump",
    "satisfies_star_property",
    "tc_is_extremal",
]

#: Error code raised when the recognizer is asked for ``k < 3``.
K_UNSUPPORTED = "k-unsupported"


class RecognitionError(ValueError):
    """A recognition routine was called outside its domain."""

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"[{code}] {message}")
        self.code = code


def _fmt(vs: Iterable[int]) -> str:
    return ",".join(map(str, sorted(vs)))


@dataclass
class RecognitionReport:
    """Verdict plus the certificate trail that led to it.

    ``d_class`` uses vertex indices of the input graph; vertex ``i`` of
    ``underlying`` is ``d_order[i]``.
    """

    verdict: str
    reason: str
    message: str = ""
    d_class: frozenset[int] | None = None
    underlying: Hypergraph | None = None
    d_order: tuple[int, ...] | None = None
    checks: list[tuple[str, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict == "yes"

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}", f"reason: {self.reason}"]
        if self.message:
            lines.append(f"message: {self.message}")
        lines.extend(f"check {name}: {outcome}" for name, outcome in self.checks)
        if self.d_class is not None:
            lines.append(f"D: {_fmt(self.d_class)}")
        if self.underlying is not None:
            edges = " ".join("{" + _fmt(self.d_order[v] for v in e) + "}" for e in self.underlying.sorted_edges())
            lines.append(f"F: {edges}")
        return "\n".join(lines) + "\n"

    def to_dump(self) -> str:
        rows = [("verdict", self.verdict), ("reason", self.reason), ("message", self.message)]
        if self.d_class is not None:
            rows.append(("d_class", _fmt(self.d_class)))
        if self.underlying is not None:
            rows.append(("underlying_n", str(self.underlying.n)))
            rows.append(("underlying_edges", ";".join(_fmt(e) for e in self.underlying.sorted_edges())))
            rows.append(("d_order", ",".join(map(str, self.d_order))))
        for i, (name, outcome) in enumerate(self.checks):
            rows.append((f"check.{i}.{name}", outcome))
        return "".join(f"{k}={v}\n" for k, v in rows)


def parse_dump(text: str) -> dict[str, str]:
    """Inverse of :meth:`RecognitionReport.to_dump` (keys in order)."""
    out = {}
    for line in text.splitlines():
        if line:
            key, _, value = line.partition("=")
            out[key] = value
    return out


# --- B_k membership ------------------------------------------------------------------


@dataclass(frozen=True)
class Extraction:
    """Outcome of reading the underlying hypergraph off one partite class.

    On success ``hypergraph`` is set, ``witnesses[i]`` lists the outside
    vertices whose neighbourhood is edge ``i`` and ``y`` lists the vertices
    attached to larger complete sets. On failure ``failure`` holds
    ``(code, message)``.
    """

    d_order: tuple[int, ...]
    hypergraph: Hypergraph | None = None
    witnesses: tuple[tuple[int, ...], ...] = ()
    y: tuple[int, ...] = ()
    failure: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.failure is None


def extract_underlying(g: Graph, d: Iterable[int], k: int) -> Extraction:
    """Underlying ``k``-uniform hypergraph of ``g`` with respect to class ``d``.

    Edges are the size-``k`` neighbourhoods shared by at least two outside
    vertices; every other outside vertex must see a set all of whose
    ``k``-subsets are edges. ``F`` must be connected and cover ``d``.
    """
    dm = mask_of(d)
    order = tuple(bits(dm))
    outside = g.vertices & ~dm

    def fail(code: str, message: str) -> Extraction:
        return Extraction(order, failure=(code, message))

    for v in bits(dm):
        if g.adj[v] & dm:
            return fail("d-not-independent", f"vertex {v} has a neighbour inside D")
    for v in bits(outside):
        if g.adj[v] & outside:
            return fail("outside-not-independent", f"vertex {v} has a neighbour outside D")
    groups: dict[int, list[int]] = {}
    for y in bits(outside):
        groups.setdefault(g.adj[y], []).append(y)
    edge_nbs = [nb for nb, ys in groups.items() if nb.bit_count() == k and len(ys) >= 2]
    edge_nbs.sort(key=lambda nb: groups[nb][0])
    edge_set = set(edge_nbs)
    y_type = []
    for y in bits(outside):
        nb = g.adj[y]
        size = nb.bit_count()
        if size < k:
            return fail("neighbourhood-too-small", f"vertex {y} has only {size} neighbours in D")
        if nb in edge_set:
            continue
        if size == k:
            return fail("unshared-neighbourhood", f"vertex {y} is the only one adjacent to {{{_fmt(bits(nb))}}}")
        for sub in itertools.combinations(bits(nb), k):
            if mask_of(sub) not in edge_set:
                return fail(
                    "incomplete-attachment",
                    f"vertex {y} sees {{{_fmt(bits(nb))}}} but {{{_fmt(sub)}}} is not an edge",
                )
        y_type.append(y)
    pos = {v: i for i, v in enumerate(order)}
    f = Hypergraph(len(order), [[pos[v] for v in bits(nb)] for nb in edge_nbs])
    if f.m == 0:
        return fail("no-edge", "no neighbourhood of size k is shared by two vertices")
    if not hypergraph_is_connected(f):
        return fail("F-disconnected", "the underlying hypergraph is not connected")
    if f.covered != f.vertices:
        miss = order[(f.vertices & ~f.covered).bit_length() - 1]
        return fail("uncovered-d-vertex", f"vertex {miss} of D lies in no edge")
    witnesses = tuple(tuple(groups[nb]) for nb in edge_nbs)
    return Extraction(order, f, witnesses, tuple(y_type))


def _extractions(g: Graph, k: int) -> tuple[list[tuple[str, Extraction]], str | None]:
    if not is_connected(g) or g.n < 2:
        return [], "not-connected"
    split = is_bipartite(g)
    if split is None:
        return [], "not-bipartite"
    return [("A", extract_underlying(g, split.class_a, k)), ("B", extract_underlying(g, split.class_b, k))], None


def membership_Bk(g: Graph, k: int) -> RecognitionReport:
    """Is ``g`` in ``B_k``? Both partite classes are tried as ``D``."""
    tried, problem = _extractions(g, k)
    if problem:
        return RecognitionReport("no", problem, f"graph is {problem.replace('-', ' ')}", checks=[(problem, "fail")])
    checks = []
    for name, ex in tried:
        if ex:
            checks.append((f"extract-class-{name}", "ok"))
            return RecognitionReport(
                "yes", "ok", f"class {name} is D", frozenset(ex.d_order), ex.hypergraph, ex.d_order, checks
            )
        checks.append((f"extract-class-{name}", f"{ex.failure[0]}: {ex.failure[1]}"))
    return RecognitionReport("no", "not-in-Bk", "neither partite class yields an underlying hypergraph", checks=checks)


def gamma_k_simplified(g: Graph, k: int) -> Graph:
    """Double incidence graph of the underlying hypergraph of ``g``.

    Extra twins and attachment vertices are dropped; vertices are ordered as
    in :func:`double_incidence_graph` with ``D`` in increasing order first.
    """
    report = membership_Bk(g, k)
    if not report:
        raise RecognitionError("not-in-Bk", f"graph is not in B_{k}: {report.message}")
    return double_incidence_graph(report.underlying, k)


# --- TC-extremality -----------------------------------------------------------------


@dataclass(frozen=True)
class TcViolation:
    """Edges whose union holds too many weakly independent vertices."""

    edges: tuple[int, ...]
    independent: frozenset[int]
    bound: int


def tc_is_extremal(f: Hypergraph, k: int) -> tuple[bool, TcViolation | None]:
    """Decide ``tc(f) == |V(f)| - k + 2`` for a ``k``-uniform ``f``.

    For every ``l <= k-1`` edges, their union may hold at most ``l + k - 2``
    weakly independent vertices. The first violating edge subset (by size,
    then lexicographically) is returned as certificate. An edgeless ``f`` has
    ``tc = n``, which is extremal only for ``k = 2``.
    """
    if not f.is_uniform(k):
        raise RecognitionError("not-uniform", f"hypergraph is not {k}-uniform")
    if f.m == 0:
        if k == 2:
            return True, None
        return False, TcViolation((), frozenset(range(f.n)), k - 2)
    seen: dict[int, frozenset[int] | None] = {}
    for ell in range(1, min(k - 1, f.m) + 1):
        bound = ell + k - 2
        for sub in itertools.combinations(range(f.m), ell):
            union = 0
            for j in sub:
                union |= f.edge_masks[j]
            if union.bit_count() <= bound:
                continue
            # the largest independent set inside a union does not depend on ell
            key = union
            if key not in seen:
                res = max_weakly_independent_within(f, bits(union))
                seen[key] = res.witness
            x = seen[key]
            if len(x) > bound:
                return False, TcViolation(sub, x, bound)
    return True, None


def satisfies_star_property(f: Hypergraph) -> tuple[bool, tuple[tuple[int, int], tuple[int, int]] | None]:
    """Four vertices forming two disjoint adjacent pairs must contain an edge.

    Returns the first violating pair of pairs, if any.
    """
    adj = two_section(f).adj
    for quad in itertools.combinations(range(f.n), 4):
        qm = mask_of(quad)
        if any(em & ~qm == 0 for em in f.edge_masks):
            continue
        a, b, c, d = quad
        for p, q in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            if adj[p[0]] >> p[1] & 1 and adj[q[0]] >> q[1] & 1:
                return False, (p, q)
    return True, None


# --- canonical forms and H_k ----------------------------------------------------------


@cache
def _perm_table(n: int, k: int) -> tuple[np.ndarray, dict[frozenset[int], int]]:
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    index = {s: i for i, s in enumerate(subsets)}
    perms = list(itertools.permutations(range(n)))
    table = np.empty((len(perms), len(subsets)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for i, s in enumerate(subsets):
            table[p, i] = index[frozenset(perm[v] for v in s)]
    weights = np.left_shift(np.int64(1), table)
    return weights, index


def canonical_form(h: Hypergraph, k: int) -> tuple[int, int]:
    """Isomorphism invariant ``(n, code)`` of a small ``k``-uniform hypergraph.

    Brute force over all ``n!`` relabellings; intended for ``n <= 7``.
    """
    if h.n > 7:
        raise ValueError("canonical_form is brute force; n must be at most 7")
    if h.n < k:
        return (h.n, 0)
    weights, index = _perm_table(h.n, k)
    cols = [index[e] for e in h.edges]
    if not cols:
        return (h.n, 0)
    return (h.n, int(weights[:, cols].sum(axis=1).min()))


def _from_code(n: int, k: int, code: int) -> Hypergraph:
    subsets = list(itertools.combinations(range(n), k))
    return Hypergraph(n, [subsets[i] for i in range(len(subsets)) if code >> i & 1])


@cache
def _hk_codes(k: int) -> tuple[tuple[int, int], ...]:
    found = []
    for n in range(k, k * (k - 1) + 1):
        subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
        # necessary and closed under edge deletion: alpha_w >= ceil(n/k) + k - 1
        need = math.ceil(n / k) + k - 1
        if need > n:
            continue
        inside = []
        for w in itertools.combinations(range(n), need):
            ws = set(w)
            inside.append(sum(1 << i for i, s in enumerate(subsets) if s <= ws))
        level = {canonical_form(Hypergraph(n), k)[1]}
        classes = set(level)
        while level:
            nxt = set()
            for code in level:
                for i in range(len(subsets)):
                    if code >> i & 1:
                        continue
                    c2 = code | 1 << i
                    if not any(c2 & m == 0 for m in inside):
                        continue
                    canon = canonical_form(_from_code(n, k, c2), k)[1]
                    if canon not in classes:
                        classes.add(canon)
                        nxt.add(canon)
            level = nxt
        for code in sorted(classes):
            h = _from_code(n, k, code)
            if h.covered != h.vertices:
                continue
            rho = edge_cover_number(h).value
            if rho <= k - 1 and weak_independence_number(h).value >= rho + k - 1:
                found.append((n, code))
    return tuple(found)


def enumerate_Hk(k: int = 3) -> list[Hypergraph]:
    """All members of ``H_k`` up to isomorphism (``k = 3`` only).

    A ``k``-uniform hypergraph is in ``H_k`` when its edge cover number is at
    most ``k-1`` and its weak independence number is at least that plus
    ``k-1``; such hypergraphs have at most ``k(k-1)`` vertices.
    """
    if k != 3:
        raise RecognitionError(K_UNSUPPORTED, "H_k enumeration is implemented for k = 3 only")
    return [_from_code(n, k, code) for n, code in _hk_codes(k)]


def is_Hk_free(f: Hypergraph, k: int = 3) -> tuple[bool, frozenset[int] | None]:
    """No induced subhypergraph of ``f`` is isomorphic to a member of ``H_k``.

    Returns the vertex set of the first induced copy found.
    """
    members = set(_hk_codes(k)) if k == 3 else set(enumerate_Hk(k))
    sizes = sorted({n for n, _ in members})
    for size in sizes:
        for s in itertools.combinations(range(f.n), size):
            sub, _ = f.induced(s)
            if canonical_form(sub, k) in members:
                return False, frozenset(s)
    return True, None


# --- the recognizer ---------------------------------------------------------------------


def is_gamma_gamma_k_graph_bipartite(g: Graph, k: int) -> RecognitionReport:
    """Polynomial test of ``gamma_k(g) = gamma(g) + k - 2`` with ``Delta >= k``
    for bipartite ``g`` and ``k >= 3``.

    A disconnected graph qualifies iff exactly one component is non-trivial
    and that component qualifies.
    """
    if k < 3:
        raise RecognitionError(
            K_UNSUPPORTED, f"k={k}: the bipartite characterisation needs k >= 3 (k = 2 behaves differently)"
        )
    checks: list[tuple[str, str]] = []

    def no(reason: str, message: str) -> RecognitionReport:
        checks.append((reason, "fail"))
        return RecognitionReport("no", reason, message, checks=checks)

    if is_bipartite(g) is None:
        return no("not-bipartite", "graph is not bipartite")
    checks.append(("bipartite", "ok"))
    big = [c for c in connected_components(g) if len(c) > 1]
    if len(big) != 1:
        return no("components", f"{len(big)} non-trivial components; exactly one is required")
    core, index = induced_subgraph(g, big[0])
    checks.append(("single-nontrivial-component", f"{len(core.adj)} vertices"))
    if core.max_degree < k:
        return no("max-degree", f"maximum degree {core.max_degree} < k={k}")
    checks.append(("max-degree", f"{core.max_degree} >= {k}"))
    tried, _ = _extractions(core, k)
    violation = None
    extracted = False
    for name, ex in tried:
        if not ex:
            checks.append((f"extract-class-{name}", f"{ex.failure[0]}: {ex.failure[1]}"))
            continue
        extracted = True
        checks.append((f"extract-class-{name}", f"F has {ex.hypergraph.n} vertices, {ex.hypergraph.m} edges"))
        ok, cert = tc_is_extremal(ex.hypergraph, k)
        d_order = tuple(index[v] for v in ex.d_order)
        if ok:
            checks.append((f"tc-extremal-class-{name}", "ok"))
            return RecognitionReport(
                "yes", "ok", "underlying hypergraph is TC-extremal", frozenset(d_order), ex.hypergraph, d_order, checks
            )
        edges = " ".join("{" + _fmt(d_order[v] for v in ex.hypergraph.edges[j]) + "}" for j in cert.edges)
        detail = f"union of {edges} holds independent {{{_fmt(d_order[v] for v in cert.independent)}}} > {cert.bound}"
        checks.append((f"tc-extremal-class-{name}", detail))
        violation = detail
    if not extracted:
        return no("not-in-Bk", "neither partite class yields an underlying hypergraph")
    return no("tc-not-extremal", violation)


def match_Sk(g: Graph, k: int) -> SkShape | None:
    """Recognise ``g`` as some ``S_k(i_1, ..., i_r)`` structurally.

    One side must consist of degree-``k`` vertices (the subdivisions); on the
    other side exactly ``k-1`` false twins see all of them (the centre and its
    twins), unless the graph is ``K_{k,l}``. Branch sizes come back sorted.
    """
    if g.n == 0 or not is_connected(g) or g.min_degree < k:
        return None
    split = is_bipartite(g)
    if split is None:
        return None
    for hub_side, sub_side in ((split.class_a, split.class_b), (split.class_b, split.class_a)):
        sm = mask_of(sub_side)
        if any(g.degree(s) != k for s in sub_side):
            continue
        full = [h for h in hub_side if g.adj[h] == sm]
        if len(full) == k and len(hub_side) == k:
            return SkShape(k, (len(sub_side),))
        if len(full) != k - 1:
            continue
        sizes = sorted(g.degree(v) for v in hub_side if g.adj[v] != sm)
        return SkShape(k, tuple(sizes))
    return None


def is_gamma_gamma3_perfect(g: Graph) -> SkShape | None:
    """Shape of ``g`` if it is a bipartite (gamma, gamma_3)-perfect graph.

    Those are exactly the members of ``S_3``; anything else gives ``None``.
    """
    return match_Sk(g, 3)
