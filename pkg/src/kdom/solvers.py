"""Exact solvers for domination-type invariants of graphs and hypergraphs.

Every invariant has two independent routes:

* ``method="bnb"`` -- branch and bound over a generic covering model
  (each element must either pick its own "self" candidate or collect
  ``need`` candidates out of its option set), seeded by a greedy incumbent;
* ``method="reference"`` -- plain enumeration of subsets by increasing
  cardinality (vectorised with numpy where the candidates are vertices).

Both routes return the same witness: among optimal sets the one with the
smallest bit-mask value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .graphcore import CapExceeded, Graph, GraphError, Hypergraph, bits, mask_of

__all__ = [
    "REFERENCE_CAP",
    "SolveResult",
    "UncoverableError",
    "all_minimum_k_dominating_sets",
    "edge_cover_number",
    "gamma",
    "gamma_k",
    "is_dominating",
    "is_edge_cover",
    "is_k_dominating",
    "is_tc_set",
    "is_threshold",
    "is_transversal",
    "is_weakly_independent",
    "max_weakly_independent_within",
    "tc_number",
    "transversal_number",
    "weak_independence_number",
]

#: Largest candidate count the enumeration route accepts.
REFERENCE_CAP = 30


class UncoverableError(GraphError):
    """Edge cover requested for a hypergraph with an isolated vertex."""

    def __init__(self, vertex: int) -> None:
        super().__init__(f"vertex {vertex} lies in no hyperedge; no edge cover exists")
        self.vertex = vertex


@dataclass(frozen=True)
class SolveResult:
    """Optimum of a minimisation/maximisation together with a witness.

    ``witness`` holds vertices, except for :func:`edge_cover_number` where it
    holds edge indices. ``edges`` carries the edge part of a TC-set.
    """

    value: int
    witness: frozenset[int]
    explored: int = 0
    edges: frozenset[int] = frozenset()

    @property
    def mask(self) -> int:
        return mask_of(self.witness)


# --- predicates --------------------------------------------------------------


def _k_dom_mask(g: Graph, d: int, k: int) -> bool:
    for v in range(g.n):
        if not d >> v & 1 and (g.adj[v] & d).bit_count() < k:
            return False
    return True


def is_k_dominating(g: Graph, d: Iterable[int], k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    return _k_dom_mask(g, mask_of(d), k)


def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    return _k_dom_mask(g, mask_of(d), 1)


def is_transversal(h: Hypergraph, t: Iterable[int]) -> bool:
    tm = mask_of(t)
    return all(em & tm for em in h.edge_masks)


def is_weakly_independent(h: Hypergraph, x: Iterable[int]) -> bool:
    xm = mask_of(x)
    return all(em & ~xm for em in h.edge_masks)


def is_edge_cover(h: Hypergraph, r: Iterable[int], target: Iterable[int] | None = None) -> bool:
    """True when the edges indexed by ``r`` cover ``target`` (default: all vertices)."""
    tm = h.vertices if target is None else mask_of(target)
    union = 0
    for j in r:
        union |= h.edge_masks[j]
    return tm & ~union == 0


def is_tc_set(h: Hypergraph, t: Iterable[int], r: Iterable[int]) -> bool:
    tm = mask_of(t)
    return is_transversal(h, bits(tm)) and is_edge_cover(h, r, bits(h.vertices & ~tm))


# --- branch and bound engine ---------------------------------------------------


class _CoverSearch:
    """Minimum-cardinality candidate set satisfying every element.

    Element ``i`` is satisfied by ``chosen`` when ``chosen & smask[i]`` or
    ``popcount(chosen & amask[i]) >= need[i]``.
    """

    def __init__(
        self,
        ncand: int,
        elements: Sequence[tuple[int, int, int]],
        forced_in: int = 0,
        forced_out: int = 0,
    ) -> None:
        if forced_in & forced_out:
            raise ValueError("a candidate is both forced in and forced out")
        self.ncand = ncand
        self.amask = [a for a, _, _ in elements]
        self.need = [r for _, r, _ in elements]
        self.smask = [s for _, _, s in elements]
        self.inv = [0] * ncand
        self.selfinv = [0] * ncand
        for i, (a, _, s) in enumerate(elements):
            for c in bits(a):
                self.inv[c] |= 1 << i
            if s:
                self.selfinv[s.bit_length() - 1] |= 1 << i
        self.forced_in = forced_in
        self.forced_out = forced_out
        self.nodes = 0

    def _evaluate(self, chosen: int, banned: int):
        unsat = []
        for i, a in enumerate(self.amask):
            s = self.smask[i]
            if chosen & s:
                continue
            d = self.need[i] - (chosen & a).bit_count()
            if d <= 0:
                continue
            avail = a & ~chosen & ~banned
            sav = s & ~banned
            if avail.bit_count() < d and not sav:
                return None
            unsat.append((i, d, avail, sav))
        return unsat

    def _gain(self, c: int, umask: int, deficit: dict[int, int]) -> int:
        g = (self.inv[c] & umask).bit_count()
        for i in bits(self.selfinv[c] & umask):
            g += deficit[i]
        return g

    def _lower_bound(self, unsat, umask: int, deficit: dict[int, int]) -> int:
        cands = 0
        total = 0
        for _, d, avail, sav in unsat:
            cands |= avail | sav
            total += d
        maxgain = max(self._gain(c, umask, deficit) for c in bits(cands))
        ratio = -(-total // maxgain)
        used = 0
        packing = 0
        for _, d, avail, sav in sorted(unsat, key=lambda u: (u[2] | u[3]).bit_count()):
            opts = avail | sav
            if not opts & used:
                used |= opts
                packing += 1 if sav else d
        return max(ratio, packing)

    def greedy(self) -> int | None:
        chosen, banned = self.forced_in, self.forced_out
        while True:
            unsat = self._evaluate(chosen, banned)
            if unsat is None:
                return None
            if not unsat:
                return chosen
            umask = sum(1 << i for i, *_ in unsat)
            deficit = {i: d for i, d, *_ in unsat}
            cands = 0
            for _, _, avail, sav in unsat:
                cands |= avail | sav
            best = max(bits(cands), key=lambda c: (self._gain(c, umask, deficit), -c))
            chosen |= 1 << best

    def minimum(self) -> int | None:
        """Optimal chosen mask (any optimum), or ``None`` if infeasible."""
        start = self.greedy()
        if start is None:
            return None
        self._best = start
        self._best_size = start.bit_count()
        self._first = False
        self._stop = False
        self._dfs(self.forced_in, self.forced_out, self.forced_in.bit_count())
        return self._best

    def find(self, limit: int, forced_in: int, forced_out: int) -> int | None:
        """Any feasible mask of size <= ``limit`` under extra forcing."""
        if forced_in & forced_out:
            return None
        self._best = None
        self._best_size = limit + 1
        self._first = True
        self._stop = False
        self._dfs(forced_in, forced_out, forced_in.bit_count())
        return self._best

    def _dfs(self, chosen: int, banned: int, size: int) -> None:
        self.nodes += 1
        unsat = self._evaluate(chosen, banned)
        if unsat is None:
            return
        if not unsat:
            if size < self._best_size:
                self._best, self._best_size = chosen, size
                self._stop = self._first
            return
        if size + 1 >= self._best_size:
            return
        umask = 0
        deficit = {}
        for i, d, *_ in unsat:
            umask |= 1 << i
            deficit[i] = d
        if size + self._lower_bound(unsat, umask, deficit) >= self._best_size:
            return
        _, d, avail, sav = min(unsat, key=lambda u: (u[2] | u[3]).bit_count() - u[1])
        options = sorted(bits(avail | sav), key=lambda c: (-self._gain(c, umask, deficit), c))
        for c in options:
            self._dfs(chosen | 1 << c, banned, size + 1)
            if self._stop:
                return
            banned |= 1 << c
            avail &= ~(1 << c)
            sav &= ~(1 << c)
            if avail.bit_count() < d and not sav:
                return

    def min_mask_optimum(self) -> tuple[int, int] | None:
        """(value, smallest optimal mask) or ``None`` if infeasible."""
        best = self.minimum()
        if best is None:
            return None
        value = best.bit_count()
        fin, fout = self.forced_in, self.forced_out
        for b in reversed(range(self.ncand)):
            bit = 1 << b
            if (fin | fout) & bit:
                continue
            if not best & bit:
                fout |= bit
                continue
            alt = self.find(value, fin, fout | bit)
            if alt is not None:
                best = alt
                fout |= bit
            else:
                fin |= bit
        return value, best


# --- enumeration routes --------------------------------------------------------


def _check_reference(ncand: int) -> None:
    if ncand > REFERENCE_CAP:
        raise CapExceeded(f"enumeration over {ncand} candidates exceeds {REFERENCE_CAP}")


def _np_scan(
    ncand: int, feasible: Callable[[np.ndarray], np.ndarray], collect_all: bool = False
) -> tuple[int | None, list[int], int]:
    """Scan all masks over ``ncand`` bits; return (best size, optimal masks, scanned).

    Without ``collect_all`` only the smallest optimal mask is returned.
    """
    _check_reference(ncand)
    total = 1 << ncand
    chunk = 1 << 18
    best_size: int | None = None
    found: list[int] = []
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        ok = masks[feasible(masks)]
        if ok.size == 0:
            continue
        pc = np.bitwise_count(ok)
        low = int(pc.min())
        if best_size is not None and low > best_size:
            continue
        if best_size is None or low < best_size:
            best_size, found = low, []
        hits = ok[pc == low]
        if collect_all:
            found.extend(int(x) for x in hits)
        elif not found:
            found = [int(hits[0])]
    return best_size, found, total


def _np_kdom(adj: Sequence[int], k: int) -> Callable[[np.ndarray], np.ndarray]:
    def feasible(masks: np.ndarray) -> np.ndarray:
        ok = np.ones(masks.shape, dtype=bool)
        for v, nb in enumerate(adj):
            inside = (masks >> np.uint64(v)) & np.uint64(1)
            cnt = np.bitwise_count(masks & np.uint64(nb))
            ok &= inside.astype(bool) | (cnt >= k)
        return ok

    return feasible


def _np_hitting(sets: Sequence[int]) -> Callable[[np.ndarray], np.ndarray]:
    def feasible(masks: np.ndarray) -> np.ndarray:
        ok = np.ones(masks.shape, dtype=bool)
        for s in sets:
            ok &= (masks & np.uint64(s)) != 0
        return ok

    return feasible


def _gosper(width: int, size: int):
    """All ``width``-bit masks with ``size`` set bits, in increasing order."""
    if size == 0:
        yield 0
        return
    if size > width:
        return
    x = (1 << size) - 1
    limit = 1 << width
    while x < limit:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def _min_set_cover_enum(edge_masks: Sequence[int], target: int) -> tuple[int, int, int] | None:
    """Smallest-mask minimum cover of ``target`` by enumeration: (size, mask, scanned)."""
    scanned = 0
    m = len(edge_masks)
    for size in range(m + 1):
        for sel in _gosper(m, size):
            scanned += 1
            union = 0
            for j in bits(sel):
                union |= edge_masks[j]
            if target & ~union == 0:
                return size, sel, scanned
    return None


# --- graph invariants ----------------------------------------------------------


def _kdom_search(g: Graph, k: int, forced_out: int = 0) -> _CoverSearch:
    elements = [(g.adj[v], k, 1 << v) for v in range(g.n)]
    forced = mask_of(v for v in range(g.n) if g.degree(v) < k)
    return _CoverSearch(g.n, elements, forced_in=forced & ~forced_out, forced_out=forced_out)


def gamma_k(g: Graph, k: int, method: str = "bnb") -> SolveResult:
    """Minimum ``k``-dominating set.

    Vertices of degree below ``k`` are forced into the set: they cannot be
    ``k``-dominated from outside.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if method == "reference":
        size, found, scanned = _np_scan(g.n, _np_kdom(g.adj, k))
        return SolveResult(size, frozenset(bits(found[0])), scanned)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    search = _kdom_search(g, k)
    value, best = search.min_mask_optimum()
    return SolveResult(value, frozenset(bits(best)), search.nodes)


def gamma(g: Graph, method: str = "bnb") -> SolveResult:
    return gamma_k(g, 1, method)


def all_minimum_k_dominating_sets(g: Graph, k: int) -> list[frozenset[int]]:
    """Every minimum ``k``-dominating set, by exhaustive enumeration."""
    _, found, _ = _np_scan(g.n, _np_kdom(g.adj, k), collect_all=True)
    return [frozenset(bits(m)) for m in found]


def is_threshold(g: Graph) -> bool:
    """No induced 2K2, P4 or C4 (checked over all 4-subsets)."""
    for quad in itertools.combinations(range(g.n), 4):
        qm = mask_of(quad)
        degs = sorted((g.adj[v] & qm).bit_count() for v in quad)
        # 2K2, P4, C4 are the only 4-vertex graphs with these degree sequences
        if degs in ([1, 1, 1, 1], [1, 1, 2, 2], [2, 2, 2, 2]):
            return False
    return True


# --- hypergraph invariants -------------------------------------------------------


def transversal_number(h: Hypergraph, method: str = "bnb") -> SolveResult:
    """Minimum transversal (vertex cover) of ``h``."""
    if method == "reference":
        size, found, scanned = _np_scan(h.n, _np_hitting(h.edge_masks))
        return SolveResult(size, frozenset(bits(found[0])), scanned)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    search = _CoverSearch(h.n, [(em, 1, 0) for em in h.edge_masks])
    value, best = search.min_mask_optimum()
    return SolveResult(value, frozenset(bits(best)), search.nodes)


def weak_independence_number(h: Hypergraph, method: str = "bnb") -> SolveResult:
    """``alpha_w = n - tau`` with the complement of the minimum transversal."""
    tau = transversal_number(h, method)
    return SolveResult(h.n - tau.value, frozenset(range(h.n)) - tau.witness, tau.explored)


def _incident_edges(h: Hypergraph) -> list[int]:
    inc = [0] * h.n
    for j, em in enumerate(h.edge_masks):
        for v in bits(em):
            inc[v] |= 1 << j
    return inc


def _set_cover(h: Hypergraph, target: int, inc: Sequence[int], tiebreak: bool) -> tuple[int, int, int]:
    search = _CoverSearch(h.m, [(inc[v], 1, 0) for v in bits(target)])
    if tiebreak:
        value, best = search.min_mask_optimum()
    else:
        best = search.minimum()
        value = best.bit_count()
    return value, best, search.nodes


def edge_cover_number(h: Hypergraph, method: str = "bnb") -> SolveResult:
    """Minimum number of edges covering every vertex; witness holds edge indices."""
    uncovered = h.vertices & ~h.covered
    if uncovered:
        raise UncoverableError((uncovered & -uncovered).bit_length() - 1)
    if method == "reference":
        size, sel, scanned = _min_set_cover_enum(h.edge_masks, h.vertices)
        return SolveResult(size, frozenset(bits(sel)), scanned)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    value, best, nodes = _set_cover(h, h.vertices, _incident_edges(h), tiebreak=True)
    return SolveResult(value, frozenset(bits(best)), nodes)


def _tc_result(h: Hypergraph, x: int, total: int, explored: int, method: str) -> SolveResult:
    """Finish a TC optimum given the optimal independent part ``x``."""
    if method == "reference":
        _, r, scanned = _min_set_cover_enum(h.edge_masks, x)
        explored += scanned
    else:
        _, r, nodes = _set_cover(h, x, _incident_edges(h), tiebreak=True)
        explored += nodes
    t = h.vertices & ~x
    return SolveResult(total, frozenset(bits(t)), explored, frozenset(bits(r)))


def _tc_reference(h: Hypergraph) -> SolveResult:
    n = h.n
    if n > 16:
        raise CapExceeded(f"reference TC route supports n <= 16, got {n}")
    inc = _incident_edges(h)
    # cover[X] = fewest edges covering X (X within covered vertices)
    size = 1 << n
    cover = [0] * size
    inf = n + 1
    for x in range(1, size):
        low = x & -x
        v = low.bit_length() - 1
        best = inf
        for j in bits(inc[v]):
            c = cover[x & ~h.edge_masks[j]]
            if c < best:
                best = c
        cover[x] = best + 1 if best < inf else inf
    best_total, best_t = None, None
    for x in range(size):
        if x & ~h.covered or any(em & ~x == 0 for em in h.edge_masks):
            continue
        total = n - x.bit_count() + cover[x]
        t = h.vertices & ~x
        if best_total is None or (total, t) < (best_total, best_t):
            best_total, best_t = total, t
    return _tc_result(h, h.vertices & ~best_t, best_total, size, "reference")


def tc_number(h: Hypergraph, method: str = "bnb") -> SolveResult:
    """TC-number: fewest vertices plus edges with the vertices a transversal and
    the edges covering every vertex left out.

    The witness is ``(T, R)`` as ``witness`` / ``edges``; among optima ``T``
    has the smallest mask, then ``R``. Vertices in no edge always go to ``T``.
    """
    if method == "reference":
        return _tc_reference(h)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    # The objective n - |X| + cover(X) never increases when X grows, so the
    # search runs over maximal weakly independent X only.
    n = h.n
    inc = _incident_edges(h)
    emasks = h.edge_masks
    kmax = max((len(e) for e in h.edges), default=1)
    order = list(bits(h.covered))
    explored = 0
    best: list = [n, h.vertices]  # all vertices in T, no edges

    def independent_with(x: int, v: int) -> bool:
        y = x | 1 << v
        return all(em & ~y for j, em in enumerate(emasks) if inc[v] >> j & 1)

    def visit(idx: int, x: int, excluded: int) -> None:
        nonlocal explored
        explored += 1
        if idx == len(order):
            for v in bits(excluded):
                if independent_with(x, v):
                    return
            size = x.bit_count()
            if n - size + -(-size // kmax) > best[0]:
                return
            value, _, nodes = _set_cover(h, x, inc, tiebreak=False)
            explored += nodes
            total = n - size + value
            t = h.vertices & ~x
            if (total, t) < (best[0], best[1]):
                best[0], best[1] = total, t
            return
        v = order[idx]
        if independent_with(x, v):
            visit(idx + 1, x | 1 << v, excluded)
        visit(idx + 1, x, excluded | 1 << v)

    visit(0, 0, 0)
    return _tc_result(h, h.vertices & ~best[1], best[0], explored, "bnb")


def max_weakly_independent_within(
    h: Hypergraph, window: Iterable[int], method: str = "bnb"
) -> SolveResult:
    """Largest ``X`` inside ``window`` containing no edge of ``h``.

    Only edges lying inside the window can be contained in ``X``, so this is
    the window size minus the transversal number of those edges.
    """
    wm = mask_of(window)
    if wm & ~h.vertices:
        raise GraphError("window is not a subset of the vertex set")
    order = list(bits(wm))
    pos = {v: i for i, v in enumerate(order)}
    inside = [mask_of(pos[v] for v in bits(em)) for em in h.edge_masks if em & ~wm == 0]
    if method == "reference":
        size, found, scanned = _np_scan(len(order), _np_hitting(inside))
        t, explored = found[0], scanned
    elif method == "bnb":
        search = _CoverSearch(len(order), [(em, 1, 0) for em in inside])
        size, t = search.min_mask_optimum()
        explored = search.nodes
    else:
        raise ValueError(f"unknown method {method!r}")
    x = frozenset(order[i] for i in range(len(order)) if not t >> i & 1)
    return SolveResult(len(order) - size, x, explored)
