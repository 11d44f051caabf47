"""Generators for the graph and hypergraph families used throughout kdom.

Vertex orderings are part of each generator's contract (golden tests rely
on them); they are spelled out in the individual docstrings.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .graphcore import Graph, GraphError, Hypergraph, hypergraph_is_connected

__all__ = [
    "BkMember",
    "BkParams",
    "BkRecipe",
    "SkShape",
    "build_Bk_member",
    "build_Fk_example",
    "build_Sk",
    "complete_bipartite",
    "complete_graph",
    "complete_uniform_hypergraph",
    "complete_sets",
    "cycle_graph",
    "double_incidence_graph",
    "path_graph",
    "random_bk_recipe",
    "random_connected_bipartite",
    "random_connected_bipartite_Bk",
    "random_connected_uniform_hypergraph",
    "random_graph",
    "random_uniform_hypergraph",
    "two_k23_bridge",
]


# --- small named graphs ------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """``K_{a,b}`` with the ``a``-side first."""
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def two_k23_bridge() -> Graph:
    """Two copies of ``K_{2,3}`` joined by one edge between degree-2 vertices.

    Copy one is ``{0,1 | 2,3,4}``, copy two ``{5,6 | 7,8,9}``; the bridge is
    ``4-9``, so the maximum degree stays 3 and the graph stays bipartite.
    """
    edges = [(a, b) for a in (0, 1) for b in (2, 3, 4)]
    edges += [(a, b) for a in (5, 6) for b in (7, 8, 9)]
    edges.append((4, 9))
    return Graph.from_edges(10, edges)


# --- S_k ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkShape:
    """Parameters ``(k; i_1, ..., i_r)`` of a subdivided multi-star."""

    k: int
    branch_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "branch_sizes", tuple(self.branch_sizes))
        if self.k < 2:
            raise ValueError("S_k needs k >= 2")
        if not self.branch_sizes:
            raise ValueError("S_k needs at least one branch")
        if any(i < self.k for i in self.branch_sizes):
            raise ValueError(f"every branch size must be >= k={self.k}")

    @property
    def r(self) -> int:
        return len(self.branch_sizes)

    @property
    def order(self) -> int:
        return 1 + (self.k - 2) + self.r + sum(self.branch_sizes)

    def canonical(self) -> SkShape:
        return SkShape(self.k, tuple(sorted(self.branch_sizes)))

    def __str__(self) -> str:
        return f"S_{self.k}({','.join(map(str, self.branch_sizes))})"


def build_Sk(shape: SkShape) -> Graph:
    """Star ``K_{1,r}`` with branch ``j`` made of ``i_j`` subdivided parallel
    edges, plus ``k-2`` false twins of the centre.

    Order: centre, the ``k-2`` twins, the ``r`` leaves, then the subdivision
    vertices grouped by branch.
    """
    hub = shape.k - 1
    leaves = range(hub, hub + shape.r)
    edges = []
    nxt = hub + shape.r
    for leaf, size in zip(leaves, shape.branch_sizes):
        for s in range(nxt, nxt + size):
            edges.append((leaf, s))
            edges.extend((c, s) for c in range(hub))
        nxt += size
    return Graph.from_edges(nxt, edges)


# --- hypergraphs --------------------------------------------------------------------


def complete_uniform_hypergraph(n: int, k: int) -> Hypergraph:
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < k:
        raise ValueError(f"K_n^k needs n >= k, got n={n}, k={k}")
    return Hypergraph(n, itertools.combinations(range(n), k))


def build_Fk_example(k: int) -> Hypergraph:
    """``F_k`` for even ``k = 2l >= 4``: ``W = {0..l-1}``, ``U = {l..2l}``,
    and one edge ``V - {u}`` per ``u`` in ``U``."""
    if k < 4 or k % 2:
        raise ValueError("F_k is defined for even k >= 4")
    half = k // 2
    n = 2 * half + 1
    return Hypergraph(n, [[v for v in range(n) if v != u] for u in range(half, n)])


def _require_connected_uniform(f: Hypergraph, k: int) -> None:
    if f.m == 0:
        raise GraphError("the underlying hypergraph needs at least one edge")
    if not f.is_uniform(k):
        raise GraphError(f"hypergraph is not {k}-uniform")
    if not hypergraph_is_connected(f):
        raise GraphError("hypergraph is not connected")


def double_incidence_graph(f: Hypergraph, k: int) -> Graph:
    """The unique member of ``B_k*(f)``.

    Order: the vertices of ``f``, then ``x_1^1, x_1^2, x_2^1, ...`` where both
    vertices of pair ``i`` are adjacent to exactly edge ``i``.
    """
    _require_connected_uniform(f, k)
    edges = []
    for i, e in enumerate(f.edges):
        for x in (f.n + 2 * i, f.n + 2 * i + 1):
            edges.extend((v, x) for v in sorted(e))
    return Graph.from_edges(f.n + 2 * f.m, edges)


def complete_sets(f: Hypergraph, k: int, max_size: int | None = None) -> list[frozenset[int]]:
    """Vertex sets of size >= k all of whose k-subsets are edges of ``f``."""
    edges = set(f.edges)
    out = []
    top = f.n if max_size is None else min(max_size, f.n)
    for size in range(k, top + 1):
        for s in itertools.combinations(range(f.n), size):
            if all(frozenset(c) in edges for c in itertools.combinations(s, k)):
                out.append(frozenset(s))
    return out


@dataclass(frozen=True)
class BkRecipe:
    """How to grow a ``B_k`` member from its underlying hypergraph ``f``.

    ``twin_counts[i]`` extra false twins are added for the pair of edge ``i``;
    each set in ``y_attachments`` gets one new vertex adjacent to exactly it.
    """

    f: Hypergraph
    twin_counts: tuple[int, ...]
    y_attachments: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "twin_counts", tuple(self.twin_counts))
        object.__setattr__(self, "y_attachments", tuple(frozenset(s) for s in self.y_attachments))
        if len(self.twin_counts) != self.f.m:
            raise ValueError("need one twin count per hyperedge")
        if any(t < 0 for t in self.twin_counts):
            raise ValueError("twin counts must be non-negative")

    def validate(self, k: int) -> None:
        _require_connected_uniform(self.f, k)
        edges = set(self.f.edges)
        for s in self.y_attachments:
            if len(s) < k:
                raise GraphError(f"attachment {sorted(s)} has fewer than k={k} vertices")
            if any(not 0 <= v < self.f.n for v in s):
                raise GraphError(f"attachment {sorted(s)} out of range")
            for c in itertools.combinations(sorted(s), k):
                if frozenset(c) not in edges:
                    raise GraphError(
                        f"attachment {sorted(s)} is not complete: {list(c)} is not an edge"
                    )


@dataclass(frozen=True)
class BkMember:
    """A generated ``B_k`` graph with its vertex roles.

    ``d`` is ``V(f)``, ``pairs[i]`` the two witnesses of edge ``i``,
    ``twins[i]`` the extra twins of edge ``i`` and ``y`` the attachment vertices.
    """

    graph: Graph
    d: frozenset[int]
    pairs: tuple[tuple[int, int], ...]
    twins: tuple[tuple[int, ...], ...]
    y: tuple[int, ...]
    recipe: BkRecipe = field(compare=False)


def build_Bk_member(recipe: BkRecipe, k: int) -> BkMember:
    """Order: double incidence graph first, then extra twins edge by edge,
    then one vertex per attachment."""
    recipe.validate(k)
    f = recipe.f
    base = double_incidence_graph(f, k)
    edges = base.edges()
    nxt = base.n
    twins = []
    for e, count in zip(f.edges, recipe.twin_counts):
        made = tuple(range(nxt, nxt + count))
        for x in made:
            edges.extend((v, x) for v in sorted(e))
        twins.append(made)
        nxt += count
    ys = []
    for s in recipe.y_attachments:
        edges.extend((v, nxt) for v in sorted(s))
        ys.append(nxt)
        nxt += 1
    g = Graph.from_edges(nxt, edges)
    pairs = tuple((f.n + 2 * i, f.n + 2 * i + 1) for i in range(f.m))
    return BkMember(g, frozenset(range(f.n)), pairs, tuple(twins), tuple(ys), recipe)


# --- random instances ---------------------------------------------------------------


def random_graph(n: int, edge_prob: float, seed: int) -> Graph:
    """Erdos-Renyi ``G(n, p)``."""
    if n < 0 or not 0.0 <= edge_prob <= 1.0:
        raise ValueError("need n >= 0 and 0 <= edge_prob <= 1")
    rng = random.Random(seed)
    return Graph.from_edges(
        n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < edge_prob]
    )


def random_connected_bipartite(a: int, b: int, edge_prob: float, seed: int) -> Graph:
    """Random connected bipartite graph with sides ``0..a-1`` and ``a..a+b-1``.

    A random spanning tree across the sides is laid down first, then every
    other cross pair is added with probability ``edge_prob``.
    """
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    rng = random.Random(seed)
    left, right = list(range(a)), list(range(a, a + b))
    rng.shuffle(left)
    rng.shuffle(right)
    placed_l, placed_r = [left.pop()], []
    edges = set()
    while left or right:
        # attach a new vertex to an already placed vertex of the other side
        options = []
        if right:
            options.append("r")
        if left and placed_r:
            options.append("l")
        side = rng.choice(options)
        if side == "r":
            v = right.pop()
            u = rng.choice(placed_l)
            placed_r.append(v)
        else:
            u = left.pop()
            v = rng.choice(placed_r)
            placed_l.append(u)
        edges.add((u, v) if u < v else (v, u))
    for u in range(a):
        for v in range(a, a + b):
            if (u, v) not in edges and rng.random() < edge_prob:
                edges.add((u, v))
    return Graph.from_edges(a + b, sorted(edges))


def random_uniform_hypergraph(n: int, k: int, m: int, seed: int) -> Hypergraph:
    """``m`` distinct random ``k``-subsets of ``{0..n-1}``."""
    if k < 2 or n < k:
        raise ValueError("need n >= k >= 2")
    if not 0 <= m <= math.comb(n, k):
        raise ValueError(f"cannot draw {m} distinct edges from C({n},{k})")
    rng = random.Random(seed)
    pool = list(itertools.combinations(range(n), k))
    return Hypergraph(n, sorted(rng.sample(pool, m)))


def random_connected_uniform_hypergraph(n: int, k: int, extra_edges: int, seed: int) -> Hypergraph:
    """Connected ``k``-uniform hypergraph on ``n`` vertices.

    Edges are grown so each new one meets the covered part, until every vertex
    is covered; then up to ``extra_edges`` further random edges are added.
    """
    if k < 2 or n < k:
        raise ValueError("need n >= k >= 2")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = [frozenset(order[:k])]
    covered = set(order[:k])
    rest = order[k:]
    while rest:
        fresh = rng.randint(1, min(k - 1, len(rest)))
        new = rest[:fresh]
        rest = rest[fresh:]
        old = rng.sample(sorted(covered), k - fresh)
        edges.append(frozenset(new + old))
        covered.update(new)
    present = set(edges)
    pool = [frozenset(c) for c in itertools.combinations(range(n), k) if frozenset(c) not in present]
    edges.extend(rng.sample(pool, min(extra_edges, len(pool))))
    return Hypergraph(n, [sorted(e) for e in edges])


@dataclass(frozen=True)
class BkParams:
    """Size knobs for :func:`random_connected_bipartite_Bk`."""

    min_order: int = 3
    max_order: int = 6
    max_extra_edges: int = 3
    max_twins: int = 2
    twin_prob: float = 0.3
    max_y: int = 2
    y_prob: float = 0.5


def random_bk_recipe(k: int, params: BkParams, seed: int) -> BkRecipe:
    rng = random.Random(seed)
    n = rng.randint(max(k, params.min_order), max(k, params.max_order))
    f = random_connected_uniform_hypergraph(n, k, rng.randint(0, params.max_extra_edges), rng.randrange(2**32))
    twins = tuple(
        rng.randint(1, params.max_twins) if params.max_twins and rng.random() < params.twin_prob else 0
        for _ in f.edges
    )
    ys: list[frozenset[int]] = []
    if params.max_y:
        candidates = complete_sets(f, k)
        for _ in range(params.max_y):
            if rng.random() < params.y_prob:
                ys.append(rng.choice(candidates))
    return BkRecipe(f, twins, tuple(ys))


def random_connected_bipartite_Bk(k: int, params: BkParams | None = None, seed: int = 0) -> BkMember:
    """A random member of ``B_k``; membership holds by construction."""
    return build_Bk_member(random_bk_recipe(k, params or BkParams(), seed), k)
