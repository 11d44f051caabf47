"""Graph and hypergraph types backed by integer bit masks.

Vertex sets are plain Python ints used as bit masks: vertex ``v`` belongs
to the set ``s`` iff ``s >> v & 1``. Public functions accept any iterable
of vertex indices and convert with :func:`mask_of`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CapExceeded",
    "FormatError",
    "Graph",
    "GraphError",
    "Hypergraph",
    "PartiteSplit",
    "bits",
    "connected_components",
    "format_graph",
    "format_hypergraph",
    "graph_square_induced",
    "hypergraph_is_connected",
    "incidence_graph",
    "induced_subgraph",
    "is_bipartite",
    "is_connected",
    "lexicographic_blowup",
    "mask_of",
    "parse_graph",
    "parse_hypergraph",
    "read_graph",
    "read_hypergraph",
    "set_vertex_cap",
    "two_section",
    "vertex_cap",
    "write_graph",
    "write_hypergraph",
]

_HARD_LIMIT = 128
_vertex_cap = 64


class GraphError(ValueError):
    """Invalid graph or hypergraph data."""


class CapExceeded(GraphError):
    """The vertex count is above the configured cap."""


class FormatError(ValueError):
    """Malformed ``.gr`` / ``.hg`` / DIMACS text."""


def vertex_cap() -> int:
    return _vertex_cap


def set_vertex_cap(cap: int) -> int:
    """Set the per-graph vertex cap (at most 128). Returns the old value."""
    global _vertex_cap
    if not 1 <= cap <= _HARD_LIMIT:
        raise ValueError(f"vertex cap must be in [1, {_HARD_LIMIT}], got {cap}")
    old, _vertex_cap = _vertex_cap, cap
    return old


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if v < 0:
            raise GraphError(f"negative vertex index {v}")
        m |= 1 << v
    return m


def _check_cap(n: int) -> None:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    if n > _vertex_cap:
        raise CapExceeded(f"{n} vertices exceeds the cap of {_vertex_cap}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bit mask.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        _check_cap(self.n)
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has an out-of-range neighbour")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels length does not match n")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> Graph:
        _check_cap(n)
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def vertices(self) -> int:
        """Mask of all vertices."""
        return (1 << self.n) - 1

    @cached_property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    @property
    def max_degree(self) -> int:
        return max((nb.bit_count() for nb in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((nb.bit_count() for nb in self.adj), default=0)

    def label(self, v: int) -> str:
        """Display label; 1-based index when no labels are attached."""
        return self.labels[v] if self.labels is not None else str(v + 1)

    def with_labels(self, labels: Sequence[str] | None) -> Graph:
        return Graph(self.n, self.adj, tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class PartiteSplit:
    class_a: frozenset[int]
    class_b: frozenset[int]

    @property
    def mask_a(self) -> int:
        return mask_of(self.class_a)

    @property
    def mask_b(self) -> int:
        return mask_of(self.class_b)


@dataclass(frozen=True, init=False)
class Hypergraph:
    """Hypergraph on ``0..n-1`` with edges of size at least two.

    Duplicate edges are dropped (first occurrence keeps its position).
    """

    n: int
    edges: tuple[frozenset[int], ...]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()) -> None:
        _check_cap(n)
        seen: set[frozenset[int]] = set()
        kept: list[frozenset[int]] = []
        for e in edges:
            fe = frozenset(e)
            if len(fe) < 2:
                raise GraphError(f"hyperedge {sorted(fe)} has fewer than 2 vertices")
            if any(not 0 <= v < n for v in fe):
                raise GraphError(f"hyperedge {sorted(fe)} out of range for n={n}")
            if fe not in seen:
                seen.add(fe)
                kept.append(fe)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(kept))

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(e) for e in self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return sum(1 for em in self.edge_masks if em >> v & 1)

    @cached_property
    def covered(self) -> int:
        """Mask of vertices lying in at least one edge."""
        c = 0
        for em in self.edge_masks:
            c |= em
        return c

    @property
    def uniformity(self) -> int | None:
        """Common edge size, or ``None`` if edgeless or mixed."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_uniform(self, k: int) -> bool:
        return all(len(e) == k for e in self.edges)

    @property
    def min_edge_size(self) -> int | None:
        return min((len(e) for e in self.edges), default=None)

    def induced(self, vertices: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
        """Induced subhypergraph, relabelled to ``0..|S|-1`` in increasing order."""
        order = tuple(sorted(set(vertices)))
        s = mask_of(order)
        pos = {v: i for i, v in enumerate(order)}
        sub = [[pos[v] for v in e] for e, em in zip(self.edges, self.edge_masks) if em & ~s == 0]
        return Hypergraph(len(order), sub), order

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(e)) for e in self.edges]


def _component_masks(n: int, adj: Sequence[int]) -> list[int]:
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components sorted by their minimum vertex."""
    return [frozenset(bits(c)) for c in _component_masks(g.n, g.adj)]


def is_connected(g: Graph) -> bool:
    return len(_component_masks(g.n, g.adj)) <= 1


def is_bipartite(g: Graph) -> PartiteSplit | None:
    """BFS 2-colouring; the lowest vertex of every component goes to class A."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    b = frozenset(v for v in range(g.n) if color[v] == 1)
    return PartiteSplit(a, b)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``G[s]`` and the order-preserving map new index -> old vertex."""
    order = tuple(sorted(set(s)))
    for v in order:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph of order {g.n}")
    pos = {v: i for i, v in enumerate(order)}
    adj = tuple(mask_of(pos[u] for u in bits(g.adj[v] & mask_of(order))) for v in order)
    labels = tuple(g.labels[v] for v in order) if g.labels is not None else None
    return Graph(len(order), adj, labels), order


def _induced_mask(g: Graph, s: int) -> Graph:
    """Fast path of :func:`induced_subgraph` for a mask argument (no labels)."""
    order = list(bits(s))
    pos = {v: i for i, v in enumerate(order)}
    return Graph(len(order), tuple(mask_of(pos[u] for u in bits(g.adj[v] & s)) for v in order))


def hypergraph_is_connected(h: Hypergraph) -> bool:
    if h.n <= 1:
        return True
    reach = 1
    grown = True
    while grown:
        grown = False
        for em in h.edge_masks:
            if em & reach and em & ~reach:
                reach |= em
                grown = True
    return reach == h.vertices


def two_section(h: Hypergraph) -> Graph:
    adj = [0] * h.n
    for em in h.edge_masks:
        for v in bits(em):
            adj[v] |= em & ~(1 << v)
    return Graph(h.n, tuple(adj))


def incidence_graph(h: Hypergraph) -> Graph:
    """Bipartite incidence graph: vertices ``0..n-1`` then edge-vertices ``n..n+m-1``."""
    edges = [(v, h.n + j) for j, e in enumerate(h.edges) for v in sorted(e)]
    return Graph.from_edges(h.n + h.m, edges)


def graph_square_induced(g: Graph, d: Iterable[int]) -> Graph:
    """``G^2[d]``: vertices of ``d`` (in increasing order) joined when at distance <= 2."""
    order = sorted(set(d))
    for v in order:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph of order {g.n}")
    dm = mask_of(order)
    pos = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        ball = g.adj[v]
        for u in bits(g.adj[v]):
            ball |= g.adj[u]
        ball &= dm & ~(1 << v)
        adj.append(mask_of(pos[u] for u in bits(ball)))
    return Graph(len(order), tuple(adj))


def lexicographic_blowup(g: Graph, t: int) -> Graph:
    """``G o K̄_t``: vertex ``v`` becomes the independent twins ``v*t .. v*t+t-1``."""
    if t < 1:
        raise GraphError("blow-up factor must be at least 1")
    block = (1 << t) - 1
    adj = []
    for v in range(g.n):
        nb = 0
        for u in bits(g.adj[v]):
            nb |= block << (u * t)
        adj.extend([nb] * t)
    return Graph(g.n * t, tuple(adj))


# --- text formats -----------------------------------------------------------


def _content_lines(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        rows.append(parts)
    return rows


def _ints(tokens: Sequence[str], where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"non-integer token in {where}: {' '.join(tokens)}") from None


def parse_graph(text: str) -> Graph:
    rows = _content_lines(text)
    if not rows or rows[0][:2] != ["p", "graph"] or len(rows[0]) != 4:
        raise FormatError("expected header 'p graph <n> <m>'")
    n, m = _ints(rows[0][2:], "header")
    if n < 0 or m < 0:
        raise FormatError("negative count in header")
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if row[0] != "e" or len(row) != 3:
            raise FormatError(f"bad edge line: {' '.join(row)}")
        u, v = _ints(row[1:], "edge line")
        if not 0 <= u < v < n:
            raise FormatError(f"edge line needs 0 <= u < v < n: {u} {v}")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate edge")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p graph {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    rows = _content_lines(text)
    if not rows or rows[0][:2] != ["p", "hyp"] or len(rows[0]) != 4:
        raise FormatError("expected header 'p hyp <n> <m>'")
    n, m = _ints(rows[0][2:], "header")
    if n < 0 or m < 0:
        raise FormatError("negative count in header")
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} hyperedges, found {len(body)}")
    edges = []
    for row in body:
        if row[0] != "h" or len(row) < 3:
            raise FormatError(f"bad hyperedge line: {' '.join(row)}")
        vs = _ints(row[1:], "hyperedge line")
        if any(not 0 <= v < n for v in vs) or len(set(vs)) != len(vs):
            raise FormatError(f"hyperedge out of range or repeated vertex: {' '.join(row)}")
        edges.append(vs)
    try:
        return Hypergraph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def format_hypergraph(h: Hypergraph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p hyp {h.n} {h.m}")
    lines.extend("h " + " ".join(map(str, e)) for e in h.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(path: str | Path, g: Graph, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))


def read_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(path: str | Path, h: Hypergraph, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_hypergraph(h, comments))
