"""3-SAT to ``gamma(G) < gamma_k(G) - k + 2`` reduction.

A formula over ``s`` variables with ``l`` clauses becomes a graph of order
``3s + l + k + 1``; it is satisfiable exactly when the domination number
drops below ``s + 2`` while ``gamma_k`` stays at ``k + s``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .graphcore import CapExceeded, FormatError, Graph, Hypergraph, bits, mask_of
from .solvers import gamma, gamma_k, is_dominating, is_k_dominating

__all__ = [
    "BiconditionalViolation",
    "CnfFormula",
    "GadgetGraph",
    "ReducibilityError",
    "SatCertificate",
    "build_gadget",
    "certify_biconditional",
    "check_reducibility",
    "format_dimacs",
    "format_roles",
    "gadget_underlying",
    "parse_dimacs",
    "parse_roles",
    "random_reducible_formula",
    "satisfying_assignment",
]


class ReducibilityError(ValueError):
    """Some three variables meet every clause."""


class BiconditionalViolation(AssertionError):
    """Satisfiability and the domination gap disagree; this is a bug."""


@dataclass(frozen=True)
class CnfFormula:
    """Exact 3-CNF; literals are DIMACS integers (``-3`` is "not x3")."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 0:
            raise ValueError("variable count must be non-negative")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            vs = [abs(lit) for lit in c]
            if any(not 1 <= v <= self.num_vars for v in vs):
                raise ValueError(f"clause {c} uses a variable outside 1..{self.num_vars}")
            if len(set(vs)) != 3:
                raise ValueError(f"clause {c} repeats a variable")

    def var_mask(self, j: int) -> int:
        return mask_of(abs(lit) - 1 for lit in self.clauses[j])


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    lits: list[int] = []
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "%":
            break
        if parts[0] == "p":
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad header: {raw.strip()}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormatError(f"bad header: {raw.strip()}") from None
            continue
        if header is None:
            raise FormatError("clause before 'p cnf' header")
        try:
            lits.extend(int(t) for t in parts)
        except ValueError:
            raise FormatError(f"non-integer literal in: {raw.strip()}") from None
    if header is None:
        raise FormatError("missing 'p cnf <vars> <clauses>' header")
    s, m = header
    if lits and lits[-1] != 0:
        raise FormatError("last clause is not terminated by 0")
    clauses = []
    cur: list[int] = []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            if abs(lit) > s:
                raise FormatError(f"literal {lit} out of range for {s} variables")
            cur.append(lit)
    if len(clauses) != m:
        raise FormatError(f"header announces {m} clauses, found {len(clauses)}")
    try:
        return CnfFormula(s, tuple(clauses))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


def check_reducibility(f: CnfFormula) -> bool:
    """Every three variables are avoided entirely by at least one clause."""
    masks = [f.var_mask(j) for j in range(len(f.clauses))]
    for triple in itertools.combinations(range(f.num_vars), 3):
        tm = mask_of(triple)
        if not any(cm & tm == 0 for cm in masks):
            return False
    return True


def satisfying_assignment(f: CnfFormula) -> tuple[bool, ...] | None:
    """First satisfying assignment by brute force (x1 is the lowest bit)."""
    pos = [mask_of(lit - 1 for lit in c if lit > 0) for c in f.clauses]
    neg = [mask_of(-lit - 1 for lit in c if lit < 0) for c in f.clauses]
    for a in range(1 << f.num_vars):
        if all(a & p or ~a & q for p, q in zip(pos, neg)):
            return tuple(bool(a >> i & 1) for i in range(f.num_vars))
    return None


@dataclass(frozen=True)
class GadgetGraph:
    """Reduction graph with a role name per vertex.

    Order: ``x1^t, x1^f, v1, ..., xs^t, xs^f, vs, c1..cl, c*, v{s+1}, v0^1..v0^{k-1}``.
    """

    graph: Graph
    roles: tuple[str, ...]
    num_vars: int
    num_clauses: int
    k: int

    def x_true(self, i: int) -> int:
        return 3 * (i - 1)

    def x_false(self, i: int) -> int:
        return 3 * (i - 1) + 1

    def v(self, i: int) -> int:
        """``v_i`` for ``1 <= i <= s + 1``."""
        if i == self.num_vars + 1:
            return self.c_star + 1
        return 3 * (i - 1) + 2

    def c(self, j: int) -> int:
        return 3 * self.num_vars + j - 1

    @property
    def c_star(self) -> int:
        return 3 * self.num_vars + self.num_clauses

    @property
    def hubs(self) -> tuple[int, ...]:
        start = self.c_star + 2
        return tuple(range(start, start + self.k - 1))

    @property
    def k_dominating_core(self) -> frozenset[int]:
        """``{v_1, ..., v_{s+1}}`` plus the hubs."""
        return frozenset([self.v(i) for i in range(1, self.num_vars + 2)] + list(self.hubs))


def build_gadget(f: CnfFormula, k: int, check: bool = True) -> GadgetGraph:
    """Build the reduction graph.

    The ``k-1`` hubs see every vertex except ``v_1..v_{s+1}`` and each other;
    they are false twins. ``check=False`` skips the reducibility requirement
    (the construction itself is defined for any formula).
    """
    if k < 2:
        raise ValueError("the reduction needs k >= 2")
    if check and not check_reducibility(f):
        raise ReducibilityError("some three variables meet every clause")
    s, ell = f.num_vars, len(f.clauses)
    roles = []
    for i in range(1, s + 1):
        roles += [f"x{i}^t", f"x{i}^f", f"v{i}"]
    roles += [f"c{j}" for j in range(1, ell + 1)]
    roles += ["c*", f"v{s + 1}"]
    roles += [f"v0^{r}" for r in range(1, k)]
    gg = GadgetGraph(Graph.empty(0), tuple(roles), s, ell, k)
    edges = []
    for i in range(1, s + 1):
        edges += [(gg.x_true(i), gg.v(i)), (gg.x_false(i), gg.v(i))]
        edges += [(gg.x_true(i), gg.c_star), (gg.x_false(i), gg.c_star)]
    for j, clause in enumerate(f.clauses, start=1):
        for lit in clause:
            x = gg.x_true(lit) if lit > 0 else gg.x_false(-lit)
            edges.append((x, gg.c(j)))
        edges.append((gg.c(j), gg.v(s + 1)))
    edges.append((gg.c_star, gg.v(s + 1)))
    v_set = {gg.v(i) for i in range(1, s + 2)}
    hubs = set(gg.hubs)
    for h in gg.hubs:
        edges += [(u, h) for u in range(len(roles)) if u not in v_set and u not in hubs]
    graph = Graph.from_edges(len(roles), edges)
    return GadgetGraph(graph, tuple(roles), s, ell, k)


def gadget_underlying(gg: GadgetGraph) -> Hypergraph:
    """Hypergraph on the ``k``-dominating core (in increasing vertex order)
    whose edges are the distinct core-neighbourhoods of the other vertices."""
    core = gg.k_dominating_core
    order = sorted(core)
    pos = {v: i for i, v in enumerate(order)}
    cm = mask_of(core)
    edges = []
    for u in range(gg.graph.n):
        if u not in core:
            edges.append([pos[v] for v in bits(gg.graph.adj[u] & cm)])
    return Hypergraph(len(order), edges)


def format_roles(gg: GadgetGraph) -> str:
    return "".join(f"role {v} {name}\n" for v, name in enumerate(gg.roles))


def parse_roles(text: str) -> dict[int, str]:
    roles = {}
    for raw in text.splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] != "role" or len(parts) != 3:
            raise FormatError(f"bad role line: {raw.strip()}")
        roles[int(parts[1])] = parts[2]
    return roles


@dataclass(frozen=True)
class SatCertificate:
    satisfiable: bool
    assignment: tuple[bool, ...] | None
    order: int
    gamma: int
    gamma_k: int
    k: int
    dominating_from_assignment: frozenset[int] | None

    @property
    def gap_holds(self) -> bool:
        """``gamma < gamma_k - k + 2``."""
        return self.gamma < self.gamma_k - self.k + 2


def certify_biconditional(f: CnfFormula, k: int, n_max: int = 48) -> SatCertificate:
    """Check "satisfiable iff gamma < gamma_k - k + 2" on one instance exactly.

    Raises :class:`BiconditionalViolation` if anything disagrees with the
    construction's guarantees.
    """
    order = 3 * f.num_vars + len(f.clauses) + k + 1
    if order > n_max:
        raise CapExceeded(f"gadget order {order} exceeds the solver cap {n_max}")
    gg = build_gadget(f, k)
    g = gg.graph
    assignment = satisfying_assignment(f)
    gam = gamma(g).value
    gk = gamma_k(g, k).value
    dprime = None
    problems = []
    if g.n != order:
        problems.append(f"order {g.n} != {order}")
    if gk != k + f.num_vars:
        problems.append(f"gamma_k {gk} != k + s = {k + f.num_vars}")
    if not is_k_dominating(g, gg.k_dominating_core, k):
        problems.append("core set is not k-dominating")
    if assignment is not None:
        picks = [gg.x_true(i) if val else gg.x_false(i) for i, val in enumerate(assignment, start=1)]
        dprime = frozenset(picks + [gg.c_star])
        if len(dprime) != f.num_vars + 1 or not is_dominating(g, dprime):
            problems.append("assignment set is not a dominating set of size s + 1")
    cert = SatCertificate(assignment is not None, assignment, g.n, gam, gk, k, dprime)
    if cert.satisfiable != cert.gap_holds:
        problems.append(f"satisfiable={cert.satisfiable} but gamma={gam}, gamma_k={gk}")
    if problems:
        raise BiconditionalViolation("; ".join(problems))
    return cert


def random_reducible_formula(s: int, extra: int, seed: int) -> CnfFormula:
    """Random 3-CNF over ``s >= 6`` variables passing :func:`check_reducibility`.

    ``extra`` random clauses come first; then, for every triple of variables
    that meets all clauses so far, a random clause on variables avoiding it is
    appended. Polarities are uniform.
    """
    if s < 6:
        raise ValueError("no 3-CNF on fewer than 6 variables is reducible")
    rng = random.Random(seed)

    def clause(pool: Sequence[int]) -> tuple[int, int, int]:
        vs = sorted(rng.sample(list(pool), 3))
        return tuple(v if rng.random() < 0.5 else -v for v in vs)

    clauses = [clause(range(1, s + 1)) for _ in range(extra)]
    triples = list(itertools.combinations(range(1, s + 1), 3))
    rng.shuffle(triples)
    for t in triples:
        if not any(not set(t) & {abs(x) for x in c} for c in clauses):
            clauses.append(clause([v for v in range(1, s + 1) if v not in t]))
    return CnfFormula(s, tuple(clauses))


def read_dimacs(path: str | Path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text())


__all__.append("read_dimacs")
