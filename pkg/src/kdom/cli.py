"""``kdom`` command-line interface.

Exit codes: 0 success (or "yes"), 1 property-suite failure or a "no" verdict
under ``--strict``, 2 parse / parameter error, 3 solver cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import families, graphcore, recognition, satreduce, solvers, verify
from .graphcore import CapExceeded, FormatError, Graph, GraphError, Hypergraph

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_CAP = 3

DEFAULT_CAP = {"bnb": 40, "reference": 26}

GRAPH_INVARIANTS = ("gamma", "gammak")
HYPERGRAPH_INVARIANTS = ("tau", "alphaw", "rho", "tc")


class UsageError(ValueError):
    """Invalid parameter combination on the command line."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    seed: int = 0
    n_max: int | None = None
    out: Path | None = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> RunConfig:
        opts = {k: v for k, v in vars(ns).items() if k not in {"command", "seed", "n_max", "out", "handler"}}
        out = getattr(ns, "out", None)
        return cls(ns.command, opts, getattr(ns, "seed", 0), getattr(ns, "n_max", None), Path(out) if out else None)


def _one_based(vs) -> str:
    return "[" + ",".join(str(v + 1) for v in sorted(vs)) + "]"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return graphcore.parse_graph(_read(path))


def _load_hypergraph(path: str) -> Hypergraph:
    return graphcore.parse_hypergraph(_read(path))


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        print(f"wrote {out}")


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"{n} vertices exceed the solver cap {cap} (raise it with --n-max)")


# --- commands ------------------------------------------------------------------------


def cmd_invariant(cfg: RunConfig) -> int:
    o = cfg.options
    which, method = o["which"], o["method"]
    cap = cfg.n_max if cfg.n_max is not None else DEFAULT_CAP[method]
    if which in GRAPH_INVARIANTS:
        g = _load_graph(o["file"])
        _check_cap(g.n, cap)
        k = 1 if which == "gamma" else o["k"]
        if k is None:
            raise UsageError("gammak needs --k")
        res = solvers.gamma_k(g, k, method)
        print(f"value={res.value}")
        print(f"witness={_one_based(res.witness)}")
        if which == "gammak" and k >= 2:
            gm = solvers.gamma(g, method).value
            holds = res.value >= gm + k - 2
            print(f"lower-bound: gamma_k={res.value} >= gamma+k-2={gm + k - 2} {'holds' if holds else 'VIOLATED'}")
        return EXIT_OK
    h = _load_hypergraph(o["file"])
    _check_cap(h.n, cap)
    if which == "tau":
        res = solvers.transversal_number(h, method)
    elif which == "alphaw":
        res = solvers.weak_independence_number(h, method)
    elif which == "rho":
        res = solvers.edge_cover_number(h, method)
    else:
        res = solvers.tc_number(h, method)
    print(f"value={res.value}")
    if which == "rho":
        print(f"witness-edges={_one_based(res.witness)}")
    else:
        print(f"witness={_one_based(res.witness)}")
    if which == "tc":
        print(f"witness-edges={_one_based(res.edges)}")
    return EXIT_OK


def cmd_recognize(cfg: RunConfig) -> int:
    g = _load_graph(cfg.options["file"])
    report = recognition.is_gamma_gamma_k_graph_bipartite(g, cfg.options["k"])
    sys.stdout.write(report.to_dump() if cfg.options.get("dump") else report.to_text())
    return EXIT_FAIL if cfg.options["strict"] and not report else EXIT_OK


def cmd_perfect3(cfg: RunConfig) -> int:
    g = _load_graph(cfg.options["file"])
    shape = recognition.is_gamma_gamma3_perfect(g)
    print(str(shape) if shape else "no")
    return EXIT_FAIL if cfg.options["strict"] and shape is None else EXIT_OK


def _membership(g: Graph, k: int) -> recognition.RecognitionReport | None:
    report = recognition.membership_Bk(g, k)
    sys.stdout.write(report.to_text())
    return report if report else None


def cmd_simplify(cfg: RunConfig) -> int:
    g = _load_graph(cfg.options["file"])
    report = _membership(g, cfg.options["k"])
    if report is None:
        return EXIT_FAIL if cfg.options["strict"] else EXIT_OK
    simple = families.double_incidence_graph(report.underlying, cfg.options["k"])
    comment = "vertex i < {} is input vertex d_order[i]; d_order={}".format(
        report.underlying.n, ",".join(map(str, report.d_order))
    )
    _emit(graphcore.format_graph(simple, [comment]), cfg.out)
    return EXIT_OK


def cmd_extract(cfg: RunConfig) -> int:
    g = _load_graph(cfg.options["file"])
    report = _membership(g, cfg.options["k"])
    if report is None:
        return EXIT_FAIL if cfg.options["strict"] else EXIT_OK
    comment = "vertex i is input vertex d_order[i]; d_order=" + ",".join(map(str, report.d_order))
    _emit(graphcore.format_hypergraph(report.underlying, [comment]), cfg.out)
    return EXIT_OK


def _base_graph(name: str) -> Graph:
    kind, num = name[:1].lower(), name[1:]
    if name.lower().startswith("k") and "," in num:
        a, b = (int(x) for x in num.split(","))
        return families.complete_bipartite(a, b)
    if kind in "cpk" and num.isdigit():
        return {"c": families.cycle_graph, "p": families.path_graph, "k": families.complete_graph}[kind](int(num))
    if Path(name).exists():
        return _load_graph(name)
    raise UsageError(f"unknown base graph {name!r}: use cN, pN, kN, kA,B or a .gr file")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gen(cfg: RunConfig) -> int:
    o = cfg.options
    family, params = o["family"], o["params"]

    def need(count: int, usage: str) -> list[str]:
        if len(params) != count:
            raise UsageError(f"gen {family} expects: {usage}")
        return params

    def as_int(x: str) -> int:
        try:
            return int(x)
        except ValueError:
            raise UsageError(f"expected an integer, got {x!r}") from None

    if family == "sk":
        k, sizes = need(2, "K I1,I2,...")
        shape = families.SkShape(as_int(k), _int_list(sizes))
        _emit(graphcore.format_graph(families.build_Sk(shape), [str(shape)]), cfg.out)
    elif family == "knk":
        n, k = (as_int(x) for x in need(2, "N K"))
        _emit(graphcore.format_hypergraph(families.complete_uniform_hypergraph(n, k), [f"K_{n}^{k}"]), cfg.out)
    elif family == "fk":
        (k,) = (as_int(x) for x in need(1, "K"))
        _emit(graphcore.format_hypergraph(families.build_Fk_example(k), [f"F_{k}"]), cfg.out)
    elif family == "bkstar":
        (path,) = need(1, "HYPERGRAPH_FILE")
        f = _load_hypergraph(path)
        k = f.uniformity
        if k is None:
            raise UsageError("double incidence graph needs a uniform hypergraph")
        _emit(graphcore.format_graph(families.double_incidence_graph(f, k), [f"double incidence graph, k={k}"]), cfg.out)
    elif family == "bk":
        (k,) = (as_int(x) for x in need(1, "K"))
        member = families.random_connected_bipartite_Bk(k, seed=cfg.seed)
        _emit(graphcore.format_graph(member.graph, [f"B_{k} member, seed={cfg.seed}, D={_one_based(member.d)}"]), cfg.out)
    elif family == "blowup":
        base, t = need(2, "BASE T (BASE: cN, pN, kN, kA,B or a .gr file)")
        g = graphcore.lexicographic_blowup(_base_graph(base), as_int(t))
        _emit(graphcore.format_graph(g, [f"{base} blown up by independent sets of size {t}"]), cfg.out)
    elif family == "sat-gadget":
        path, k = need(2, "CNF_FILE K")
        f = satreduce.parse_dimacs(_read(path))
        gg = satreduce.build_gadget(f, as_int(k), check=not o["no_check"])
        _emit(graphcore.format_graph(gg.graph, [f"3-SAT gadget s={f.num_vars} l={len(f.clauses)} k={k}"]), cfg.out)
        roles = satreduce.format_roles(gg)
        if cfg.out is None:
            sys.stdout.write(roles)
        else:
            _emit(roles, cfg.out.with_name(cfg.out.name + ".roles"))
    elif family == "random":
        if not params:
            raise UsageError("gen random expects: graph N P | bipartite A B P | hyp N K M")
        kind, rest = params[0], params[1:]
        try:
            if kind == "graph" and len(rest) == 2:
                g = families.random_graph(int(rest[0]), float(rest[1]), cfg.seed)
            elif kind == "bipartite" and len(rest) == 3:
                g = families.random_connected_bipartite(int(rest[0]), int(rest[1]), float(rest[2]), cfg.seed)
            elif kind == "hyp" and len(rest) == 3:
                h = families.random_uniform_hypergraph(int(rest[0]), int(rest[1]), int(rest[2]), cfg.seed)
                _emit(graphcore.format_hypergraph(h, [f"random seed={cfg.seed}"]), cfg.out)
                return EXIT_OK
            else:
                raise UsageError("gen random expects: graph N P | bipartite A B P | hyp N K M")
        except ValueError as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(str(exc)) from None
        _emit(graphcore.format_graph(g, [f"random seed={cfg.seed}"]), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    o = cfg.options
    suite_cfg = verify.SuiteConfig(
        seed=cfg.seed,
        trials=o["trials"],
        n_max=cfg.n_max if cfg.n_max is not None else 12,
        s_max=o["s_max"],
    )
    result = verify.run_suite(o["suite"], suite_cfg)
    sys.stdout.write(result.summary())
    return EXIT_OK if result.passed else EXIT_FAIL


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kdom",
        description="Exact k-domination invariants, (gamma, gamma_k)-graph recognition and the 3-SAT gadget.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="compute an invariant with a witness")
    p.add_argument("file", help=".gr file for gamma/gammak, .hg file otherwise")
    p.add_argument("which", choices=GRAPH_INVARIANTS + HYPERGRAPH_INVARIANTS)
    p.add_argument("--k", type=int, help="k for gammak")
    p.add_argument("--method", choices=("bnb", "reference"), default="bnb")
    p.add_argument("--n-max", type=int, help="vertex cap (default 40 for bnb, 26 for reference)")
    p.set_defaults(handler=cmd_invariant)

    for name, handler, help_text in (
        ("recognize", cmd_recognize, "decide whether a bipartite graph attains gamma_k = gamma + k - 2"),
        ("simplify", cmd_simplify, "write the gamma_k-simplified graph of a B_k member"),
        ("extract", cmd_extract, "write the underlying hypergraph of a B_k member"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--k", type=int, default=3)
        p.add_argument("--strict", action="store_true", help="exit 1 on a 'no' verdict")
        if name == "recognize":
            p.add_argument("--dump", action="store_true", help="print key=value lines")
        else:
            p.add_argument("--out", help="output file (default: stdout)")
        p.set_defaults(handler=handler)

    p = sub.add_parser("perfect3", help="match a bipartite graph against S_3(i_1, ..., i_r)")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="exit 1 when the graph does not match")
    p.set_defaults(handler=cmd_perfect3)

    p = sub.add_parser("gen", help="generate a graph, hypergraph or gadget")
    p.add_argument("family", choices=("sk", "bkstar", "bk", "knk", "fk", "blowup", "sat-gadget", "random"))
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout); sat-gadget also writes OUT.roles")
    p.add_argument("--no-check", action="store_true", help="sat-gadget: skip the reducibility check")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("verify", help="run a randomised property suite")
    p.add_argument("suite", choices=tuple(verify.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n-max", type=int, help="largest random instance (default 12)")
    p.add_argument("--s-max", type=int, default=6, help="largest variable count for the sat suite")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    handler: Callable[[RunConfig], int] = ns.handler
    cfg = RunConfig.from_namespace(ns)
    try:
        return handler(cfg)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except recognition.RecognitionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FormatError, UsageError, GraphError, satreduce.ReducibilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
