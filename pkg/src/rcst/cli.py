"""Command-line front end.

Exit codes: 0 success (including a ``disconnected`` result), 1 usage or
parse error, 2 input rejected (overflow bound, budget, enumeration cap,
invalid tree), 3 every trial returned ``fail``, 4 construction invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, NoReturn, Sequence, TextIO

from .costs import routing_cost_edges, src_cost, two_source_cost
from .errors import (
    BudgetExceeded,
    CapExceeded,
    ConstructionInvalid,
    InvalidGraph,
    NotATree,
    OverflowBound,
    ParseError,
)
from .experiment import run_experiment
from .graph import Graph, TwoSourceSpec, is_connected, verify_spanning_tree
from .io import format_tree, parse_graph, parse_tree_edges
from .isolation import DEFAULT_DENOM_EXP, DEFAULT_NUMER_EXP, PerturbationConfig, perturb
from .mrct import DEFAULT_BUDGET, parallel_mrct
from .oracle import DEFAULT_CAP, exact_mrct, exact_sroct, exact_w2mrct
from .outcomes import Disconnected, Fail
from .parallel import resolve_workers
from .sroct import parallel_sroct
from .two_mrct import weighted_2mrct

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_FAIL, EXIT_INVALID = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:  # argparse would exit with status 2
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def _add_common(p: argparse.ArgumentParser, seed_required: bool = True) -> None:
    p.add_argument("file", type=Path)
    p.add_argument("--seed", type=int, required=seed_required, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--denom-exp", type=int, default=DEFAULT_DENOM_EXP)
    p.add_argument("--numer-exp", type=int, default=DEFAULT_NUMER_EXP)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("text", "kv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rcst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mrct", help="approximate minimum routing cost spanning tree")
    _add_common(p)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("sroct", help="approximate sum-requirement communication spanning tree")
    _add_common(p)

    p = sub.add_parser("w2mrct", help="approximate weighted two-source routing cost spanning tree")
    _add_common(p)
    p.add_argument("--s1", type=int, required=True)
    p.add_argument("--s2", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_fraction, required=True)

    p = sub.add_parser("check-unique", help="perturb once and test strong min-uniqueness")
    _add_common(p)

    p = sub.add_parser("exact", help="exact optimum by spanning-tree enumeration")
    p.add_argument("problem", choices=("mrct", "sroct", "w2mrct"))
    p.add_argument("file", type=Path)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--s1", type=int)
    p.add_argument("--s2", type=int)
    p.add_argument("--lambda", dest="lam", type=_fraction)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("cost", help="evaluate a given spanning tree")
    p.add_argument("file", type=Path)
    p.add_argument("tree", type=Path)
    p.add_argument("--s1", type=int)
    p.add_argument("--s2", type=int)
    p.add_argument("--lambda", dest="lam", type=_fraction)
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("experiment", help="run a seeded oracle-comparison experiment")
    p.add_argument("file", type=Path)
    p.add_argument("--threads", type=int, default=None)
    return parser


def _read_graph(path: Path) -> Graph:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(data)


def _workers(requested: int | None) -> int:
    try:
        return resolve_workers(requested)
    except ValueError as exc:
        raise UsageError(f"bad thread count: {exc}") from None


def _two_source(args: argparse.Namespace, g: Graph, required: bool) -> TwoSourceSpec | None:
    flags = (args.s1, args.s2, args.lam)
    if all(x is None for x in flags):
        if g.sources is None and required:
            raise UsageError("two-source problems need --s1, --s2 and --lambda (or a 'sources' line)")
        return g.sources
    if any(x is None for x in flags):
        raise UsageError("--s1, --s2 and --lambda must be given together")
    for s in (args.s1, args.s2):
        if not 0 <= s < g.n:
            raise UsageError(f"source {s} out of range")
    lam = args.lam
    try:
        return TwoSourceSpec(args.s1, args.s2, lam.numerator, lam.denominator)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _trials(
    args: argparse.Namespace,
    out: TextIO,
    err: TextIO,
    solve: Callable[[PerturbationConfig], object],
    emit: Callable[[object], list[str]],
) -> int:
    """Retry on ``fail`` with seeds ``seed, seed+1, ...``."""
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    try:
        base = PerturbationConfig(args.seed, args.denom_exp, args.numer_exp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    last: Fail | None = None
    for i in range(args.trials):
        cfg = base.with_seed(args.seed + i)
        res = solve(cfg)
        if isinstance(res, Disconnected):
            out.write("disconnected\n")
            return EXIT_OK
        if isinstance(res, Fail):
            s, k, x = res.report.witness
            err.write(f"trial seed={cfg.seed}: not strongly min-unique (witness s={s} k={k} x={x})\n")
            last = res
            continue
        lines = emit(res)
        if args.format == "kv":
            lines = ["status ok", f"solver {args.command}", f"seed {cfg.seed}", f"trials-used {i + 1}"] + lines
        out.write("\n".join(lines) + "\n")
        return EXIT_OK
    out.write("fail\n")
    if args.format == "kv" and last is not None:
        s, k, x = last.report.witness
        out.write(f"witness s={s} k={k} x={x}\n")
    return EXIT_FAIL


def _cmd_mrct(args, out, err) -> int:
    g = _read_graph(args.file)
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    workers = _workers(args.threads)

    def emit(res) -> list[str]:
        lines = format_tree(res.tree, [("routing", res.original_cost), ("routing-scaled", res.scaled_cost)])
        lines.append(f"ratio-bound {res.guarantee}")
        if args.format == "kv":
            lines.append("sequence " + ",".join(map(str, res.sequence)))
            lines.append(f"candidates {res.candidates}")
        return lines

    return _trials(args, out, err, lambda cfg: parallel_mrct(g, args.epsilon, cfg, workers, args.budget), emit)


def _cmd_sroct(args, out, err) -> int:
    g = _read_graph(args.file)
    workers = _workers(args.threads)

    def emit(res) -> list[str]:
        costs = [("src", res.original_src_cost)]
        if res.scaled_src_cost is not None:
            costs.append(("src-scaled", res.scaled_src_cost))
        lines = format_tree(res.tree, costs)
        lines += [f"root {res.root}", f"slack {res.slack}", f"ratio-bound {res.guarantee}"]
        if args.format == "kv":
            lines.append(f"branch {res.branch}")
        return lines

    return _trials(args, out, err, lambda cfg: parallel_sroct(g, cfg, workers), emit)


def _cmd_w2mrct(args, out, err) -> int:
    g = _read_graph(args.file)
    spec = _two_source(args, g, required=True)
    workers = _workers(args.threads)

    def emit(res) -> list[str]:
        costs = [("two-source", res.original_cost)]
        if res.scaled_cost is not None:
            costs.append(("two-source-scaled", res.scaled_cost))
        lines = format_tree(res.tree, costs)
        lines.append(f"lambda {spec.lam}")
        if res.partition is not None:
            lines.append(f"z1-size {len(res.partition.z1)}")
            lines.append("bridge {} {}".format(*res.qpath.bridge))
        lines += [f"slack {res.slack}", f"ratio-bound {res.guarantee}"]
        if args.format == "kv":
            lines.append(f"branch {res.branch}")
        return lines

    return _trials(args, out, err, lambda cfg: weighted_2mrct(g, spec, cfg, workers), emit)


def _cmd_check_unique(args, out, err) -> int:
    g = _read_graph(args.file)
    try:
        cfg = PerturbationConfig(args.seed, args.denom_exp, args.numer_exp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sw = perturb(g, cfg)
    report = sw.report
    out.write(f"unique: {str(report.is_strongly_min_unique).lower()}\n")
    if report.witness is not None:
        s, k, x = report.witness
        out.write(f"witness: s={s} k={k} x={x}\n")
    return EXIT_OK


def _cmd_exact(args, out, err) -> int:
    g = _read_graph(args.file)
    if not is_connected(g):
        out.write("disconnected\n")
        return EXIT_OK
    if args.problem == "mrct":
        res, name = exact_mrct(g, cap=args.cap), "routing"
    elif args.problem == "sroct":
        res, name = exact_sroct(g, cap=args.cap), "src"
    else:
        spec = _two_source(args, g, required=True)
        res, name = exact_w2mrct(g, spec, cap=args.cap), "two-source"
    lines = format_tree(res.tree, [(name, res.cost)])
    lines.append(f"trees {res.trees_examined}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_cost(args, out, err) -> int:
    g = _read_graph(args.file)
    try:
        n, edges = parse_tree_edges(Path(args.tree).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {args.tree}: {exc.strerror}") from None
    if n != g.n:
        raise NotATree("wrong-edge-count", f"tree has {n} vertices, graph has {g.n}")
    try:
        tree = verify_spanning_tree(g, edges)
    except KeyError as exc:
        raise NotATree("not-an-edge", str(exc)) from None
    costs = [("routing", routing_cost_edges(tree)), ("src", src_cost(tree))]
    spec = _two_source(args, g, required=False)
    if spec is not None:
        costs.append(("two-source", two_source_cost(tree, spec)))
    out.write("\n".join(format_tree(tree, costs)) + "\n")
    return EXIT_OK


def _cmd_experiment(args, out, err) -> int:
    try:
        spec = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from None
    report = run_experiment(spec, workers=_workers(args.threads or 1))
    lines = report.lines()
    if lines:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


COMMANDS = {
    "mrct": _cmd_mrct,
    "sroct": _cmd_sroct,
    "w2mrct": _cmd_w2mrct,
    "check-unique": _cmd_check_unique,
    "exact": _cmd_exact,
    "cost": _cmd_cost,
    "experiment": _cmd_experiment,
}


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(list(argv))
        return COMMANDS[args.command](args, out, err)
    except (UsageError, ParseError) as exc:
        err.write(f"rcst: {exc}\n")
        return EXIT_USAGE
    except (OverflowBound, BudgetExceeded, CapExceeded, NotATree, InvalidGraph) as exc:
        err.write(f"rcst: {exc}\n")
        return EXIT_INPUT
    except ConstructionInvalid as exc:
        err.write(f"rcst: construction invalid: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))
