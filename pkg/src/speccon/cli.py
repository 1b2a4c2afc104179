"""Command-line front end.

Subcommands: solve, gen, reduce, bench, verify-td.  Machine-readable
results go to stdout, diagnostics to stderr.  Exit codes: 0 = success
(connectable, for solve), 1 = negative answer (not connectable / invalid
decomposition), 2 = usage or parse error, 3 = solver refusal.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import BenchConfig, run_bench, rows_to_csv
from .io import InstanceParseError, gen_random, parse_instance, serialize_instance
from .reductions import (
    UniformCnfFormula,
    hamiltonian_to_crn,
    pad_channels,
    parse_dimacs,
    parse_edge_list,
    sat_to_uniform,
    to_dimacs,
    uniform_to_speccon,
    uniform_to_two_channel,
    vertex_cover_to_crn,
)
from .solvers import SOLVER_NAMES, SolverRefusal, run_named_solver
from .treedecomp import from_pace_text, verify


def _diag(message: str) -> None:
    print(message, file=sys.stderr)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_output(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_solve(args: argparse.Namespace) -> int:
    network = parse_instance(_read_input(args.instance))
    verdict = run_named_solver(network, args.solver)
    doc: dict = {"connectable": verdict.connectable}
    if args.emit_assignment and verdict.connectable:
        doc["witness"] = [
            {
                "name": network.user_name(i),
                "opened": [network.channel_name(c) for c in sorted(opened)],
            }
            for i, opened in enumerate(verdict.witness.opened)
        ]
    doc["solver"] = verdict.solver_name
    if args.stats:
        doc["stats"] = verdict.stats
    print(json.dumps(doc, indent=2))
    return 0 if verdict.connectable else 1


def _cmd_gen(args: argparse.Namespace) -> int:
    network = gen_random(args.n, args.k, args.beta, args.p, args.q, args.seed)
    _write_output(args.out, serialize_instance(network))
    return 0


def _load_uniform(args: argparse.Namespace) -> UniformCnfFormula:
    formula = parse_dimacs(_read_input(args.cnf))
    try:
        return UniformCnfFormula(formula.variable_count, formula.clauses)
    except ValueError as exc:
        raise ValueError(
            f"{exc}; run 'reduce sat-to-uniform' first to uniformize the formula"
        ) from None


def _cmd_reduce(args: argparse.Namespace) -> int:
    if args.construction == "sat-to-uniform":
        formula = parse_dimacs(_read_input(args.cnf))
        uniform, companion = sat_to_uniform(formula)
        lines = [
            f"c y-map x{x} -> {y}" for x, y in sorted(companion.items())
        ]
        text = ("\n".join(lines) + "\n" if lines else "") + to_dimacs(uniform)
        _write_output(args.out, text)
        if args.map_out:
            _write_output(
                args.map_out,
                json.dumps({f"x{x}": y for x, y in sorted(companion.items())}, indent=2)
                + "\n",
            )
        return 0

    if args.construction == "uniform-sat":
        artifact = uniform_to_speccon(_load_uniform(args), args.beta)
    elif args.construction == "two-channel":
        artifact = uniform_to_two_channel(_load_uniform(args))
    elif args.construction == "ham":
        n, edges = parse_edge_list(_read_input(args.graph))
        artifact = hamiltonian_to_crn(n, edges)
    elif args.construction == "vc":
        if args.r is None:
            raise ValueError("vc requires --r (cover size bound)")
        n, edges = parse_edge_list(_read_input(args.graph))
        artifact = vertex_cover_to_crn(n, edges, args.r)
    else:  # argparse choices make this unreachable
        raise ValueError(f"unknown construction {args.construction!r}")

    if args.pad_to is not None:
        artifact = pad_channels(artifact, args.pad_to)
    text = serialize_instance(
        artifact.network,
        extra={"_kind": artifact.kind, "_forward_map": artifact.forward_map},
    )
    _write_output(args.out, text)
    if args.map_out:
        _write_output(
            args.map_out, json.dumps(artifact.forward_map, indent=2) + "\n"
        )
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    config = BenchConfig.from_json(_read_input(args.config))
    rows = run_bench(config)
    _write_output(args.out, rows_to_csv(rows))
    if args.plot_dir:
        from .plots import render_bench_plots

        for path in render_bench_plots(rows, args.plot_dir):
            _diag(f"wrote {path}")
    return 0


def _cmd_verify_td(args: argparse.Namespace) -> int:
    network = parse_instance(_read_input(args.instance))
    td = from_pace_text(_read_input(args.td))
    ok, why = verify(network.n, network.edge_set(), td)
    if ok:
        print(f"valid: width {td.width}")
        return 0
    print(f"invalid: {why}")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="speccon",
        description="Exact solvers for spectrum-assignment connectivity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide connectability of an instance")
    p_solve.add_argument("instance", help="instance document path, or - for stdin")
    p_solve.add_argument(
        "--solver", choices=SOLVER_NAMES, default="auto", help="solver to run"
    )
    p_solve.add_argument(
        "--emit-assignment",
        action="store_true",
        help="include the connecting assignment in the output",
    )
    p_solve.add_argument(
        "--stats", action="store_true", help="include solver counters in the output"
    )
    p_solve.set_defaults(func=_cmd_solve)

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument("--n", type=int, required=True, help="number of users")
    p_gen.add_argument("--k", type=int, required=True, help="number of channels")
    p_gen.add_argument("--beta", type=int, required=True, help="antenna budget")
    p_gen.add_argument("--p", type=float, default=0.5, help="potential edge probability")
    p_gen.add_argument("--q", type=float, default=0.5, help="per-channel map probability")
    p_gen.add_argument("--seed", type=int, default=0, help="random seed")
    p_gen.add_argument("--out", help="output path (default stdout)")
    p_gen.set_defaults(func=_cmd_gen)

    p_reduce = sub.add_parser(
        "reduce", help="generate an instance from a hard-problem source"
    )
    p_reduce.add_argument(
        "construction",
        choices=("uniform-sat", "two-channel", "ham", "vc", "sat-to-uniform"),
    )
    p_reduce.add_argument(
        "--cnf", default="-", help="DIMACS CNF input path, or - for stdin"
    )
    p_reduce.add_argument(
        "--graph", default="-", help="edge-list input path, or - for stdin"
    )
    p_reduce.add_argument(
        "--beta", type=int, default=2, help="antenna budget (uniform-sat)"
    )
    p_reduce.add_argument("--r", type=int, help="cover size bound (vc)")
    p_reduce.add_argument(
        "--pad-to", type=int, help="pad the channel set up to this count"
    )
    p_reduce.add_argument("--out", help="output path (default stdout)")
    p_reduce.add_argument("--map-out", help="write the forward map as JSON here")
    p_reduce.set_defaults(func=_cmd_reduce)

    p_bench = sub.add_parser("bench", help="run a benchmark sweep")
    p_bench.add_argument("config", help="bench config path, or - for stdin")
    p_bench.add_argument("--out", help="CSV output path (default stdout)")
    p_bench.add_argument("--plot-dir", help="render summary figures into this directory")
    p_bench.set_defaults(func=_cmd_bench)

    p_verify = sub.add_parser(
        "verify-td", help="check a tree decomposition against an instance"
    )
    p_verify.add_argument("instance", help="instance document path, or - for stdin")
    p_verify.add_argument("td", help="decomposition file path")
    p_verify.set_defaults(func=_cmd_verify_td)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except InstanceParseError as exc:
        _diag(f"parse error: {exc}")
        return 2
    except SolverRefusal as exc:
        _diag(f"solver refusal: {exc}")
        return 3
    except (ValueError, OSError) as exc:
        _diag(f"error: {exc}")
        return 2


def entry() -> None:
    sys.exit(run_cli(sys.argv[1:]))
