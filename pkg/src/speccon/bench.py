"""Benchmark sweeps over random instances with per-case process isolation.

A sweep is the cross product of the configured n, k, beta, p, q, seed and
solver values (combinations with beta > k are skipped).  Every case runs in
a forked child process so a hung or exploding solver cannot take the whole
run down; a case that exceeds the time limit is reported as "timeout" and
the sweep continues.  Rows come out sorted by case index and are
reproducible for a fixed seed except for the wall-time column.
"""

from __future__ import annotations

import csv
import io as _io
import json
import multiprocessing as mp
import time
from dataclasses import dataclass

from .io import gen_random
from .solvers import SolverRefusal, run_named_solver

CSV_COLUMNS = (
    "case",
    "n",
    "k",
    "beta",
    "p",
    "q",
    "seed",
    "solver",
    "connectable",
    "millis",
    "nodes_explored",
    "trees_enumerated",
    "dp_table_size",
)


@dataclass(frozen=True)
class BenchConfig:
    n_values: tuple[int, ...]
    k_values: tuple[int, ...]
    beta_values: tuple[int, ...]
    p_values: tuple[float, ...]
    q_values: tuple[float, ...]
    seeds: tuple[int, ...]
    solvers: tuple[str, ...]
    timeout_s: float = 60.0

    def __post_init__(self):
        for label in ("n_values", "k_values", "beta_values", "p_values", "q_values", "seeds", "solvers"):
            if not getattr(self, label):
                raise ValueError(f"{label} must be non-empty")
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")

    @classmethod
    def from_json(cls, text: str) -> "BenchConfig":
        """Config document fields: n, k, beta, p, q, seeds, solvers, timeout_s.

        Each of the first six may be a scalar or a list; solvers is a name
        or list of names ("auto", "brute", ...).
        """
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("bench config must be a JSON object")

        def many(key, default=None):
            if key not in doc:
                if default is None:
                    raise ValueError(f"bench config missing field {key!r}")
                return default
            value = doc[key]
            return tuple(value) if isinstance(value, list) else (value,)

        return cls(
            n_values=tuple(int(x) for x in many("n")),
            k_values=tuple(int(x) for x in many("k")),
            beta_values=tuple(int(x) for x in many("beta")),
            p_values=tuple(float(x) for x in many("p")),
            q_values=tuple(float(x) for x in many("q")),
            seeds=tuple(int(x) for x in many("seeds", (0,))),
            solvers=tuple(str(s) for s in many("solvers", ("auto",))),
            timeout_s=float(doc.get("timeout_s", 60.0)),
        )


@dataclass(frozen=True)
class BenchRow:
    case: int
    n: int
    k: int
    beta: int
    p: float
    q: float
    seed: int
    solver: str
    connectable: str
    millis: str
    nodes_explored: str
    trees_enumerated: str
    dp_table_size: str


def _cases(config: BenchConfig):
    index = 0
    for n in config.n_values:
        for k in config.k_values:
            for beta in config.beta_values:
                if beta > k:
                    continue
                for p in config.p_values:
                    for q in config.q_values:
                        for seed in config.seeds:
                            for solver in config.solvers:
                                yield index, n, k, beta, p, q, seed, solver
                                index += 1


def _run_case(conn, n, k, beta, p, q, seed, solver):
    # Child-process body: generate, solve, report through the pipe.
    try:
        network = gen_random(n, k, beta, p, q, seed)
        t0 = time.perf_counter()
        verdict = run_named_solver(network, solver)
        millis = (time.perf_counter() - t0) * 1000.0
        conn.send(
            (
                "true" if verdict.connectable else "false",
                f"{millis:.3f}",
                str(verdict.stats.get("nodes_explored", 0)),
                str(verdict.stats.get("trees_enumerated", 0)),
                str(verdict.stats.get("dp_table_size", 0)),
            )
        )
    except SolverRefusal:
        conn.send(("refused", "", "", "", ""))
    except Exception:
        conn.send(("error", "", "", "", ""))
    finally:
        conn.close()


def run_bench(config: BenchConfig) -> list[BenchRow]:
    """Run the sweep; one row per case, sorted by case index."""
    ctx = mp.get_context("fork")
    rows: list[BenchRow] = []
    for index, n, k, beta, p, q, seed, solver in _cases(config):
        parent, child = ctx.Pipe(duplex=False)
        proc = ctx.Process(
            target=_run_case, args=(child, n, k, beta, p, q, seed, solver)
        )
        proc.start()
        child.close()
        proc.join(config.timeout_s)
        if proc.is_alive():
            proc.terminate()
            proc.join()
            outcome = ("timeout", "", "", "", "")
        elif parent.poll():
            outcome = parent.recv()
        else:
            outcome = ("error", "", "", "", "")
        parent.close()
        rows.append(
            BenchRow(index, n, k, beta, p, q, seed, solver, *outcome)
        )
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([getattr(row, col) for col in CSV_COLUMNS])
    return buf.getvalue()


def write_csv(rows: list[BenchRow], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(rows_to_csv(rows))
