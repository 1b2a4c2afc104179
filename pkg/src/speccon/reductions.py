"""Instance generators from classic hard problems, with witness extraction.

Each construction maps a source instance (CNF satisfiability, Hamiltonian
path, vertex cover) to a cognitive radio network whose connectability
matches the source answer, and ships a forward map from source objects to
generated ids.  The extractors invert a connecting witness back into a
source solution and verify it with a direct check before returning, which
makes the constructions usable as cross-validation oracles for the solvers.

CNF input follows the standard DIMACS format; graphs are edge lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    CognitiveRadioNetwork,
    SpectrumAssignment,
    is_connected,
    realize,
)


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables 1..variable_count; literals are signed ints."""

    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.variable_count < 0:
            raise ValueError("variable_count must be non-negative")
        for idx, clause in enumerate(self.clauses):
            if len(clause) == 0:
                raise ValueError(f"clause {idx} is empty")
            seen = set()
            for lit in clause:
                v = abs(lit)
                if lit == 0 or v > self.variable_count:
                    raise ValueError(f"clause {idx}: literal {lit} out of range")
                if lit in seen:
                    raise ValueError(f"clause {idx}: duplicate literal {lit}")
                seen.add(lit)

    @classmethod
    def build(cls, variable_count: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(variable_count, tuple(tuple(c) for c in clauses))


def clause_is_positive(clause: Sequence[int]) -> bool:
    return all(lit > 0 for lit in clause)


def clause_is_negative(clause: Sequence[int]) -> bool:
    return all(lit < 0 for lit in clause)


@dataclass(frozen=True)
class UniformCnfFormula(CnfFormula):
    """CNF in which every clause is all-positive or all-negative."""

    def __post_init__(self):
        super().__post_init__()
        for idx, clause in enumerate(self.clauses):
            if not (clause_is_positive(clause) or clause_is_negative(clause)):
                raise ValueError(f"clause {idx} mixes positive and negative literals")


@dataclass(frozen=True)
class ReductionArtifact:
    """A generated network plus bookkeeping to reach back to the source."""

    network: CognitiveRadioNetwork
    forward_map: dict[str, int]
    kind: str
    source: object = None


def sat_to_uniform(formula: CnfFormula) -> tuple[UniformCnfFormula, dict[int, int]]:
    """Equisatisfiable uniform CNF from an arbitrary CNF.

    Every variable x with a negative occurrence gets a fresh companion y
    standing for its negation: negative occurrences become positive y
    literals, and the clauses (x or y) and (not-x or not-y) force y = not-x.
    Returns the uniform formula and {x -> y} for the renamed variables.
    """
    neg_vars = sorted(
        {abs(l) for clause in formula.clauses for l in clause if l < 0}
    )
    companion = {
        x: formula.variable_count + rank + 1 for rank, x in enumerate(neg_vars)
    }
    clauses = [
        tuple(l if l > 0 else companion[-l] for l in clause)
        for clause in formula.clauses
    ]
    for x in neg_vars:
        clauses.append((x, companion[x]))
        clauses.append((-x, -companion[x]))
    return (
        UniformCnfFormula(formula.variable_count + len(neg_vars), tuple(clauses)),
        companion,
    )


def uniform_to_speccon(formula: UniformCnfFormula, beta: int) -> ReductionArtifact:
    """Uniform-CNF satisfiability as connectability with k = beta + 1.

    Channels are 0..beta.  Each variable becomes a user with the full
    channel set; each clause becomes a user holding channel 1 (positive
    clause) or 0 (negative clause); anchor users pin the channels 2..beta:
    one global anchor on channel 2, and per-variable anchors on each of
    2..beta attached to their variable.  Every budget is beta, so a
    variable user, after serving its anchors, has exactly one antenna left
    for channel 0 or 1 - its truth value.  All anchor attachments use the
    full range 2..beta so no anchor is isolated.
    """
    if beta < 2:
        raise ValueError("beta must be at least 2")
    nv = formula.variable_count
    m = len(formula.clauses)
    k = beta + 1
    full = frozenset(range(k))
    maps: list[frozenset[int]] = []
    names: list[str] = []
    forward: dict[str, int] = {}
    for i in range(1, nv + 1):
        forward[f"x{i}"] = len(maps)
        names.append(f"x{i}")
        maps.append(full)
    for j, clause in enumerate(formula.clauses, start=1):
        forward[f"c{j}"] = len(maps)
        names.append(f"c{j}")
        maps.append(frozenset({1}) if clause_is_positive(clause) else frozenset({0}))
    forward["y2"] = len(maps)
    names.append("y2")
    maps.append(frozenset({2}))
    for i in range(1, nv + 1):
        for l in range(2, beta + 1):
            forward[f"y{i}_{l}"] = len(maps)
            names.append(f"y{i}_{l}")
            maps.append(frozenset({l}))
    edges = set()
    for j, clause in enumerate(formula.clauses, start=1):
        for lit in clause:
            edges.add((forward[f"x{abs(lit)}"], forward[f"c{j}"]))
    for i in range(1, nv + 1):
        edges.add((forward[f"x{i}"], forward["y2"]))
        for l in range(2, beta + 1):
            edges.add((forward[f"x{i}"], forward[f"y{i}_{l}"]))
    network = CognitiveRadioNetwork.from_maps(
        maps,
        beta,
        channel_count=k,
        edges=edges,
        user_names=names,
        channel_names=[str(c) for c in range(k)],
    )
    return ReductionArtifact(network, forward, "uniform-sat", formula)


def uniform_to_two_channel(formula: UniformCnfFormula) -> ReductionArtifact:
    """Uniform-CNF satisfiability with two channels and mixed budgets.

    Variable users hold both channels with budget 1 (their choice is the
    truth value), clause users hold the single channel matching their
    polarity, and one hub user holds both channels with budget 2 so it can
    reach variable users on either side.
    """
    nv = formula.variable_count
    maps: list[frozenset[int]] = []
    names: list[str] = []
    budgets: list[int] = []
    forward: dict[str, int] = {}
    for i in range(1, nv + 1):
        forward[f"x{i}"] = len(maps)
        names.append(f"x{i}")
        maps.append(frozenset({0, 1}))
        budgets.append(1)
    for j, clause in enumerate(formula.clauses, start=1):
        forward[f"c{j}"] = len(maps)
        names.append(f"c{j}")
        maps.append(frozenset({1}) if clause_is_positive(clause) else frozenset({0}))
        budgets.append(1)
    forward["y"] = len(maps)
    names.append("y")
    maps.append(frozenset({0, 1}))
    budgets.append(2)
    edges = set()
    for j, clause in enumerate(formula.clauses, start=1):
        for lit in clause:
            edges.add((forward[f"x{abs(lit)}"], forward[f"c{j}"]))
    for i in range(1, nv + 1):
        edges.add((forward[f"x{i}"], forward["y"]))
    network = CognitiveRadioNetwork.from_maps(
        maps,
        budgets,
        channel_count=2,
        edges=edges,
        user_names=names,
        channel_names=["0", "1"],
    )
    return ReductionArtifact(network, forward, "two-channel", formula)


def pad_channels(artifact: ReductionArtifact, k_target: int) -> ReductionArtifact:
    """Grow the channel set without changing connectability.

    The new channels are added to user 0's spectrum map only; since nobody
    else holds them, opening one can never realize an edge, so optimal
    assignments ignore them and the decision is unchanged.
    """
    network = artifact.network
    if k_target <= network.channel_count:
        raise ValueError("k_target must exceed the current channel count")
    if network.n == 0:
        raise ValueError("cannot pad a network with no users")
    fresh = frozenset(range(network.channel_count, k_target))
    users = list(network.users)
    first = users[0]
    users[0] = type(first)(first.id, first.spectrum_map | fresh, first.budget)
    channel_names = None
    if network.channel_names is not None:
        channel_names = tuple(network.channel_names) + tuple(
            str(c) for c in sorted(fresh)
        )
    padded = CognitiveRadioNetwork(
        users=tuple(users),
        channel_count=k_target,
        potential_edges=network.potential_edges,
        complete=network.complete,
        user_names=network.user_names,
        channel_names=channel_names,
    )
    return ReductionArtifact(padded, dict(artifact.forward_map), artifact.kind, artifact.source)


def hamiltonian_to_crn(n: int, edges: Iterable[tuple[int, int]]) -> ReductionArtifact:
    """Hamiltonian path existence as connectability with budget 2.

    Channels are the source edges; each vertex becomes a user holding the
    channels of its incident edges, every budget is 2, and the potential
    graph is complete.  A realized edge between two users requires a shared
    channel, which is exactly the source edge joining them, so a connected
    realization has maximum degree 2 and traces a Hamiltonian path or
    cycle in the source graph.
    """
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    edge_list = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range")
    degree = [0] * n
    for u, v in edge_list:
        degree[u] += 1
        degree[v] += 1
    if n >= 2 and any(d == 0 for d in degree):
        raise ValueError("isolated vertices make a Hamiltonian path impossible; rejected")
    forward: dict[str, int] = {}
    for c, (u, v) in enumerate(edge_list):
        forward[f"edge{u}_{v}"] = c
    maps = [
        frozenset(
            c for c, (a, b) in enumerate(edge_list) if a == v or b == v
        )
        for v in range(n)
    ]
    for v in range(n):
        forward[f"v{v}"] = v
    network = CognitiveRadioNetwork.from_maps(
        maps,
        2,
        channel_count=len(edge_list),
        complete=True,
        user_names=[f"v{v}" for v in range(n)],
        channel_names=[f"edge{u}_{v}" for u, v in edge_list],
    )
    return ReductionArtifact(network, forward, "hamiltonian-path", (n, tuple(edge_list)))


def vertex_cover_to_crn(
    n: int, edges: Iterable[tuple[int, int]], r: int
) -> ReductionArtifact:
    """Vertex cover of size at most r as connectability on a star.

    Channels are the source vertices.  Each source edge becomes a user
    holding its two endpoint channels with budget 2; a monitor user holds
    every channel with budget r and is the center of a star potential
    graph.  The monitor's opened channels must hit every edge user's pair,
    i.e. form a vertex cover of size at most r.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if r < 1:
        raise ValueError("r must be at least 1")
    edge_list = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range")
    forward: dict[str, int] = {f"v{v}": v for v in range(n)}
    maps: list[frozenset[int]] = []
    names: list[str] = []
    budgets: list[int] = []
    for u, v in edge_list:
        forward[f"e{u}_{v}"] = len(maps)
        names.append(f"e{u}_{v}")
        maps.append(frozenset({u, v}))
        budgets.append(2)
    monitor = len(maps)
    forward["M"] = monitor
    names.append("M")
    maps.append(frozenset(range(n)))
    budgets.append(r)
    star = {(i, monitor) for i in range(len(edge_list))}
    network = CognitiveRadioNetwork.from_maps(
        maps,
        budgets,
        channel_count=n,
        edges=star,
        user_names=names,
        channel_names=[f"v{v}" for v in range(n)],
    )
    return ReductionArtifact(network, forward, "vertex-cover", (n, tuple(edge_list), r))


def _require_connecting(network: CognitiveRadioNetwork, witness: SpectrumAssignment) -> None:
    if not is_connected(realize(network, witness)):
        raise ValueError("witness does not connect the generated network")


def extract_sat(artifact: ReductionArtifact, witness: SpectrumAssignment) -> dict[int, bool]:
    """Truth assignment from a connecting witness of a SAT-shaped artifact.

    A variable is true when its user opens channel 1, false otherwise (the
    construction leaves each variable user at most one antenna for channels
    0 and 1).  The result is checked against the source formula by a direct
    clause scan before being returned.
    """
    if artifact.kind not in ("uniform-sat", "two-channel"):
        raise ValueError(f"not a SAT-shaped artifact: {artifact.kind}")
    _require_connecting(artifact.network, witness)
    formula = artifact.source
    assignment = {
        i: 1 in witness.opened[artifact.forward_map[f"x{i}"]]
        for i in range(1, formula.variable_count + 1)
    }
    for clause in formula.clauses:
        if not any(
            assignment[lit] if lit > 0 else not assignment[-lit] for lit in clause
        ):
            raise AssertionError(
                "internal error: extracted assignment fails a source clause"
            )
    return assignment


def extract_hamiltonian(
    artifact: ReductionArtifact, witness: SpectrumAssignment
) -> list[int]:
    """Hamiltonian path (vertex sequence) from a connecting witness."""
    if artifact.kind != "hamiltonian-path":
        raise ValueError(f"not a Hamiltonian-path artifact: {artifact.kind}")
    network = artifact.network
    _require_connecting(network, witness)
    n, source_edges = artifact.source
    if n == 1:
        return [0]
    rg = realize(network, witness)
    source = set(source_edges)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in rg.realized_edges:
        if (u, v) not in source:
            raise AssertionError("internal error: realized edge outside source graph")
        adj[u].append(v)
        adj[v].append(u)
    if any(len(a) > 2 for a in adj):
        raise AssertionError("internal error: realized degree above 2")
    endpoints = [v for v in range(n) if len(adj[v]) == 1]
    if endpoints:
        start = min(endpoints)
    else:
        # Hamiltonian cycle: break it deterministically at vertex 0.
        drop = max(adj[0])
        adj[0].remove(drop)
        adj[drop].remove(0)
        start = drop
    path = [start]
    prev = -1
    cur = start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        path.append(cur)
    if sorted(path) != list(range(n)):
        raise AssertionError("internal error: walk does not cover every vertex once")
    for a, b in zip(path, path[1:]):
        if (min(a, b), max(a, b)) not in source:
            raise AssertionError("internal error: path step is not a source edge")
    return path


def extract_vertex_cover(
    artifact: ReductionArtifact, witness: SpectrumAssignment
) -> frozenset[int]:
    """Vertex cover from a connecting witness: the monitor's opened channels."""
    if artifact.kind != "vertex-cover":
        raise ValueError(f"not a vertex-cover artifact: {artifact.kind}")
    _require_connecting(artifact.network, witness)
    n, source_edges, r = artifact.source
    cover = frozenset(witness.opened[artifact.forward_map["M"]])
    if len(cover) > r:
        raise AssertionError("internal error: cover exceeds the budget r")
    for u, v in source_edges:
        if u not in cover and v not in cover:
            raise AssertionError(f"internal error: edge ({u}, {v}) uncovered")
    return cover


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF; raises ValueError with line context on bad input."""
    header: tuple[int, int] | None = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ValueError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed problem line")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise ValueError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ValueError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not pending:
                    raise ValueError(f"line {lineno}: empty clause")
                clauses.append(tuple(pending))
                pending.clear()
            else:
                pending.append(lit)
    if header is None:
        raise ValueError("missing 'p cnf' problem line")
    if pending:
        raise ValueError("unterminated clause at end of input")
    nv, m = header
    if len(clauses) != m:
        raise ValueError(f"problem line declares {m} clauses, found {len(clauses)}")
    return CnfFormula(nv, tuple(clauses))


def to_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse '<u> <v>' lines (0-based); vertex count is max id + 1.

    Blank lines and '#' comments are skipped.  Isolated vertices beyond the
    largest mentioned id cannot be expressed in this format.
    """
    edges = set()
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: bad vertex id") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: vertex ids must be non-negative")
        if u == v:
            raise ValueError(f"line {lineno}: self-loop")
        top = max(top, u, v)
        edges.add((min(u, v), max(u, v)))
    return top + 1, sorted(edges)
