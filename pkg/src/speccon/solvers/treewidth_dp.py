"""Dynamic program over a nice tree decomposition of the potential graph.

A state at a decomposition node is a tuple of opened channel sets for the
bag vertices together with a partition of the bag: one block per connected
component of the realization induced on the vertices seen in the node's
subtree.  Lifting a child state drops its forgotten vertices, and a block
that loses its last bag vertex is discarded outright, because decomposition
edges covering that component are all below the current node and it could
never be reconnected.  Merges come from realized bag-internal edges and,
at join nodes, from blocks sharing a vertex.  A root state is accepting
when a single block remains, so both answers are exact; positives
additionally carry a witness rebuilt from back-pointers and re-validated
against the full network before the verdict leaves the solver.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from ..model import CognitiveRadioNetwork, SpectrumAssignment, Verdict
from ..treedecomp import NiceTreeDecomposition, verify
from .common import (
    SolverRefusal,
    admissible_masks,
    finish_no,
    finish_yes,
    new_stats,
    reject_invalid,
    trivial_verdict,
)

# A state is (opened_masks, partition), both aligned with the sorted bag;
# partition labels blocks by first occurrence, e.g. (0, 0, 1).
State = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class BagDpTable:
    """Per-node feasible states with back-pointers to the child states
    they were lifted from, aligned with the decomposition's node indices
    and sorted bags."""

    bags: tuple[tuple[int, ...], ...]
    tables: tuple[dict[State, tuple[State, ...]], ...]
    root: int


def _check_nice_shape(ntd: NiceTreeDecomposition) -> str | None:
    b = len(ntd.bags)
    if not (0 <= ntd.root < b):
        return "root index out of range"
    if len(ntd.children) != b:
        return "children table does not match bag count"
    seen = [False] * b
    stack = [ntd.root]
    seen[ntd.root] = True
    count = 1
    while stack:
        i = stack.pop()
        chs = ntd.children[i]
        if len(chs) not in (0, 2):
            return f"node {i} has {len(chs)} children (must be 0 or 2)"
        for c in chs:
            if not (0 <= c < b) or seen[c]:
                return "children do not form a tree"
            seen[c] = True
            count += 1
            stack.append(c)
    if count != b:
        return "children do not form a tree"
    return None


def _partition(t: int, groups: list[list[int]], pairs: list[tuple[int, int]],
               masks: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical block labels after merging groups and realized pairs."""
    parent = list(range(t))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for group in groups:
        for b in group[1:]:
            ra, rb = find(group[0]), find(b)
            if ra != rb:
                parent[rb] = ra
    for a, b in pairs:
        if masks[a] & masks[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    labels: dict[int, int] = {}
    out = []
    for a in range(t):
        r = find(a)
        if r not in labels:
            labels[r] = len(labels)
        out.append(labels[r])
    return tuple(out)


def bag_dp_tables(
    network: CognitiveRadioNetwork, ntd: NiceTreeDecomposition
) -> BagDpTable:
    """Bottom-up feasible-state tables; see the module docstring.

    Tuples enumerate non-empty admissible sets per bag vertex in ascending
    mask order (an empty set can never carry a realized edge, and every
    vertex of a connected realization on two or more users needs one).
    """
    reject_invalid(network)
    shape = _check_nice_shape(ntd)
    if shape is not None:
        raise SolverRefusal(f"invalid nice decomposition: {shape}")
    edge_set = network.edge_set()
    map_masks = network.map_masks()
    budgets = [u.budget for u in network.users]

    b = len(ntd.bags)
    bags = tuple(tuple(sorted(bag)) for bag in ntd.bags)
    tables: list[dict[State, tuple[State, ...]] | None] = [None] * b

    post: list[int] = []
    stack = [ntd.root]
    while stack:
        i = stack.pop()
        post.append(i)
        stack.extend(ntd.children[i])
    post.reverse()

    for i in post:
        bag = bags[i]
        t = len(bag)
        pos = {v: a for a, v in enumerate(bag)}
        pairs = [
            (pos[u], pos[v])
            for u, v in edge_set
            if u in pos and v in pos
        ]
        # For each child: shared vertices as (parent position, child
        # position), and an index of liftable states keyed by the masks
        # they pin on those shared positions.
        lifted = []
        for c in ntd.children[i]:
            cbag = bags[c]
            shared = [(pos[v], cbag.index(v)) for v in bag if v in cbag]
            ppos = [pp for pp, _ in shared]
            cpos = [cp for _, cp in shared]
            index: dict[tuple[int, ...], list[tuple[list[list[int]], State]]] = {}
            for state in tables[c]:
                ctup, cpart = state
                if set(cpart) - {cpart[a] for a in cpos}:
                    continue  # a component would lose its last bag vertex
                key = tuple(ctup[a] for a in cpos)
                blocks: dict[int, list[int]] = {}
                for pp, cp in shared:
                    blocks.setdefault(cpart[cp], []).append(pp)
                index.setdefault(key, []).append((list(blocks.values()), state))
            lifted.append((ppos, index))

        adm = [admissible_masks(map_masks[v], budgets[v]) for v in bag]
        table: dict[State, tuple[State, ...]] = {}
        for tup in itertools.product(*adm):
            if not lifted:
                part = _partition(t, [], pairs, tup)
                table.setdefault((tup, part), ())
                continue
            options = []
            for ppos, index in lifted:
                entries = index.get(tuple(tup[a] for a in ppos))
                if entries is None:
                    options = None
                    break
                options.append(entries)
            if options is None:
                continue
            for combo in itertools.product(*options):
                groups = [g for entry_groups, _ in combo for g in entry_groups]
                part = _partition(t, groups, pairs, tup)
                table.setdefault((tup, part), tuple(st for _, st in combo))
        tables[i] = table
    return BagDpTable(bags, tuple(tables), ntd.root)


def solve_treewidth_dp(
    network: CognitiveRadioNetwork, ntd: NiceTreeDecomposition
) -> Verdict:
    """Exact decision over a verified nice tree decomposition.

    Refuses when the decomposition is invalid for the potential graph or
    not in rooted-binary shape.  Positive answers carry a re-validated
    witness.
    """
    reject_invalid(network)
    shape = _check_nice_shape(ntd)
    if shape is not None:
        raise SolverRefusal(f"invalid nice decomposition: {shape}")
    ok, why = verify(network.n, network.edge_set(), ntd)
    if not ok:
        raise SolverRefusal(f"invalid tree decomposition: {why}")
    t0 = time.perf_counter()
    stats = new_stats()
    quick = trivial_verdict(network, "treewidth-dp", stats, t0)
    if quick is not None:
        return quick

    dp = bag_dp_tables(network, ntd)
    stats["dp_table_size"] = sum(len(t) for t in dp.tables)

    root_pick = next(
        (state for state in dp.tables[dp.root] if max(state[1]) == 0), None
    )
    if root_pick is None:
        return finish_no("treewidth-dp", stats, t0)

    # Witness rebuild: walk the stored back-pointers, fixing each bag to
    # the child states its tuple was lifted from.  Shared vertices agree
    # by construction, so each vertex gets exactly one opened set.
    sets = [-1] * network.n
    stack = [(dp.root, root_pick)]
    while stack:
        i, state = stack.pop()
        tup = state[0]
        for a, v in enumerate(dp.bags[i]):
            if sets[v] == -1:
                sets[v] = tup[a]
            elif sets[v] != tup[a]:
                raise AssertionError("internal error: inconsistent bag tuples")
        stack.extend(zip(ntd.children[i], dp.tables[i][state]))
    if any(s == -1 for s in sets):
        raise AssertionError("internal error: vertex missed by decomposition")
    witness = SpectrumAssignment.from_masks(sets)
    return finish_yes(network, witness, "treewidth-dp", stats, t0)
