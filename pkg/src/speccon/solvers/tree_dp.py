"""Dynamic program for tree-shaped potential graphs."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..model import CognitiveRadioNetwork, SpectrumAssignment, Verdict
from .common import (
    SolverRefusal,
    admissible_masks,
    empty_witness,
    finish_no,
    finish_yes,
    new_stats,
    reject_invalid,
)


@dataclass(frozen=True)
class TreeDpTable:
    """DP tables for audits: f maps (user, set-mask) to feasibility, and
    g[user] is the bitmask of channels c with f(user, S) true for some
    S containing c."""

    f: dict[int, dict[int, bool]]
    g: dict[int, int]
    parent: tuple[int, ...]
    order: tuple[int, ...]  # preorder from the root, user 0


def _orient(network: CognitiveRadioNetwork) -> tuple[list[int], list[int], list[list[int]]]:
    n = network.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in network.edge_set():
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for u in order:
        for v in sorted(adj[u]):
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if parent[v] >= 0:
            children[parent[v]].append(v)
    return parent, order, children


def _require_tree(network: CognitiveRadioNetwork) -> None:
    n = network.n
    edges = network.edge_set()
    if len(edges) != n - 1:
        raise SolverRefusal("potential graph is not a tree (edge count)")
    seen = [False] * n
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    if count != n:
        raise SolverRefusal("potential graph is not a tree (disconnected)")


def tree_dp_tables(network: CognitiveRadioNetwork) -> TreeDpTable:
    """Bottom-up feasibility tables over the tree rooted at user 0.

    f(v, S) says: the subtree below v is connectable with v opening exactly
    S.  A set works at v iff for every child there is a channel of S the
    child can answer with, i.e. S intersects the child's g mask; g(v) is the
    union of all feasible sets at v.  Admissible sets respect both the
    spectrum map and the budget; the empty set is pruned since a user
    opening nothing realizes no incident edge.
    """
    reject_invalid(network)
    if network.n == 0:
        return TreeDpTable({}, {}, (), ())
    _require_tree(network)
    parent, order, children = _orient(network)
    map_masks = network.map_masks()
    f: dict[int, dict[int, bool]] = {}
    g: dict[int, int] = {}
    for v in reversed(order):
        adm = admissible_masks(map_masks[v], network.users[v].budget)
        if network.n == 1:
            adm = [0]  # a lone root may open nothing
        fv: dict[int, bool] = {}
        gmask = 0
        kids = children[v]
        for s in adm:
            ok = all(s & g[c] for c in kids)
            fv[s] = ok
            if ok:
                gmask |= s
        f[v] = fv
        g[v] = gmask
    return TreeDpTable(f, g, tuple(parent), tuple(order))


def solve_tree_dp(network: CognitiveRadioNetwork) -> Verdict:
    """Exact decision for tree potential graphs, O(n * 2^t * deg) overall.

    Rejects non-tree potential graphs.  The witness is rebuilt top-down:
    the root takes its smallest feasible set, each child answers over the
    smallest channel its parent can reach it with, using the smallest
    feasible set containing that channel.
    """
    reject_invalid(network)
    t0 = time.perf_counter()
    stats = new_stats()
    n = network.n
    if n <= 1:
        # A self-loop-free graph on <= 1 vertices is always a tree.
        return finish_yes(network, empty_witness(network), "tree-dp", stats, t0)
    table = tree_dp_tables(network)
    stats["dp_table_size"] = sum(len(fv) for fv in table.f.values()) + len(table.g)
    _, order, children = _orient(network)
    root_pick = next((s for s, ok in table.f[0].items() if ok), None)
    if root_pick is None:
        return finish_no("tree-dp", stats, t0)
    sets = [0] * n
    sets[0] = root_pick
    stack = [0]
    while stack:
        v = stack.pop()
        for c in children[v]:
            reach = sets[v] & table.g[c]
            if reach == 0:
                raise AssertionError("internal error: infeasible child during rebuild")
            ch = (reach & -reach).bit_length() - 1
            pick = next(
                s for s, ok in table.f[c].items() if ok and (s >> ch) & 1
            )
            sets[c] = pick
            stack.append(c)
    witness = SpectrumAssignment.from_masks(sets)
    return finish_yes(network, witness, "tree-dp", stats, t0)
