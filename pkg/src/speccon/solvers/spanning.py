"""Spanning-tree enumeration and the solver built on it."""

from __future__ import annotations

import time
from typing import Iterable, Iterator

from ..model import CognitiveRadioNetwork, Verdict, is_connected_edges
from .common import (
    finish_no,
    finish_yes,
    new_stats,
    optimistic_connected,
    reject_invalid,
    trivial_verdict,
)
from .tree_dp import solve_tree_dp


class SpanningTreeEnumeration:
    """Lazy enumeration of the spanning trees of an undirected graph.

    Iterating yields each spanning tree exactly once as a frozenset of
    normalized edges, in a deterministic order.  ``disconnected`` flags an
    input with no spanning trees; iteration then yields nothing.

    The recursion grows one tree from vertex 0: at each step it takes the
    smallest frontier edge e and splits into trees using e and trees of the
    graph without e, the latter branch only when removing e keeps the graph
    connected.  Each recursion node costs one reachability check.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = n
        self.edges = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
        self.disconnected = not is_connected_edges(n, self.edges)

    def __iter__(self) -> Iterator[frozenset[tuple[int, int]]]:
        if self.disconnected:
            return
        n = self.n
        if n <= 1:
            yield frozenset()
            return
        edges = self.edges
        m = len(edges)
        full_alive = (1 << m) - 1

        def reachable_without(alive: int, drop: int, src: int, dst: int) -> bool:
            alive &= ~(1 << drop)
            nbr = [0] * n
            for i in range(m):
                if (alive >> i) & 1:
                    u, v = edges[i]
                    nbr[u] |= 1 << v
                    nbr[v] |= 1 << u
            seen = 1 << src
            frontier = seen
            target = 1 << dst
            while frontier:
                reach = 0
                while frontier:
                    low = frontier & -frontier
                    frontier ^= low
                    reach |= nbr[low.bit_length() - 1]
                frontier = reach & ~seen
                seen |= frontier
                if seen & target:
                    return True
            return False

        def rec(tree: tuple[int, ...], covered: int, alive: int):
            if len(tree) == n - 1:
                yield frozenset(edges[i] for i in tree)
                return
            pick = -1
            for i in range(m):
                if (alive >> i) & 1:
                    u, v = edges[i]
                    if ((covered >> u) & 1) != ((covered >> v) & 1):
                        pick = i
                        break
            # The cut between covered and uncovered vertices is non-empty in
            # a connected alive graph, so pick is always found.
            u, v = edges[pick]
            newly = v if (covered >> u) & 1 else u
            yield from rec(tree + (pick,), covered | (1 << newly), alive)
            if reachable_without(alive, pick, u, v):
                yield from rec(tree, covered, alive & ~(1 << pick))

        yield from rec((), 1, full_alive)


def enumerate_spanning_trees(
    n: int, edges: Iterable[tuple[int, int]]
) -> SpanningTreeEnumeration:
    """Spanning trees of a graph, lazily and without repetition."""
    return SpanningTreeEnumeration(n, edges)


def solve_spanning_tree(network: CognitiveRadioNetwork) -> Verdict:
    """Decide by trying every spanning tree of the potential graph.

    A connected realization contains a spanning tree of realized edges, and
    a tree realization must realize every tree edge, so the instance is
    connectable iff some spanning tree, taken as the whole potential graph,
    is connectable.  Trees are checked with the tree DP; the first success
    supplies the witness.
    """
    reject_invalid(network)
    t0 = time.perf_counter()
    stats = new_stats()
    quick = trivial_verdict(network, "spanning-tree", stats, t0)
    if quick is not None:
        return quick
    if not optimistic_connected(network):
        return finish_no("spanning-tree", stats, t0)
    base = CognitiveRadioNetwork(
        users=network.users,
        channel_count=network.channel_count,
        potential_edges=frozenset(),
        complete=False,
    )
    for tree_edges in enumerate_spanning_trees(network.n, network.edge_set()):
        stats["trees_enumerated"] += 1
        candidate = CognitiveRadioNetwork(
            users=base.users,
            channel_count=base.channel_count,
            potential_edges=tree_edges,
        )
        verdict = solve_tree_dp(candidate)
        stats["dp_table_size"] += verdict.stats.get("dp_table_size", 0)
        if verdict.connectable:
            assert verdict.witness is not None
            return finish_yes(network, verdict.witness, "spanning-tree", stats, t0)
    return finish_no("spanning-tree", stats, t0)
