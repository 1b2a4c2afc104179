"""Spectrum-graph solver for complete potential graphs."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..model import CognitiveRadioNetwork, SpectrumAssignment, Verdict
from .common import (
    SolverRefusal,
    finish_no,
    finish_yes,
    new_stats,
    optimistic_connected,
    reject_invalid,
    trivial_verdict,
)

DEFAULT_CHANNEL_CAP = 5


@dataclass(frozen=True)
class SpectrumGraph:
    """Intersection graph over a family of distinct non-empty channel sets.

    Vertices are the family members; edges join every pair of members that
    share a channel, so the edge set is fully determined by the vertices.
    """

    vertices: tuple[frozenset[int], ...]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_vertices(cls, vertices) -> "SpectrumGraph":
        verts = tuple(frozenset(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("family members must be distinct")
        if any(not v for v in verts):
            raise ValueError("family members must be non-empty")
        edges = frozenset(
            (i, j)
            for i in range(len(verts))
            for j in range(i + 1, len(verts))
            if verts[i] & verts[j]
        )
        return cls(verts, edges)

    def is_connected(self) -> bool:
        n = len(self.vertices)
        if n <= 1:
            return True
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n


def _saturating_matching(members: list[int], elig: dict[int, int], n: int) -> dict[int, int] | None:
    """Match every member set to a distinct user able to open it.

    Classic augmenting-path search, members in ascending order, candidate
    users in ascending id order; returns {member -> user} or None.
    """
    owner = [-1] * n  # user -> member
    match: dict[int, int] = {}

    def augment(s: int, visited: set[int]) -> bool:
        cand = elig[s]
        while cand:
            low = cand & -cand
            cand ^= low
            u = low.bit_length() - 1
            if u in visited:
                continue
            visited.add(u)
            if owner[u] == -1 or augment(owner[u], visited):
                owner[u] = s
                match[s] = u
                return True
        return False

    for s in members:
        if not augment(s, set()):
            return None
    return match


def solve_complete(
    network: CognitiveRadioNetwork, *, channel_cap: int = DEFAULT_CHANNEL_CAP
) -> Verdict:
    """Decision for complete potential graphs via families of channel sets.

    On a complete potential graph, connectivity of the realization depends
    only on which distinct channel sets are opened: the realization is
    connected iff the spectrum graph over the family of opened sets is
    connected.  The solver enumerates candidate families of non-empty
    channel subsets in a fixed ascending order and accepts the first one
    that (a) has a connected spectrum graph, (b) gives every user a member
    it could open, and (c) admits a matching covering every member with a
    distinct user, which guarantees each member is actually opened.
    Matched users open their matched member; the rest open their smallest
    eligible member.

    Requires the complete flag; refuses when channel_count exceeds
    ``channel_cap`` (default 5) since the family space is doubly
    exponential in k.
    """
    reject_invalid(network)
    if not network.complete:
        raise SolverRefusal("complete-graph solver requires the complete flag")
    k = network.channel_count
    if k > channel_cap:
        raise SolverRefusal(
            f"channel count {k} exceeds cap {channel_cap} "
            f"(family space has 2^(2^{k}-1) candidates); raise channel_cap to force"
        )
    t0 = time.perf_counter()
    stats = new_stats()
    quick = trivial_verdict(network, "complete", stats, t0)
    if quick is not None:
        return quick
    if not optimistic_connected(network):
        return finish_no("complete", stats, t0)

    n = network.n
    map_masks = network.map_masks()
    budgets = [u.budget for u in network.users]
    nsub = (1 << k) - 1
    all_users = (1 << n) - 1
    # elig[s]: users that may open subset s; inter[s]: subsets meeting s.
    elig = {}
    inter = {}
    for s in range(1, nsub + 1):
        bits = s.bit_count()
        em = 0
        for u in range(n):
            if (s & map_masks[u]) == s and bits <= budgets[u]:
                em |= 1 << u
        elig[s] = em
        im = 0
        for t in range(1, nsub + 1):
            if s & t:
                im |= 1 << (t - 1)
        inter[s] = im

    def family_connected(members: list[int], fam_bits: int) -> bool:
        if len(members) == 1:
            return True
        start = members[0]
        seen = 1 << (start - 1)
        frontier = seen
        while frontier:
            reach = 0
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                reach |= inter[(low.bit_length() - 1) + 1]
            frontier = reach & fam_bits & ~seen
            seen |= frontier
        return seen == fam_bits

    for fam in range(1, 1 << nsub):
        stats["nodes_explored"] += 1
        if fam.bit_count() > n:
            continue
        members = []
        cover = 0
        bad = False
        rest = fam
        while rest:
            low = rest & -rest
            rest ^= low
            s = low.bit_length()
            if elig[s] == 0:
                bad = True
                break
            members.append(s)
            cover |= elig[s]
        if bad or cover != all_users:
            continue
        if not family_connected(members, fam):
            continue
        match = _saturating_matching(members, elig, n)
        if match is None:
            continue
        opened = [0] * n
        for s, u in match.items():
            opened[u] = s
        for u in range(n):
            if opened[u] == 0:
                for s in members:
                    if (elig[s] >> u) & 1:
                        opened[u] = s
                        break
        witness = SpectrumAssignment.from_masks(opened)
        return finish_yes(network, witness, "complete", stats, t0)
    return finish_no("complete", stats, t0)
