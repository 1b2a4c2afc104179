"""Core data model for spectrum-assignment connectivity problems.

A cognitive radio network is a set of secondary users, each with a set of
available channels (its spectrum map) and an antenna budget, plus a
potential graph over the users.  A spectrum assignment opens a bounded
subset of each user's spectrum map; a potential edge is realized when its
endpoints share an opened channel.  The network is connectable when some
assignment makes the realization graph connected.

Channels and users carry dense integer ids.  Channel sets are frozensets at
the API surface and are packed into bitmask ints inside the solvers; helper
functions for that packing live here.

Conventions for degenerate sizes, stated once and relied on everywhere:
the empty graph and the one-vertex graph both count as connected, so
networks with fewer than two users are always connectable, with the empty
assignment as witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def channel_mask(channels: Iterable[int]) -> int:
    """Pack channel ids into a bitmask int."""
    m = 0
    for c in channels:
        m |= 1 << c
    return m


def mask_channels(mask: int) -> frozenset[int]:
    """Unpack a bitmask int into a frozenset of channel ids."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


@dataclass(frozen=True)
class SecondaryUser:
    """One secondary user: id, available channels, antenna budget."""

    id: int
    spectrum_map: frozenset[int]
    budget: int


@dataclass(frozen=True)
class CognitiveRadioNetwork:
    """A problem instance: users plus a potential graph.

    ``potential_edges`` holds normalized ``(u, v)`` pairs with ``u < v``.
    When ``complete`` is set, the potential graph is the complete graph on
    the users and any stored edge list is ignored.  ``user_names`` and
    ``channel_names`` are optional side tables used only for reporting; they
    never affect solving.
    """

    users: tuple[SecondaryUser, ...]
    channel_count: int
    potential_edges: frozenset[tuple[int, int]] = frozenset()
    complete: bool = False
    user_names: tuple[str, ...] | None = None
    channel_names: tuple[str, ...] | None = None

    @classmethod
    def from_maps(
        cls,
        maps: Sequence[Iterable[int]],
        budgets: int | Sequence[int],
        channel_count: int | None = None,
        edges: Iterable[tuple[int, int]] = (),
        complete: bool = False,
        user_names: Sequence[str] | None = None,
        channel_names: Sequence[str] | None = None,
    ) -> "CognitiveRadioNetwork":
        """Convenience constructor from plain sequences.

        ``budgets`` may be a single int applied to every user.  When
        ``channel_count`` is omitted it is inferred from the largest channel
        id that appears in any map.
        """
        maps = [frozenset(m) for m in maps]
        n = len(maps)
        if isinstance(budgets, int):
            budgets = [budgets] * n
        if len(budgets) != n:
            raise ValueError("budgets length does not match number of users")
        if channel_count is None:
            channel_count = 1 + max((c for m in maps for c in m), default=-1)
        users = tuple(
            SecondaryUser(i, maps[i], budgets[i]) for i in range(n)
        )
        norm = frozenset(
            (min(u, v), max(u, v)) for u, v in edges
        ) if not complete else frozenset()
        return cls(
            users=users,
            channel_count=channel_count,
            potential_edges=norm,
            complete=complete,
            user_names=tuple(user_names) if user_names is not None else None,
            channel_names=tuple(channel_names) if channel_names is not None else None,
        )

    @property
    def n(self) -> int:
        return len(self.users)

    @property
    def k(self) -> int:
        return self.channel_count

    # Instances are immutable, so the derived structures below are computed
    # once and memoized in the instance __dict__ (allowed on frozen
    # dataclasses); callers must treat the results as read-only.

    def edge_set(self) -> frozenset[tuple[int, int]]:
        """Effective potential edges; expands the complete flag."""
        cached = self.__dict__.get("_edge_set")
        if cached is None:
            if self.complete:
                n = self.n
                cached = frozenset(
                    (u, v) for u in range(n) for v in range(u + 1, n)
                )
            else:
                cached = self.potential_edges
            self.__dict__["_edge_set"] = cached
        return cached

    def neighbor_masks(self) -> tuple[int, ...]:
        """Adjacency of the potential graph as per-user bitmask ints."""
        cached = self.__dict__.get("_neighbor_masks")
        if cached is None:
            nbr = [0] * self.n
            for u, v in self.edge_set():
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
            cached = tuple(nbr)
            self.__dict__["_neighbor_masks"] = cached
        return cached

    def map_masks(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_map_masks")
        if cached is None:
            cached = tuple(channel_mask(u.spectrum_map) for u in self.users)
            self.__dict__["_map_masks"] = cached
        return cached

    def full_map_neighbor_masks(self) -> tuple[int, ...]:
        """Realized adjacency when every user opens its whole spectrum map.

        Any assignment opens subsets of the maps, so every realization
        graph is a spanning subgraph of this one.
        """
        cached = self.__dict__.get("_full_map_nbr")
        if cached is None:
            masks = self.map_masks()
            nbr = [0] * self.n
            for u, v in self.edge_set():
                if masks[u] & masks[v]:
                    nbr[u] |= 1 << v
                    nbr[v] |= 1 << u
            cached = tuple(nbr)
            self.__dict__["_full_map_nbr"] = cached
        return cached

    def user_name(self, u: int) -> str:
        if self.user_names is not None:
            return self.user_names[u]
        return f"u{u}"

    def channel_name(self, c: int) -> str:
        if self.channel_names is not None:
            return self.channel_names[c]
        return f"c{c}"


@dataclass(frozen=True)
class SpectrumAssignment:
    """Opened channel sets, one per user, in user id order."""

    opened: tuple[frozenset[int], ...]

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[int]]) -> "SpectrumAssignment":
        return cls(tuple(frozenset(s) for s in sets))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "SpectrumAssignment":
        return cls(tuple(mask_channels(m) for m in masks))


@dataclass(frozen=True)
class RealizationGraph:
    """Spanning subgraph of the potential graph realized by an assignment."""

    vertex_count: int
    realized_edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class Verdict:
    """Solver answer.  A witness is present exactly when connectable."""

    connectable: bool
    witness: SpectrumAssignment | None
    solver_name: str
    stats: dict = field(default_factory=dict)


def validate(network: CognitiveRadioNetwork) -> list[str]:
    """Check structural invariants; returns a list of violation strings.

    An empty report means the network is valid.  Violations do not raise so
    that callers can collect and display all of them at once.
    """
    report = []
    k = network.channel_count
    if k < 0:
        report.append("channel_count is negative")
    for pos, user in enumerate(network.users):
        if user.id != pos:
            report.append(f"user at position {pos} has id {user.id} (ids must be dense)")
        spectrum_map = user.spectrum_map
        if spectrum_map and not (0 <= min(spectrum_map) and max(spectrum_map) < k):
            for c in sorted(spectrum_map):
                if not (0 <= c < k):
                    report.append(
                        f"user {pos}: spectrum map contains unknown channel {c}"
                    )
        if user.budget < 1:
            report.append(f"user {pos}: budget ≥ 1 violated (budget={user.budget})")
    if network.user_names is not None and len(network.user_names) != network.n:
        report.append("user_names length does not match number of users")
    if network.channel_names is not None and len(network.channel_names) != k:
        report.append("channel_names length does not match channel_count")
    if not network.complete:
        n = network.n
        if not all(0 <= u < v < n for u, v in network.potential_edges):
            for u, v in sorted(network.potential_edges):
                if u == v:
                    report.append(f"edge ({u}, {v}): self-loop")
                    continue
                if u > v:
                    report.append(
                        f"edge ({u}, {v}): endpoints not normalized (u < v required)"
                    )
                if not (0 <= u < n) or not (0 <= v < n):
                    report.append(f"edge ({u}, {v}): endpoint out of range")
    return report


def assignment_violations(
    network: CognitiveRadioNetwork, assignment: SpectrumAssignment
) -> list[str]:
    """Budget and spectrum-map violations of an assignment, by user."""
    report = []
    if len(assignment.opened) != network.n:
        report.append(
            f"assignment covers {len(assignment.opened)} users, network has {network.n}"
        )
        return report
    for user, opened in zip(network.users, assignment.opened):
        if not opened <= user.spectrum_map:
            extra = sorted(opened - user.spectrum_map)
            report.append(
                f"user {user.id}: opened channels {extra} not in spectrum map"
            )
        if len(opened) > user.budget:
            report.append(
                f"user {user.id}: opened {len(opened)} channels, budget is {user.budget}"
            )
    return report


def realize(
    network: CognitiveRadioNetwork, assignment: SpectrumAssignment
) -> RealizationGraph:
    """Realization graph of a valid assignment.

    Raises ValueError naming the offending user when the assignment breaks
    a budget or spectrum-map constraint.
    """
    problems = assignment_violations(network, assignment)
    if problems:
        raise ValueError("invalid assignment: " + "; ".join(problems))
    # Integer masks keep the per-edge intersection test cheap.
    masks = []
    for opened in assignment.opened:
        m = 0
        for c in opened:
            m |= 1 << c
        masks.append(m)
    realized = frozenset(
        [(u, v) for u, v in network.edge_set() if masks[u] & masks[v]]
    )
    return RealizationGraph(network.n, realized)


def is_connected_edges(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """Connectivity of an undirected graph given by an edge list.

    Graphs with fewer than two vertices are connected by convention.
    """
    if n <= 1:
        return True
    nbr = [0] * n
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    return connected_masks(n, nbr)


def is_connected(graph: RealizationGraph) -> bool:
    """Connectivity of a realization graph."""
    return is_connected_edges(graph.vertex_count, graph.realized_edges)


def connected_masks(n: int, nbr: Sequence[int]) -> bool:
    """Connectivity over bitmask adjacency; the solvers' inner-loop check."""
    if n <= 1:
        return True
    full = (1 << n) - 1
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            reach |= nbr[low.bit_length() - 1]
        frontier = reach & ~seen
        seen |= frontier
        if seen == full:
            return True
    return False
