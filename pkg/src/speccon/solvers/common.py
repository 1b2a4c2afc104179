"""Shared solver plumbing: guards, admissible-set enumeration, verdicts."""

from __future__ import annotations

import time
from typing import Iterable, Sequence

from ..model import (
    CognitiveRadioNetwork,
    SpectrumAssignment,
    Verdict,
    assignment_violations,
    connected_masks,
    validate,
)


class SolverRefusal(RuntimeError):
    """A solver declined the instance (precondition or size cap)."""


class WitnessValidationError(RuntimeError):
    """A solver produced a witness that fails re-validation; internal bug."""


def new_stats() -> dict:
    return {
        "nodes_explored": 0,
        "trees_enumerated": 0,
        "dp_table_size": 0,
        "wall_ms": 0.0,
    }


def reject_invalid(network: CognitiveRadioNetwork) -> None:
    # Networks are immutable, so one successful validation is good forever.
    if network.__dict__.get("_known_valid"):
        return
    problems = validate(network)
    if problems:
        raise ValueError("invalid network: " + "; ".join(problems))
    network.__dict__["_known_valid"] = True


def finish_no(solver_name: str, stats: dict, t0: float) -> Verdict:
    stats["wall_ms"] = (time.perf_counter() - t0) * 1000.0
    return Verdict(False, None, solver_name, stats)


def finish_yes(
    network: CognitiveRadioNetwork,
    witness: SpectrumAssignment,
    solver_name: str,
    stats: dict,
    t0: float,
) -> Verdict:
    # Every positive answer is re-validated before leaving the solver; a
    # failure here is an internal inconsistency, never a caller error.
    problems = assignment_violations(network, witness)
    if problems:
        raise WitnessValidationError(
            f"{solver_name}: witness invalid: " + "; ".join(problems)
        )
    n = network.n
    if n > 1:
        masks = []
        for opened in witness.opened:
            m = 0
            for c in opened:
                m |= 1 << c
            masks.append(m)
        nbr = realized_neighbor_masks(network.edge_set(), masks, n)
        if not connected_masks(n, nbr):
            raise WitnessValidationError(
                f"{solver_name}: witness does not connect the realization graph"
            )
    stats["wall_ms"] = (time.perf_counter() - t0) * 1000.0
    return Verdict(True, witness, solver_name, stats)


def empty_witness(network: CognitiveRadioNetwork) -> SpectrumAssignment:
    return SpectrumAssignment(tuple(frozenset() for _ in range(network.n)))


def potential_connected(network: CognitiveRadioNetwork) -> bool:
    n = network.n
    if n <= 1:
        return True
    return connected_masks(n, network.neighbor_masks())


def optimistic_connected(network: CognitiveRadioNetwork) -> bool:
    """Connectivity when every user opens its full spectrum map.

    Any valid assignment opens subsets of the maps, so its realization graph
    is a subgraph of this one; a disconnect here rules the instance out.
    """
    n = network.n
    if n <= 1:
        return True
    return connected_masks(n, network.full_map_neighbor_masks())


def trivial_verdict(
    network: CognitiveRadioNetwork, solver_name: str, stats: dict, t0: float
) -> Verdict | None:
    """Degenerate-size and disconnected-potential-graph short-circuit.

    Returns a verdict for n <= 1 (connectable, empty witness) and for a
    disconnected potential graph (not connectable); None otherwise.
    """
    if network.n <= 1:
        return finish_yes(network, empty_witness(network), solver_name, stats, t0)
    if not potential_connected(network):
        return finish_no(solver_name, stats, t0)
    return None


def submasks_ascending(mask: int) -> list[int]:
    """All submasks of ``mask`` including 0, in ascending numeric order."""
    out = [0]
    s = 0
    while True:
        s = (s - mask) & mask
        if s == 0:
            return out
        out.append(s)


def admissible_masks(map_mask: int, budget: int, include_empty: bool = False) -> list[int]:
    """Channel sets a user may open, as ascending bitmask ints."""
    out = [
        s
        for s in submasks_ascending(map_mask)
        if s.bit_count() <= budget and (include_empty or s)
    ]
    if include_empty and not out:
        out = [0]
    return out


def maximal_admissible_masks(map_mask: int, budget: int) -> list[int]:
    """Inclusion-maximal admissible sets, ascending.

    Opening more channels never removes realized edges, so existence of a
    connecting assignment can be decided over these alone.
    """
    if map_mask.bit_count() <= budget:
        return [map_mask]
    return [
        s for s in submasks_ascending(map_mask) if s.bit_count() == budget
    ]


def realized_neighbor_masks(
    edges: Iterable[tuple[int, int]], eff: Sequence[int], n: int
) -> list[int]:
    nbr = [0] * n
    for u, v in edges:
        if eff[u] & eff[v]:
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
    return nbr
