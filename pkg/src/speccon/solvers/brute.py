"""Exhaustive search over admissible assignments."""

from __future__ import annotations

import time

from ..model import CognitiveRadioNetwork, SpectrumAssignment, Verdict, connected_masks
from .common import (
    SolverRefusal,
    admissible_masks,
    finish_no,
    finish_yes,
    maximal_admissible_masks,
    new_stats,
    reject_invalid,
    trivial_verdict,
)

DEFAULT_ASSIGNMENT_CAP = 1 << 24


def _search(
    n: int,
    edges: list[tuple[int, int]],
    map_masks: list[int],
    choices: list[list[int]],
    stats: dict,
) -> list[int] | None:
    """First connecting assignment in lexicographic order, or None.

    Users are assigned in id order, candidate sets in ascending bitmask
    order, so the first full assignment found is the lexicographically
    smallest connecting one over the given choice lists.  Prefixes are
    pruned with an optimistic bound: unassigned users count with their full
    spectrum map, which only ever over-approximates the realized edges.
    """
    eff = list(map_masks)

    def feasible() -> bool:
        nbr = [0] * n
        for u, v in edges:
            if eff[u] & eff[v]:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
        return connected_masks(n, nbr)

    chosen: list[int] = []

    def rec(i: int) -> bool:
        stats["nodes_explored"] += 1
        if not feasible():
            return False
        if i == n:
            return True
        for s in choices[i]:
            eff[i] = s
            chosen.append(s)
            if rec(i + 1):
                return True
            chosen.pop()
        eff[i] = map_masks[i]
        return False

    if rec(0):
        return chosen
    return None


def solve_brute_force(
    network: CognitiveRadioNetwork, *, max_assignments: int = DEFAULT_ASSIGNMENT_CAP
) -> Verdict:
    """Decide connectability by exhausting admissible assignments.

    Total for every valid instance below the size cap.  The witness is the
    lexicographically first connecting assignment (users in id order,
    channel sets in ascending bitmask order).  Refuses when the product of
    per-user admissible-set counts exceeds ``max_assignments``.
    """
    reject_invalid(network)
    t0 = time.perf_counter()
    stats = new_stats()
    quick = trivial_verdict(network, "brute-force", stats, t0)
    if quick is not None:
        return quick

    n = network.n
    map_masks = network.map_masks()
    budgets = [u.budget for u in network.users]
    edges = sorted(network.edge_set())

    space = 1
    for m, b in zip(map_masks, budgets):
        space *= max(1, len(admissible_masks(m, b)))
        if space > max_assignments:
            raise SolverRefusal(
                f"assignment space exceeds cap ({space} > {max_assignments}); "
                "pick another solver or raise max_assignments"
            )

    # Existence is decided over maximal admissible sets only (dominance),
    # then the pinned lexicographic witness is located over the full lists.
    maximal = [maximal_admissible_masks(m, b) for m, b in zip(map_masks, budgets)]
    if _search(n, edges, map_masks, maximal, stats) is None:
        return finish_no("brute-force", stats, t0)
    full = [admissible_masks(m, b) for m, b in zip(map_masks, budgets)]
    witness_masks = _search(n, edges, map_masks, full, stats)
    if witness_masks is None:
        raise AssertionError("internal error: maximal search succeeded, full failed")
    witness = SpectrumAssignment.from_masks(witness_masks)
    return finish_yes(network, witness, "brute-force", stats, t0)
