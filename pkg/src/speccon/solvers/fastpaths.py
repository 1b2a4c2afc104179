"""Polynomial special cases: unit budgets, and budgets at least k."""

from __future__ import annotations

import time

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


def solve_beta_one(network: CognitiveRadioNetwork) -> Verdict:
    """Unit-budget instances in O(nk + |E|).

    With one antenna each, any two users on a realized edge open the same
    single channel, and that channel propagates along paths: a connected
    realization forces one channel common to every spectrum map.  So the
    instance is connectable iff the potential graph is connected and the
    maps share a channel; the witness opens the smallest shared channel
    everywhere.
    """
    reject_invalid(network)
    if any(u.budget != 1 for u in network.users):
        raise SolverRefusal("beta-one solver requires every budget to be exactly 1")
    t0 = time.perf_counter()
    stats = new_stats()
    quick = trivial_verdict(network, "beta-one", stats, t0)
    if quick is not None:
        return quick
    common = -1
    for m in network.map_masks():
        common &= m
    if common == 0:
        return finish_no("beta-one", stats, t0)
    c = (common & -common).bit_length() - 1
    witness = SpectrumAssignment.from_sets([{c}] * network.n)
    return finish_yes(network, witness, "beta-one", stats, t0)


def solve_k_le_beta(network: CognitiveRadioNetwork) -> Verdict:
    """Full-open decision when every budget covers the whole channel set.

    Budgets never bind, so opening every available channel dominates all
    other assignments; the instance is connectable iff that single
    realization graph is connected.
    """
    reject_invalid(network)
    k = network.channel_count
    if any(u.budget < k for u in network.users):
        raise SolverRefusal(
            "full-open solver requires budget >= channel_count for every user"
        )
    t0 = time.perf_counter()
    stats = new_stats()
    quick = trivial_verdict(network, "full-open", stats, t0)
    if quick is not None:
        return quick
    if optimistic_connected(network):
        witness = SpectrumAssignment(
            tuple(u.spectrum_map for u in network.users)
        )
        return finish_yes(network, witness, "full-open", stats, t0)
    return finish_no("full-open", stats, t0)
