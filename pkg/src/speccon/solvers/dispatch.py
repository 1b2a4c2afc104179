"""Solver selection: route each instance to the cheapest exact method."""

from __future__ import annotations

import math

from ..model import CognitiveRadioNetwork, Verdict
from ..treedecomp import decompose, to_nice
from .brute import DEFAULT_ASSIGNMENT_CAP, solve_brute_force
from .common import (
    SolverRefusal,
    empty_witness,
    finish_no,
    finish_yes,
    new_stats,
    potential_connected,
    reject_invalid,
)
from .complete import solve_complete
from .fastpaths import solve_beta_one, solve_k_le_beta
from .spanning import solve_spanning_tree
from .tree_dp import solve_tree_dp
from .treewidth_dp import solve_treewidth_dp

import time

# Auto-dispatch guards.  The complete-graph solver is only picked when its
# 2^(2^k - 1) family space is genuinely small, and the bag DP only when the
# per-bag tuple space stays below 2^AUTO_TUPLE_BITS (16 bits keeps the DP
# under about a second even with dense spectrum maps).
AUTO_COMPLETE_K = 4
AUTO_TREEWIDTH_BOUND = 3
AUTO_TUPLE_BITS = 16


def _is_tree(network: CognitiveRadioNetwork) -> bool:
    return len(network.edge_set()) == network.n - 1 and potential_connected(network)


def solve_auto(network: CognitiveRadioNetwork) -> Verdict:
    """Pick a solver and return its verdict; always answers.

    Order: disconnected potential graph, unit budgets, budgets covering k,
    tree potential graphs, small complete instances, bounded-treewidth
    instances, then brute force versus spanning trees by the smaller of the
    predicted exponents k*n and k + n*log2(n).
    """
    reject_invalid(network)
    n = network.n
    if n <= 1:
        t0 = time.perf_counter()
        return finish_yes(network, empty_witness(network), "auto-trivial", new_stats(), t0)
    if not potential_connected(network):
        t0 = time.perf_counter()
        return finish_no("auto-trivial", new_stats(), t0)
    if all(u.budget == 1 for u in network.users):
        return solve_beta_one(network)
    k = network.channel_count
    if all(u.budget >= k for u in network.users):
        return solve_k_le_beta(network)
    if _is_tree(network):
        return solve_tree_dp(network)
    if network.complete and k <= AUTO_COMPLETE_K:
        return solve_complete(network)
    td = decompose(n, network.edge_set(), AUTO_TREEWIDTH_BOUND)
    if td is not None and k * (td.width + 1) <= AUTO_TUPLE_BITS:
        return solve_treewidth_dp(network, to_nice(td))
    brute_exp = k * n
    span_exp = k + n * math.log2(n)
    if span_exp < brute_exp:
        return solve_spanning_tree(network)
    try:
        return solve_brute_force(network)
    except SolverRefusal:
        return solve_spanning_tree(network)


def run_named_solver(
    network: CognitiveRadioNetwork,
    name: str,
    *,
    treewidth_bound: int = 8,
    brute_cap: int = DEFAULT_ASSIGNMENT_CAP,
    complete_cap: int | None = None,
) -> Verdict:
    """Solver lookup shared by the command line and the bench harness."""
    if name == "auto":
        return solve_auto(network)
    if name == "brute":
        return solve_brute_force(network, max_assignments=brute_cap)
    if name == "beta-one":
        return solve_beta_one(network)
    if name == "full-open":
        return solve_k_le_beta(network)
    if name == "tree":
        return solve_tree_dp(network)
    if name == "spanning":
        return solve_spanning_tree(network)
    if name == "complete":
        if complete_cap is not None:
            return solve_complete(network, channel_cap=complete_cap)
        return solve_complete(network)
    if name == "treewidth":
        td = decompose(network.n, network.edge_set(), treewidth_bound)
        if td is None:
            raise SolverRefusal(
                f"no tree decomposition of width <= {treewidth_bound} found"
            )
        return solve_treewidth_dp(network, to_nice(td))
    raise ValueError(f"unknown solver {name!r}")
