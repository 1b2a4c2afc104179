"""Exact decision procedures for spectrum-assignment connectivity."""

from .brute import DEFAULT_ASSIGNMENT_CAP, solve_brute_force
from .common import SolverRefusal, WitnessValidationError
from .complete import DEFAULT_CHANNEL_CAP, SpectrumGraph, solve_complete
from .dispatch import run_named_solver, solve_auto
from .fastpaths import solve_beta_one, solve_k_le_beta
from .spanning import SpanningTreeEnumeration, enumerate_spanning_trees, solve_spanning_tree
from .tree_dp import TreeDpTable, solve_tree_dp, tree_dp_tables
from .treewidth_dp import BagDpTable, bag_dp_tables, solve_treewidth_dp

SOLVER_NAMES = (
    "auto",
    "brute",
    "beta-one",
    "full-open",
    "tree",
    "treewidth",
    "complete",
    "spanning",
)

__all__ = [
    "BagDpTable",
    "DEFAULT_ASSIGNMENT_CAP",
    "DEFAULT_CHANNEL_CAP",
    "SOLVER_NAMES",
    "SolverRefusal",
    "SpanningTreeEnumeration",
    "SpectrumGraph",
    "TreeDpTable",
    "WitnessValidationError",
    "bag_dp_tables",
    "enumerate_spanning_trees",
    "run_named_solver",
    "solve_auto",
    "solve_beta_one",
    "solve_brute_force",
    "solve_complete",
    "solve_k_le_beta",
    "solve_spanning_tree",
    "solve_tree_dp",
    "solve_treewidth_dp",
    "tree_dp_tables",
]
