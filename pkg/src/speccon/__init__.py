"""Exact solvers, generators, and tooling for spectrum-assignment
connectivity in cognitive radio networks.

The central question: given secondary users with per-user channel
availability and antenna budgets, plus a potential graph of who could talk
to whom, can channels be opened within the budgets so that the realized
communication graph is connected?  The library answers it exactly with a
portfolio of solvers, generates hard instances from classic problems, and
ships a command line (``speccon``) over the same code paths.
"""

from .io import InstanceParseError, gen_random, parse_instance, serialize_instance
from .model import (
    CognitiveRadioNetwork,
    RealizationGraph,
    SecondaryUser,
    SpectrumAssignment,
    Verdict,
    assignment_violations,
    channel_mask,
    is_connected,
    is_connected_edges,
    mask_channels,
    realize,
    validate,
)
from .reductions import (
    CnfFormula,
    ReductionArtifact,
    UniformCnfFormula,
    extract_hamiltonian,
    extract_sat,
    extract_vertex_cover,
    hamiltonian_to_crn,
    pad_channels,
    parse_dimacs,
    parse_edge_list,
    sat_to_uniform,
    to_dimacs,
    uniform_to_speccon,
    uniform_to_two_channel,
    vertex_cover_to_crn,
)
from .solvers import (
    SOLVER_NAMES,
    SolverRefusal,
    WitnessValidationError,
    enumerate_spanning_trees,
    run_named_solver,
    solve_auto,
    solve_beta_one,
    solve_brute_force,
    solve_complete,
    solve_k_le_beta,
    solve_spanning_tree,
    solve_tree_dp,
    solve_treewidth_dp,
)
from .treedecomp import (
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose,
    from_pace_text,
    to_nice,
    to_pace_text,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "CnfFormula",
    "CognitiveRadioNetwork",
    "InstanceParseError",
    "NiceTreeDecomposition",
    "RealizationGraph",
    "ReductionArtifact",
    "SOLVER_NAMES",
    "SecondaryUser",
    "SolverRefusal",
    "SpectrumAssignment",
    "TreeDecomposition",
    "UniformCnfFormula",
    "Verdict",
    "WitnessValidationError",
    "__version__",
    "assignment_violations",
    "channel_mask",
    "decompose",
    "enumerate_spanning_trees",
    "extract_hamiltonian",
    "extract_sat",
    "extract_vertex_cover",
    "from_pace_text",
    "gen_random",
    "hamiltonian_to_crn",
    "is_connected",
    "is_connected_edges",
    "mask_channels",
    "pad_channels",
    "parse_dimacs",
    "parse_edge_list",
    "parse_instance",
    "realize",
    "run_named_solver",
    "sat_to_uniform",
    "serialize_instance",
    "solve_auto",
    "solve_beta_one",
    "solve_brute_force",
    "solve_complete",
    "solve_k_le_beta",
    "solve_spanning_tree",
    "solve_tree_dp",
    "solve_treewidth_dp",
    "to_dimacs",
    "to_nice",
    "to_pace_text",
    "uniform_to_speccon",
    "uniform_to_two_channel",
    "validate",
    "vertex_cover_to_crn",
    "verify",
]
