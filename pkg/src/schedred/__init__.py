"""Executable hardness reductions for 1||sum w_j U_j.

Multicolored Clique and Partitioned Subgraph Isomorphism instances are turned
into single-machine scheduling instances over block-structured base-N
integers; exact solvers and seeded suites check the resulting equivalences.
"""

from .blockint import BlockInt, BlockLayout, add, add_nocarry, choose_radix, layout_new, render_blocks
from .graphs import KPartiteGraph, PatternGraph, brute_mcc, brute_psi, figure1, random_nice
from .reduction import ReductionOutput, build, structure_check, verify_witness, witness
from .schedcore import Instance, Job, early_set_feasible, edd_order, evaluate
from .solvers import (
    SolveResult,
    solve_lawler_moore,
    solve_pareto,
    solve_perm_bruteforce,
    solve_subset_bruteforce,
)
from .variants import VariantKind, build_eth, build_w, witness_w

__all__ = [
    "BlockInt", "BlockLayout", "add", "add_nocarry", "choose_radix", "layout_new", "render_blocks",
    "KPartiteGraph", "PatternGraph", "brute_mcc", "brute_psi", "figure1", "random_nice",
    "ReductionOutput", "build", "structure_check", "verify_witness", "witness",
    "Instance", "Job", "early_set_feasible", "edd_order", "evaluate",
    "SolveResult", "solve_lawler_moore", "solve_pareto", "solve_perm_bruteforce",
    "solve_subset_bruteforce", "VariantKind", "build_eth", "build_w", "witness_w",
]
