"""Simulation-like preorders on finite labeled transition systems.

The heavy lifting lives in the compiled extension ``simcoal._core``; this
package re-exports its public surface.
"""

from simcoal._core import (  # noqa: F401
    ActionPartition,
    CheckReport,
    LiftMode,
    Lts,
    Order,
    Relation,
    Semantics,
    StateMap,
    StepFunction,
    __version__,
    brute_force_similarity,
    check_commute,
    check_composition_stability,
    check_factored_lift,
    check_functorial,
    check_interchange,
    check_left_stable,
    check_op_duality,
    check_preorder,
    check_right_stable,
    check_stable,
    greatest_bisimulation,
    greatest_classical_sim,
    greatest_coalgebraic_sim,
    holds,
    lax_lift_fast,
    lax_lift_generic,
    lax_lift_two,
    load_lts,
    load_partition,
    parse_aut,
    parse_native,
    parse_order_expr,
    parse_term,
    rel_lift,
    revalidate_witness,
    to_aut,
    to_native,
    unify_alphabets,
)
