"""Symbolic engine for the combinatorics of homological projective duality.

The package models Lefschetz decompositions as integer e-vectors, computes
their complementary-box duals and exact Euler-characteristic identities,
plays the chessboard mutation game behind the duality theorem for general
intersections, replays its fully-faithfulness and generation proofs as
machine-checkable traces, and renders the diagrams deterministically.
"""

from .profiles import (
    DualProfile,
    LefschetzProfile,
    PrimitiveBlock,
    ValidationReport,
    beilinson_profile,
    canonical_form,
    dualize,
    dualize_by_widths,
    euler_ambient,
    euler_total,
    is_rectangular,
    load_profile,
    make_profile,
    profile_from_json,
    profile_to_json,
    save_profile,
    validate_profile,
)
from .symbols import (
    DecompositionTemplate,
    FactorSymbol,
    Side,
    TriState,
    amb,
    amb_l,
    contains,
    dual_block,
    enumerate_templates,
    full,
    hom_vanishes_factor,
    hom_vanishes_factor_explained,
    left_perp_amb,
    left_perp_amb_l,
    prim,
    prim_star,
    right_perp_dual,
)
from .chessboard import (
    BOX_DXT,
    BOX_DYS,
    BOX_EPRIM,
    BoxSymbol,
    ChessboardSpec,
    Region,
    hom_vanishes_box,
    hom_vanishes_box_explained,
    make_spec,
    mutate_region,
    pi_S_columns,
    pi_T_columns,
    staircase_E,
    staircase_pi_S,
    staircase_pi_T,
    tensor,
)
from .prover import (
    ProofObligation,
    ProofTrace,
    check_ff_pi_S,
    check_ff_pi_T,
    check_generation,
    check_main_theorem,
    reverify,
    sweep_main_theorem,
    zigzag_order,
)
from .synthesis import (
    DecompositionReport,
    ExampleRecord,
    builtin_examples,
    dual_report,
    euler_H_consistency,
    intersect_decompositions,
    load_examples,
    lookup_example,
    plucker_check,
    plucker_predict,
)
from .render import RenderOptions, render_chessboard, render_profile_pair, render_trace

__version__ = "0.1.0"
