"""The chessboard: one-sided symbols, Hom vanishing, and mutation regions.

Boxes A_a(a) [x] C_b(b) tile the incidence-divisor category.  Hom spaces
between boxes sit in a two-term cone, so a box-level Hom dies as soon as
each term has a vanishing one-sided factor; the engine derives those factor
vanishings from a small sound rule set and semiorthogonal-sequence
templates.  Mutation cones then sweep out staircase regions with closed
forms, which is the entire geometric content of the projection arguments.
"""

from hpdual import (
    Region,
    Side,
    TriState,
    amb,
    amb_l,
    dual_block,
    hom_vanishes_box_explained,
    hom_vanishes_factor_explained,
    make_spec,
    mutate_region,
    pi_S_columns,
    pi_T_columns,
    prim,
    staircase_pi_S,
    staircase_pi_T,
    tensor,
)
from hpdual.render import RenderOptions, render_chessboard

X, S = Side.X, Side.S
spec = make_spec(6, 6, 20)

# One-sided vanishing: the twist-gap rule, and the defining orthogonality of
# the complementary boxes (a twisted block maps nowhere into a box it generates).
print(hom_vanishes_factor_explained(amb(3, 3, X), amb(1, 1, X), spec.profile_X))
print(hom_vanishes_factor_explained(prim(3, 4, X), dual_block(2, 0, X), spec.profile_X))
# Soundness means self-Homs stay Unknown: the oracle never claims nonvanishing.
print(hom_vanishes_factor_explained(amb(2, 0, X), amb(2, 0, X), spec.profile_X))

# Box-level: both cone terms need a factor to die.
b1 = tensor(amb(2, 2, X), amb(1, 1, S))
b2 = tensor(amb(1, 1, X), amb(1, 1, S))
print(hom_vanishes_box_explained(b1, b2, spec))

# Projecting the twisted box A_3(3) [x] D^3 to the T side mutates it through
# the plain columns; the cone sweeps exactly the closed-form staircase.
anchor = tensor(amb(3, 3, X), dual_block(3, 0, S))
out = mutate_region(Region([anchor], spec), pi_T_columns(spec), spec)
assert out == Region([anchor], spec).union(staircase_pi_T(3, spec))
print("pi_T staircase, k=3:", staircase_pi_T(3, spec))

# Dually on the S side, in Serre-twisted coordinates.
anchor = tensor(dual_block(3, 0, X), amb_l(3, 3 + 1 - 6, S))
out = mutate_region(Region([anchor], spec), pi_S_columns(spec), spec)
assert out == Region([anchor], spec).union(staircase_pi_S(3, spec))
print("pi_S staircase, k=3:", staircase_pi_S(3, spec))

# Render the board with the k=4 staircase highlighted.
opts = RenderOptions(highlight=((staircase_pi_T(4, spec), "accent1"),))
print(render_chessboard(spec, opts).decode())
