"""Profiles, complementary-box duals, and exact Euler bookkeeping.

A Lefschetz profile records, for a variety mapping to a projective space of
dimension N-1, the Euler characteristic of each primitive block of its
Lefschetz decomposition.  Everything this package does starts from that
little integer vector, so this demo walks through the basic moves: validate,
total up, dualize, and round-trip through the file format.
"""

from hpdual import (
    beilinson_profile,
    dualize,
    dualize_by_widths,
    euler_ambient,
    euler_total,
    make_profile,
    profile_to_json,
    validate_profile,
)

# The Grassmannian of planes in a six-dimensional space, under its Pluecker
# embedding: three chain components of Euler number 3, three of Euler
# number 2, packed into primitive blocks e = (0, 0, 1, 0, 0, 2).
gr26 = make_profile("Gr(2,6)", 15, [0, 0, 1, 0, 0, 2])
print(validate_profile(gr26))
print("chi of the first component:", euler_ambient(gr26))  # 3 objects
print("chi of the whole space:    ", euler_total(gr26))    # 15

# The dual profile fills the complementary boxes of the N-wide strip.  Its
# own Euler characteristic is forced by the identity
#   chi(X) + chi(Y) = N * chi(first component).
dual = dualize(gr26)
print("dual e-vector:", dual.e_vector)
print("chi of the dual:", euler_total(dual), "=", 15 * 3 - 15)

# Two independent routes compute the same dual: the closed-form index
# reversal, and a walk along the ascending chain of box widths.
assert dualize_by_widths(gr26) == dual
# Dualizing twice is the identity on the combinatorial data.
assert dualize(dual).e_vector == gr26.e_vector

# Linear subspaces give the simplest dual pairs: a subspace of projective
# dimension l-1 dualizes to one of projective dimension N-l-1.
p5 = beilinson_profile(6, 15, "P5")
print("P5 dual length:", dualize(p5).length, "= 15 - 6")

# Profiles serialize deterministically; this is the CLI's file format.
print(profile_to_json(gr26))
