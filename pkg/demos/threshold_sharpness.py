"""
Why the threshold sits at one third
===================================

Below delta = 1/3, almost-integer products against enough lattice vectors
force a point close to the dual lattice. At delta = 1/3 the forcing
breaks: a third of a shortest dual vector satisfies the hypothesis at
EVERY radius yet keeps its distance.
"""

from fractions import Fraction as F

from latstab import Lattice, linalg, list_vectors, sharpness_witness

for rows, name in [
    (((F(1),),), "unit line"),
    (((F(1), F(0)), (F(0), F(1))), "unit grid"),
    (((F(2), F(0)), (F(0), F(1, 2))), "stretched grid"),
]:
    L = Lattice(rows)
    wit = sharpness_witness(L, verify_radius_sq=F(100))
    print(f"{name}:")
    print("  witness x =", wit.x)
    print("  hypothesis at delta=1/3 verified over",
          wit.report.checked_count, "vectors:", wit.report.holds)
    print("  distance^2 to the dual lattice:", wit.near.dist_sq)

# The reason the check can never fail, at any radius: u.x is u.w/3 for a
# dual vector w, and u.w is an integer, so every product is a multiple of
# 1/3 and sits within 1/3 of an integer.
L = Lattice(((F(1), F(0)), (F(0), F(1))))
wit = sharpness_witness(L)
for coords, _ in list_vectors(L, F(50)):
    u = linalg.vec_mat(linalg.as_vec(coords), L.basis)
    product = linalg.dot(u, wit.x)
    assert (3 * product).denominator == 1
print("\nevery inner product with the witness is a multiple of 1/3")
