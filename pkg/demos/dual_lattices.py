"""
Dual lattices, exactly
======================

Every quantity below is a Fraction; equality means equality.
"""

from fractions import Fraction as F

from latstab import Lattice, annihilator, dual, integral_coordinates, linalg

# A diagonal lattice with one coarse direction (spacing 2) and one fine
# direction (spacing 1/2).
L = Lattice(((F(2), F(0)), (F(0), F(1, 2))))
W = dual(L)
print("basis:     ", L.basis)
print("dual basis:", W.basis)

# The defining property: basis rows and dual rows are biorthogonal.
for i, v in enumerate(L.basis):
    for j, w in enumerate(W.basis):
        assert linalg.dot(v, w) == (1 if i == j else 0)
print("biorthogonality holds exactly")

# Dualizing twice returns the very same basis matrix, not merely the same
# lattice: the construction is an involution on bases.
assert dual(W).basis == L.basis
print("double dual is the identity on the basis")

# A lattice of lower rank than its ambient space: the dual lives in the
# same plane, while the annihilator picks up the orthogonal directions.
line = Lattice(((F(1), F(1)),))
rep = annihilator(line)
print("\nline through (1,1):")
print("  dual row:        ", rep.dual.basis[0])
print("  free directions: ", rep.ortho_complement)
print("  is a lattice?    ", rep.is_lattice)
# (-3/2, 5/2) is the dual row plus twice the free direction: it has integer
# products with the whole lattice despite sitting far from the dual line.
assert rep.contains((F(-3, 2), F(5, 2)))
assert not rep.contains((F(1, 2), F(0)))

# Membership and coordinates in a skewed basis.
skew = Lattice(((F(1), F(0)), (F(3), F(1))))
print("\ncoordinates of (7, 2) in the shear basis:", integral_coordinates(skew, (7, 2)))
