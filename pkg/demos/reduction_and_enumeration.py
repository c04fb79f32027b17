"""
Basis reduction and exact enumeration
=====================================

A nearly parallel basis is straightened out, then searched: shortest
vectors, successive minima, nearest points, and the covering radius, all
as exact rationals.
"""

from fractions import Fraction as F

from latstab import (
    Lattice,
    closest_vector,
    covering_radius,
    list_vectors,
    lll,
    minkowski_reduce,
    shortest_vector,
    successive_minima,
)

# Two long, nearly parallel rows that secretly generate the unit grid.
L = Lattice(((F(201), F(200)), (F(200), F(199))))
print("input rows:     ", L.basis)
print("lll rows:       ", lll(L).basis)
print("minkowski rows: ", minkowski_reduce(L).basis)

# Enumeration works on the original basis; reduction only speeds it up.
coords, norm_sq = shortest_vector(L)
print("shortest vector:", coords, "norm^2 =", norm_sq)

mins = successive_minima(L)
print("minima^2:       ", mins.minima_sq)

# All vectors in a ball, one representative per +-pair.
ball = list_vectors(L, F(2))
print("within norm^2 <= 2:", [(c, str(q)) for c, q in ball])

# Nearest lattice point to a rational target, with exact tie handling:
# (1/2, 0) sits midway between two grid points and the smaller coordinate
# vector wins.
near = closest_vector(L, (F(1, 2), F(0)))
print("nearest to (1/2, 0):", near.point, "dist^2 =", near.dist_sq)

# The covering radius of the plane grid: the deepest hole is the cell
# center, half the diagonal away.
mu = covering_radius(L)
print("covering radius^2 =", mu.lower_sq, "witness:", mu.witness)

# A lattice where the deep hole is not the naive cell center.
stretched = Lattice(((F(2), F(0)), (F(0), F(1, 2))))
mu2 = covering_radius(stretched)
print("stretched lattice: covering radius^2 =", mu2.lower_sq, "witness:", mu2.witness)
