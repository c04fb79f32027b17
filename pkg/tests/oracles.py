"""Brute-force reference implementations for cross-checking enumeration.

Everything here trades speed for obviousness: coordinate boxes derived from
the Cauchy-Schwarz bound |c_i| <= ||v|| ||w_i|| (w_i the dual rows) are
scanned exhaustively, with no pruning and no recursion.
"""

from fractions import Fraction
from itertools import product

from latstab import Lattice, dual
from latstab import linalg


def _canonical_sign(coords):
    for a in coords:
        if a:
            return coords if a > 0 else tuple(-c for c in coords)
    return coords


def box_vectors(L: Lattice, radius_sq: Fraction):
    """All (coords, norm_sq) with 0 < norm_sq <= radius_sq, one per +-pair,
    sorted by (norm_sq, coords)."""
    W = dual(L).basis
    spans = [linalg.floor_sqrt(radius_sq * linalg.norm_sq(w)) for w in W]
    found = {}
    for c in product(*[range(-s, s + 1) for s in spans]):
        if not any(c):
            continue
        nsq = linalg.norm_sq(linalg.vec_mat(linalg.as_vec(c), L.basis))
        if nsq <= radius_sq:
            found[_canonical_sign(c)] = nsq
    return sorted(found.items(), key=lambda p: (p[1], p[0]))


def box_closest(L: Lattice, x):
    """Exact minimum distance squared to L and every optimal coordinate
    vector, by scanning a box around the coordinate-wise rounding."""
    x = linalg.as_vec(x)
    t = linalg.rowspace_coefficients(L.basis, x)
    assert t is not None, "oracle targets must lie in span(L)"
    g = [round(a) for a in t]
    y0 = linalg.vec_mat(linalg.as_vec(g), L.basis)
    bound = linalg.norm_sq(linalg.vsub(x, y0))
    W = dual(L).basis
    spans = [linalg.floor_sqrt(bound * linalg.norm_sq(w)) + 1 for w in W]
    best = bound
    ties = []
    for off in product(*[range(-s, s + 1) for s in spans]):
        c = tuple(gi + oi for gi, oi in zip(g, off))
        d = linalg.norm_sq(linalg.vsub(x, linalg.vec_mat(linalg.as_vec(c), L.basis)))
        if d < best:
            best, ties = d, [c]
        elif d == best:
            ties.append(c)
    return best, sorted(ties)


def box_minima(L: Lattice):
    """Successive minima squared via the box scan and greedy rank growth."""
    m = L.rank
    radius = min(linalg.norm_sq(row) for row in L.basis)
    while True:
        chosen: list[tuple[int, ...]] = []
        mins = []
        for c, nsq in box_vectors(L, radius):
            if linalg.rank(linalg.as_mat(chosen + [c])) == len(chosen) + 1:
                chosen.append(c)
                mins.append(nsq)
                if len(chosen) == m:
                    return tuple(mins)
        radius *= 4
