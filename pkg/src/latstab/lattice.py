"""Lattices with rational bases, their duals, and integral annihilators.

A lattice is the set of integer combinations of independent rational rows.
The dual consists of the vectors inside the same rational span whose inner
product with every lattice vector is an integer; it is computed exactly as
gram(B)^-1 B, which makes taking the dual twice literally the identity on
basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor

from . import linalg
from .errors import DependentRows, NotInSpan
from .linalg import Mat, Vec, as_mat, as_vec


def dist_to_integers(a: Fraction | int | str) -> Fraction:
    """Distance from a rational to the nearest integer; always in [0, 1/2]."""
    a = linalg.as_rational(a)
    frac = a - floor(a)
    return min(frac, 1 - frac)


@dataclass(frozen=True)
class Lattice:
    """Integer row span of a full-row-rank rational basis matrix."""

    basis: Mat

    def __post_init__(self):
        object.__setattr__(self, "basis", as_mat(self.basis))
        if not self.basis or not self.basis[0]:
            raise ValueError("a lattice needs at least one nonzero basis row")
        if linalg.rank(self.basis) != len(self.basis):
            raise DependentRows("basis rows must be independent; use from_generators")

    @property
    def ambient_dim(self) -> int:
        return len(self.basis[0])

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram_matrix(self) -> Mat:
        return linalg.gram(self.basis)

    @cached_property
    def gram_inverse(self) -> Mat:
        return linalg.invert(self.gram_matrix)

    @staticmethod
    def from_generators(rows) -> "Lattice":
        """Lattice generated by possibly dependent rational rows."""
        M = as_mat(rows)
        scaled, D = linalg.clear_denominators(M)
        reduced = [r for r in linalg.hnf(scaled) if any(r)]
        if not reduced:
            raise ValueError("generators span the zero lattice")
        return Lattice(tuple(tuple(Fraction(a, D) for a in row) for row in reduced))


def dual(L: Lattice) -> Lattice:
    """Dual lattice inside span(L): rows of gram(B)^-1 B, biorthogonal to B."""
    return Lattice(linalg.mat_mul(L.gram_inverse, L.basis))


def double_dual_check(L: Lattice) -> bool:
    """Exact involution check: the dual of the dual is the original lattice."""
    return equal_lattices(dual(dual(L)), L)


@dataclass(frozen=True)
class AnnihilatorRep:
    """Integral annihilator of a lattice, split along span(L).

    The annihilator is the set of x whose inner product with every lattice
    vector is an integer; it decomposes as dual(L) plus the orthogonal
    complement of span(L), and is a lattice exactly when the complement is
    trivial. ``ortho_complement`` rows span that complement (empty at full
    rank), so rank(dual) + rows = ambient dimension.
    """

    lattice_basis: Mat
    dual: Lattice
    ortho_complement: Mat

    @property
    def is_lattice(self) -> bool:
        return not self.ortho_complement

    def contains(self, x) -> bool:
        """Membership test: B x must be an integer vector."""
        x = as_vec(x)
        return all(t.denominator == 1 for t in linalg.mat_vec(self.lattice_basis, x))


def annihilator(L: Lattice) -> AnnihilatorRep:
    return AnnihilatorRep(
        lattice_basis=L.basis,
        dual=dual(L),
        ortho_complement=linalg.null_space(L.basis),
    )


def dual_coordinates(L: Lattice, x) -> Vec:
    """Inner products of x (required to lie in span(L)) with the basis rows.

    These are the coefficients of x in the dual basis, so rounding them
    coordinate-wise is the canonical way to land in the dual lattice.
    """
    x = as_vec(x)
    if linalg.rowspace_coefficients(L.basis, x) is None:
        raise NotInSpan("vector is outside the rational span of the lattice")
    return linalg.mat_vec(L.basis, x)


def integral_coordinates(L: Lattice, x) -> tuple[int, ...] | None:
    """Integer coefficients of x in the basis, or None when x is not in L."""
    c = linalg.rowspace_coefficients(L.basis, as_vec(x))
    if c is None or any(a.denominator != 1 for a in c):
        return None
    return tuple(int(a) for a in c)


def is_member(L: Lattice, x) -> bool:
    return integral_coordinates(L, x) is not None


def equal_lattices(L1: Lattice, L2: Lattice) -> bool:
    """Exact set equality via canonical Hermite forms of rescaled bases."""
    if L1.ambient_dim != L2.ambient_dim or L1.rank != L2.rank:
        return False
    _, D1 = linalg.clear_denominators(L1.basis)
    _, D2 = linalg.clear_denominators(L2.basis)
    D = D1 * D2 // linalg._gcd(D1, D2)
    scale = Fraction(D)
    A = tuple(tuple(int(a * scale) for a in row) for row in L1.basis)
    B = tuple(tuple(int(a * scale) for a in row) for row in L2.basis)
    return linalg.hnf(A) == linalg.hnf(B)
