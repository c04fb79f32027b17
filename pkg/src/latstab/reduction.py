"""Basis reduction in exact rational arithmetic.

LLL runs entirely over Fractions, so the size-reduction and exchange
conditions are decided exactly and reducing an already reduced basis is a
literal no-op. Minkowski reduction is the greedy scheme: each step takes a
shortest lattice vector that keeps the chosen prefix extendable to a basis.
It is exact but enumerative, hence capped at small rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import linalg
from .errors import NotInLattice, NotPrimitive, RankTooLarge
from .lattice import Lattice, integral_coordinates
from .linalg import Mat, Vec, as_mat, as_vec

DEFAULT_DELTA = Fraction(3, 4)
MINKOWSKI_MAX_RANK = 4


@dataclass(frozen=True)
class ReducedBasis:
    lattice: Lattice
    kind: str  # "lll" or "minkowski"
    norms_sq: tuple[Fraction, ...]
    parameter: Fraction | None = None

    @property
    def basis(self) -> Mat:
        return self.lattice.basis


def _lll_rows(rows: Mat, delta: Fraction) -> tuple[Mat, tuple[tuple[int, ...], ...]]:
    """LLL-reduce rows; also returns the unimodular coordinate rows U with
    reduced = U * original."""
    m = len(rows)
    b = list(rows)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    _, mu = linalg.gram_schmidt(tuple(b))
    gamma = _gs_norms(tuple(b))
    k = 1
    while k < m:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = linalg.vsub(b[k], linalg.vscale(q, b[j]))
                U[k] = [a - q * c for a, c in zip(U[k], U[j])]
                _, mu = linalg.gram_schmidt(tuple(b))
        gamma = _gs_norms(tuple(b))
        if gamma[k] >= (delta - mu[k][k - 1] ** 2) * gamma[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            _, mu = linalg.gram_schmidt(tuple(b))
            k = max(k - 1, 1)
    return tuple(b), tuple(tuple(r) for r in U)


def _gs_norms(rows: Mat) -> tuple[Fraction, ...]:
    bstar, _ = linalg.gram_schmidt(rows)
    return tuple(linalg.norm_sq(w) for w in bstar)


def lll(L: Lattice, delta: Fraction | str | int = DEFAULT_DELTA) -> ReducedBasis:
    """LLL-reduced basis of L with exchange parameter delta in (1/4, 1)."""
    delta = linalg.as_rational(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"LLL parameter must be in (1/4, 1), got {delta}")
    rows, _ = _lll_rows(L.basis, delta)
    return ReducedBasis(
        lattice=Lattice(rows),
        kind="lll",
        norms_sq=tuple(linalg.norm_sq(r) for r in rows),
        parameter=delta,
    )


def _primitive_coords(C: list[tuple[int, ...]]) -> bool:
    """True when the integer rows extend to a unimodular matrix: full rank and
    the gcd of all maximal minors is 1 (all Smith invariants are 1)."""
    k = len(C)
    if k == 0:
        return True
    M = as_mat(C)
    if linalg.rank(M) != k:
        return False
    g = 0
    for cols in combinations(range(len(C[0])), k):
        sub = as_mat(tuple(tuple(row[c] for c in cols) for row in M))
        g = gcd(g, int(linalg.det(sub)))
        if g == 1:
            return True
    return g == 1


def is_primitive_system(L: Lattice, vectors) -> bool:
    """Whether the given lattice vectors extend to a basis of L."""
    coords = []
    for v in vectors:
        c = integral_coordinates(L, as_vec(v))
        if c is None:
            raise NotInLattice(f"{tuple(v)} is not a lattice vector")
        coords.append(c)
    return _primitive_coords(coords)


def _ambient_canonical(vec: Vec, coords: tuple[int, ...]) -> tuple[Vec, tuple[int, ...]]:
    """Flip sign so the first nonzero ambient entry is positive."""
    lead = next((a for a in vec if a), None)
    if lead is not None and lead < 0:
        return tuple(-a for a in vec), tuple(-c for c in coords)
    return vec, coords


def _shortest_extendable(L: Lattice, chosen_coords: list[tuple[int, ...]],
                         start_radius_sq: Fraction, node_budget: int) -> tuple[Vec, tuple[int, ...]]:
    """Shortest vector keeping the prefix primitive; ties go to the
    lexicographically greatest sign-canonical ambient vector."""
    from .enumeration import list_vectors

    radius_sq = start_radius_sq
    while True:
        ranked = []
        for coords, nsq in list_vectors(L, radius_sq, node_budget=node_budget).vectors:
            vec = linalg.vec_mat(as_vec(coords), L.basis)
            vec, coords = _ambient_canonical(vec, coords)
            ranked.append((nsq, tuple(-a for a in vec), vec, coords))
        for nsq, _, vec, coords in sorted(ranked):
            if _primitive_coords(chosen_coords + [coords]):
                return vec, coords
        radius_sq *= 4


def minkowski_reduce(L: Lattice, max_rank: int = MINKOWSKI_MAX_RANK,
                     node_budget: int | None = None) -> ReducedBasis:
    """Greedy Minkowski reduction; exact, available up to max_rank."""
    from .enumeration import DEFAULT_NODE_BUDGET

    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    if L.rank > max_rank:
        raise RankTooLarge(f"Minkowski reduction capped at rank {max_rank}, got {L.rank}")
    start = max(linalg.norm_sq(r) for r in _lll_rows(L.basis, DEFAULT_DELTA)[0])
    rows: list[Vec] = []
    coords: list[tuple[int, ...]] = []
    for _ in range(L.rank):
        vec, c = _shortest_extendable(L, coords, start, budget)
        rows.append(vec)
        coords.append(c)
    return ReducedBasis(
        lattice=Lattice(tuple(rows)),
        kind="minkowski",
        norms_sq=tuple(linalg.norm_sq(r) for r in rows),
    )


def extend_to_basis(L: Lattice, partial) -> Mat:
    """Complete a primitive system to a basis of L.

    Each appended vector minimizes the distance to the span of the vectors
    before it (ties: smallest norm, then greatest sign-canonical vector),
    which is exactly what keeps the system extendable at every step.
    """
    from .enumeration import DEFAULT_NODE_BUDGET, list_vectors

    current = [as_vec(v) for v in partial]
    if not is_primitive_system(L, current):
        raise NotPrimitive("partial system does not extend to a basis")
    coords = [integral_coordinates(L, v) for v in current]
    while len(current) < L.rank:
        span = as_mat(current)
        outside = []
        for row in L.basis:
            res = row if not span else linalg.vsub(row, linalg.project_onto_rowspace(span, row))
            if any(res):
                outside.append(linalg.norm_sq(res))
        d_ub = min(outside)
        sum_cur = sum((linalg.norm_sq(v) for v in current), Fraction(0))
        radius_sq = (len(current) + 1) * (sum_cur + d_ub)
        best = None
        for c, nsq in list_vectors(L, radius_sq, node_budget=DEFAULT_NODE_BUDGET).vectors:
            vec = linalg.vec_mat(as_vec(c), L.basis)
            res = vec if not span else linalg.vsub(vec, linalg.project_onto_rowspace(span, vec))
            dist_sq = linalg.norm_sq(res)
            if dist_sq == 0:
                continue
            vec, c = _ambient_canonical(vec, c)
            key = (dist_sq, nsq, tuple(-a for a in vec))
            if best is None or key < best[0]:
                best = (key, vec, c)
        assert best is not None, "a lattice of higher rank always has a vector off the span"
        current.append(best[1])
        coords.append(best[2])
        assert _primitive_coords([c for c in coords if c is not None])
    return tuple(current)
