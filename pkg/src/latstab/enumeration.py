"""Exact lattice point enumeration and the quantities built on it.

All searches walk a depth-first tree over Gram-Schmidt coordinates of an
LLL-reduced working basis (Schnorr-Euchner ordering: candidates at each
level leave the interval center outward, nearer side first). Every bound
comparison is a rational comparison, so results are exact; floats never
enter. A node budget caps the tree walk and raising BudgetExceeded is the
only way a search gives up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .errors import BudgetExceeded, NotInSpan, RankTooLarge
from .lattice import Lattice
from .linalg import Mat, Vec, as_mat, as_vec
from .reduction import DEFAULT_DELTA, _lll_rows
from .rng import SplitMix64

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class ShortVectorList:
    """Nonzero vectors with norm_sq <= radius_sq, one of each +-pair, as
    (coords, norm_sq) sorted by norm then coordinates."""

    radius_sq: Fraction
    vectors: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class SuccessiveMinima:
    minima_sq: tuple[Fraction, ...]
    achieving_vectors: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class NearResult:
    """A lattice point, its integer coordinates in the stored basis, and the
    exact squared distance to the query."""

    point: Vec
    coords: tuple[int, ...]
    dist_sq: Fraction


@dataclass(frozen=True)
class CoveringRadiusBounds:
    lower_sq: Fraction
    upper_sq: Fraction
    exact: bool
    witness: Vec


class _Budget:
    __slots__ = ("cap", "left")

    def __init__(self, cap: int):
        self.cap = cap
        self.left = cap

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded(self.cap)


@dataclass(frozen=True)
class _Prep:
    rows: Mat                       # LLL-reduced working basis
    transform: tuple[tuple[int, ...], ...]  # working = transform * stored
    gamma: tuple[Fraction, ...]     # squared Gram-Schmidt norms
    mu: Mat


@lru_cache(maxsize=256)
def _prep(L: Lattice) -> _Prep:
    rows, U = _lll_rows(L.basis, DEFAULT_DELTA)
    bstar, mu = linalg.gram_schmidt(rows)
    return _Prep(rows=rows, transform=U, gamma=tuple(linalg.norm_sq(w) for w in bstar), mu=mu)


def _se_scan(prep: _Prep, t: Vec, bound: list[Fraction], on_leaf, budget: _Budget) -> None:
    """DFS over integer combinations c of the working rows, pruning exactly on
    sum_i (c_i - center_i)^2 gamma_i > bound[0]. The bound may shrink inside
    on_leaf; ties at the bound are still visited."""
    gamma, mu = prep.gamma, prep.mu
    m = len(gamma)
    c = [0] * m

    def descend(i: int, partial: Fraction, ci: int, contrib: Fraction):
        c[i] = ci
        if i == 0:
            on_leaf(tuple(c), partial + contrib)
        else:
            level(i - 1, partial + contrib)

    def level(i: int, partial: Fraction):
        center = t[i]
        for j in range(i + 1, m):
            center += (t[j] - c[j]) * mu[j][i]
        c0 = round(center)
        budget.tick()
        contrib = (c0 - center) ** 2 * gamma[i]
        if partial + contrib > bound[0]:
            return
        descend(i, partial, c0, contrib)
        up, dn = c0 + 1, c0 - 1
        up_c = (up - center) ** 2 * gamma[i]
        dn_c = (dn - center) ** 2 * gamma[i]
        up_alive = dn_alive = True
        while up_alive or dn_alive:
            if up_alive and (not dn_alive or up_c <= dn_c):
                budget.tick()
                if partial + up_c > bound[0]:
                    up_alive = False
                else:
                    descend(i, partial, up, up_c)
                    up += 1
                    up_c = (up - center) ** 2 * gamma[i]
            else:
                budget.tick()
                if partial + dn_c > bound[0]:
                    dn_alive = False
                else:
                    descend(i, partial, dn, dn_c)
                    dn -= 1
                    dn_c = (dn - center) ** 2 * gamma[i]

    level(m - 1, Fraction(0))


def _to_stored(prep: _Prep, c_work: tuple[int, ...]) -> tuple[int, ...]:
    U = prep.transform
    m = len(U)
    return tuple(sum(c_work[i] * U[i][j] for i in range(m)) for j in range(m))


def _canonical_sign(coords: tuple[int, ...]) -> tuple[int, ...]:
    lead = next((a for a in coords if a), 0)
    return tuple(-a for a in coords) if lead < 0 else coords


def list_vectors(L: Lattice, radius_sq, node_budget: int = DEFAULT_NODE_BUDGET) -> ShortVectorList:
    """All nonzero lattice vectors with norm_sq <= radius_sq, up to sign.

    Coordinates refer to the stored basis, sign-normalized so the first
    nonzero coordinate is positive.
    """
    radius_sq = linalg.as_rational(radius_sq)
    prep = _prep(L)
    t = linalg.zeros(L.rank)
    seen: dict[tuple[int, ...], Fraction] = {}

    def on_leaf(c_work: tuple[int, ...], nsq: Fraction):
        if not any(c_work):
            return
        seen[_canonical_sign(_to_stored(prep, c_work))] = nsq

    _se_scan(prep, t, [radius_sq], on_leaf, _Budget(node_budget))
    ordered = sorted(seen.items(), key=lambda kv: (kv[1], kv[0]))
    return ShortVectorList(radius_sq=radius_sq, vectors=tuple(ordered))


def shortest_vector(L: Lattice, node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[tuple[int, ...], Fraction]:
    """A shortest nonzero vector as (coords, norm_sq); ties resolved to the
    lexicographically smallest sign-canonical coordinate vector."""
    start = min(linalg.norm_sq(r) for r in _prep(L).rows)
    hits = list_vectors(L, start, node_budget=node_budget)
    return hits.vectors[0]


def successive_minima(L: Lattice, node_budget: int = DEFAULT_NODE_BUDGET) -> SuccessiveMinima:
    """All rank many successive minima, with rank-increasing witnesses."""
    radius_sq = max(linalg.norm_sq(r) for r in _prep(L).rows)
    chosen: list[Vec] = []
    minima: list[Fraction] = []
    achieving: list[tuple[int, ...]] = []
    for coords, nsq in list_vectors(L, radius_sq, node_budget=node_budget).vectors:
        vec = linalg.vec_mat(as_vec(coords), L.basis)
        if linalg.rank(as_mat(chosen + [vec])) > len(chosen):
            chosen.append(vec)
            minima.append(nsq)
            achieving.append(coords)
            if len(chosen) == L.rank:
                break
    assert len(chosen) == L.rank, "the working basis rows alone reach full rank"
    return SuccessiveMinima(minima_sq=tuple(minima), achieving_vectors=tuple(achieving))


def _target_coords(prep: _Prep, L: Lattice, x: Vec) -> Vec | None:
    return linalg.rowspace_coefficients(prep.rows, x)


def closest_vector(L: Lattice, x, project: bool = False,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> NearResult:
    """Exact closest lattice point to x.

    x must lie in span(L) unless project=True, in which case the search runs
    on the projection and the reported distance still refers to x itself
    (the orthogonal part is constant across lattice points).
    """
    x = as_vec(x)
    prep = _prep(L)
    t = _target_coords(prep, L, x)
    extra = Fraction(0)
    if t is None:
        if not project:
            raise NotInSpan("target is outside span(L); pass project=True to allow")
        x_in = linalg.project_onto_rowspace(L.basis, x)
        extra = linalg.norm_sq(linalg.vsub(x, x_in))
        t = _target_coords(prep, L, x_in)
        assert t is not None
    rounded = tuple(round(a) for a in t)
    start = linalg.norm_sq(linalg.vsub(linalg.vec_mat(as_vec(rounded), prep.rows),
                                       linalg.vec_mat(t, prep.rows)))
    bound = [start]
    best: list = [start, []]

    def on_leaf(c_work: tuple[int, ...], dsq: Fraction):
        if dsq < best[0]:
            best[0] = dsq
            best[1] = [c_work]
            bound[0] = dsq
        elif dsq == best[0]:
            best[1].append(c_work)

    _se_scan(prep, t, bound, on_leaf, _Budget(node_budget))
    coords = min(_to_stored(prep, c) for c in best[1])
    point = linalg.vec_mat(as_vec(coords), L.basis)
    return NearResult(point=point, coords=coords, dist_sq=best[0] + extra)


def _points_within(L: Lattice, x: Vec, radius_sq: Fraction,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> list[tuple[tuple[int, ...], Fraction]]:
    """All lattice points within radius of x (x in span(L)), as stored-basis
    coordinates with exact squared distances."""
    prep = _prep(L)
    t = _target_coords(prep, L, x)
    if t is None:
        raise NotInSpan("target is outside span(L)")
    out: list[tuple[tuple[int, ...], Fraction]] = []

    def on_leaf(c_work, dsq):
        out.append((_to_stored(prep, c_work), dsq))

    _se_scan(prep, t, [radius_sq], on_leaf, _Budget(node_budget))
    return out


def _is_voronoi_relevant(L: Lattice, coords: tuple[int, ...],
                         node_budget: int) -> bool:
    """Conway-Sloane test: v is relevant iff the only lattice points nearest
    to v/2 are 0 and v."""
    v = linalg.vec_mat(as_vec(coords), L.basis)
    half = linalg.vscale(Fraction(1, 2), v)
    bound = linalg.norm_sq(half)
    pts = _points_within(L, half, bound, node_budget)
    nearest = min(d for _, d in pts)
    if nearest < bound:
        return False
    tied = [c for c, d in pts if d == bound]
    return sorted(tied) == sorted([tuple([0] * L.rank), coords])


def _voronoi_vertex_data(L: Lattice, node_budget: int) -> tuple[list[Vec], Fraction, Vec]:
    """Vertices of the Voronoi cell of the origin (ambient coordinates),
    the exact squared covering radius, and the witness vertex."""
    m = L.rank
    if m > 3:
        raise RankTooLarge(f"exact covering radius capped at rank 3, got {m}")
    G = L.gram_matrix
    mins = successive_minima(L, node_budget=node_budget)
    gamma = _prep(L).gamma
    mu_ub_sq = min(Fraction(m * m, 4) * mins.minima_sq[-1],
                   Fraction(1, 4) * sum(gamma))
    candidates = list_vectors(L, 4 * mu_ub_sq, node_budget=node_budget)
    relevant = [c for c, _ in candidates.vectors if _is_voronoi_relevant(L, c, node_budget)]
    constraints = []  # (normal in basis coords a = G c, rhs = (c G c^T)/2) for both signs
    for c in relevant:
        cv = as_vec(c)
        a = linalg.mat_vec(G, cv)
        rhs = linalg.dot(cv, a) / 2
        constraints.append((a, rhs))
        constraints.append((tuple(-e for e in a), rhs))
    vertices: set[Vec] = set()
    for subset in combinations(range(len(constraints)), m):
        A = as_mat([constraints[i][0] for i in subset])
        if linalg.rank(A) != m:
            continue
        xi = linalg.solve(A, as_vec([constraints[i][1] for i in subset]))
        if all(linalg.dot(xi, a) <= rhs for a, rhs in constraints):
            vertices.add(xi)
    assert vertices, "the Voronoi cell of a full-rank-in-span lattice has vertices"
    best_sq = Fraction(-1)
    witness_xi: Vec = ()
    verts_ambient = []
    for xi in sorted(vertices):
        vsq = linalg.dot(xi, linalg.mat_vec(G, xi))
        verts_ambient.append(linalg.vec_mat(xi, L.basis))
        if vsq > best_sq or (vsq == best_sq and _greater_ambient(verts_ambient[-1], witness_xi)):
            best_sq = vsq
            witness_xi = verts_ambient[-1]
    return verts_ambient, best_sq, witness_xi


def _greater_ambient(v: Vec, w: Vec) -> bool:
    return not w or v > w


def covering_radius(L: Lattice, mode: str = "exact", seed: int = 0, restarts: int = 16,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> CoveringRadiusBounds:
    """Covering radius of L within its span, squared.

    mode="exact" (rank <= 3): the exact maximum over Voronoi cell vertices,
    lower_sq == upper_sq, witness is a deepest hole. mode="heuristic": any
    rank; lower_sq comes from seeded multistart ascent of the distance
    function (each evaluation an exact CVP), upper_sq from analytic bounds.
    """
    m = L.rank
    if mode == "exact":
        _, mu_sq, witness = _voronoi_vertex_data(L, node_budget)
        check = closest_vector(L, witness, node_budget=node_budget)
        assert check.dist_sq == mu_sq, "witness distance must equal the vertex norm"
        return CoveringRadiusBounds(lower_sq=mu_sq, upper_sq=mu_sq, exact=True, witness=witness)
    if mode != "heuristic":
        raise ValueError(f"mode must be 'exact' or 'heuristic', got {mode!r}")

    mins = successive_minima(L, node_budget=node_budget)
    gamma = _prep(L).gamma
    upper_sq = min(Fraction(m * m, 4) * mins.minima_sq[-1], Fraction(1, 4) * sum(gamma))
    rng = SplitMix64(seed)
    half = Fraction(1, 2)
    starts = [tuple(half for _ in range(m))]
    starts += [tuple(half if i == j else Fraction(0) for j in range(m)) for i in range(m)]
    starts += [tuple(rng.fraction() for _ in range(m)) for _ in range(restarts)]
    best = (Fraction(0), linalg.zeros(L.ambient_dim))

    def dist_sq_at(tcoords: Vec) -> Fraction:
        pt = linalg.vec_mat(tcoords, L.basis)
        return closest_vector(L, pt, node_budget=node_budget).dist_sq

    for t0 in starts:
        t = t0
        f = dist_sq_at(t)
        step = Fraction(1, 4)
        while step >= Fraction(1, 64):
            moved = False
            for i in range(m):
                for sgn in (1, -1):
                    cand = tuple(a + sgn * step if j == i else a for j, a in enumerate(t))
                    fc = dist_sq_at(cand)
                    if fc > f:
                        t, f, moved = cand, fc, True
            if not moved:
                step /= 2
        if f > best[0]:
            best = (f, linalg.vec_mat(t, L.basis))
    return CoveringRadiusBounds(lower_sq=best[0], upper_sq=upper_sq, exact=False, witness=best[1])
