"""Exact linear algebra over rationals.

Vectors are tuples of ``Fraction``; matrices are tuples of row vectors.
Everything is a value: operations return new tuples and never mutate.
Squared euclidean norms stay rational, so all comparisons here are exact;
nothing in this module touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import DependentRows, SingularMatrix

Rational = Fraction
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def as_rational(x: int | str | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_vec(entries: Iterable[int | str | Fraction]) -> Vec:
    return tuple(as_rational(x) for x in entries)


def as_mat(rows: Iterable[Iterable[int | str | Fraction]]) -> Mat:
    out = tuple(as_vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def dot(u: Vec, v: Vec) -> Fraction:
    assert len(u) == len(v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm_sq(v: Vec) -> Fraction:
    return dot(v, v)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction | int, v: Vec) -> Vec:
    c = as_rational(c)
    return tuple(c * a for a in v)


def transpose(M: Mat) -> Mat:
    return tuple(zip(*M)) if M else ()


def identity(m: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m))


def mat_vec(M: Mat, x: Vec) -> Vec:
    """M applied to the column vector x: entry i is row_i . x."""
    return tuple(dot(row, x) for row in M)


def vec_mat(x: Vec, M: Mat) -> Vec:
    """Row vector times matrix: the combination sum_i x_i * row_i."""
    assert len(x) == len(M)
    n = len(M[0]) if M else 0
    out = list(zeros(n))
    for c, row in zip(x, M):
        if c:
            for j, a in enumerate(row):
                out[j] += c * a
    return tuple(out)


def mat_mul(A: Mat, B: Mat) -> Mat:
    return tuple(vec_mat(row, B) for row in A)


def gram(B: Mat) -> Mat:
    """Matrix of pairwise inner products of the rows of B."""
    return tuple(tuple(dot(u, v) for v in B) for u in B)


def rank(M: Mat) -> int:
    rows = [list(r) for r in M]
    n = len(rows[0]) if rows else 0
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][j]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j]:
                c = rows[i][j]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def det(M: Mat) -> Fraction:
    m = len(M)
    assert all(len(r) == m for r in M), "determinant needs a square matrix"
    rows = [list(r) for r in M]
    result = Fraction(1)
    for j in range(m):
        piv = next((i for i in range(j, m) if rows[i][j]), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            rows[j], rows[piv] = rows[piv], rows[j]
            result = -result
        result *= rows[j][j]
        inv = 1 / rows[j][j]
        for i in range(j + 1, m):
            if rows[i][j]:
                c = rows[i][j] * inv
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[j])]
    return result


def invert(M: Mat) -> Mat:
    """Exact inverse of a square matrix; raises SingularMatrix if none exists."""
    m = len(M)
    assert all(len(r) == m for r in M), "inverse needs a square matrix"
    aug = [list(row) + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(M)]
    for j in range(m):
        piv = next((i for i in range(j, m) if aug[i][j]), None)
        if piv is None:
            raise SingularMatrix(f"no pivot in column {j}")
        aug[j], aug[piv] = aug[piv], aug[j]
        inv = 1 / aug[j][j]
        aug[j] = [a * inv for a in aug[j]]
        for i in range(m):
            if i != j and aug[i][j]:
                c = aug[i][j]
                aug[i] = [a - c * b for a, b in zip(aug[i], aug[j])]
    return tuple(tuple(row[m:]) for row in aug)


def solve(M: Mat, b: Vec) -> Vec:
    """Solution x of the square system M x = b; raises SingularMatrix."""
    return mat_vec(invert(M), b)


def gram_schmidt(B: Mat) -> tuple[Mat, Mat]:
    """Orthogonalize rows: returns (B*, mu) with B = mu B* and mu unit lower triangular.

    Raises DependentRows when some orthogonalized row vanishes.
    """
    bstar: list[Vec] = []
    gamma: list[Fraction] = []
    mu = [[Fraction(int(i == j)) for j in range(len(B))] for i in range(len(B))]
    for i, b in enumerate(B):
        w = b
        for j in range(i):
            mu[i][j] = dot(b, bstar[j]) / gamma[j]
            w = vsub(w, vscale(mu[i][j], bstar[j]))
        g = norm_sq(w)
        if g == 0:
            raise DependentRows(f"row {i} is in the span of the previous rows")
        bstar.append(w)
        gamma.append(g)
    return tuple(bstar), tuple(tuple(r) for r in mu)


def project_onto_rowspace(B: Mat, x: Vec) -> Vec:
    """Orthogonal projection of x onto the row space of B (rows independent)."""
    try:
        coeff = solve(gram(B), mat_vec(B, x))
    except SingularMatrix:
        raise DependentRows("projection needs independent rows") from None
    return vec_mat(coeff, B)


def rowspace_coefficients(B: Mat, x: Vec) -> Vec | None:
    """Coefficients c with c B = x, or None when x is outside the row space.

    B must have independent rows; the returned c is unique.
    """
    try:
        c = solve(gram(B), mat_vec(B, x))
    except SingularMatrix:
        raise DependentRows("coordinates need independent rows") from None
    return c if vec_mat(c, B) == tuple(x) else None


def null_space(M: Mat) -> Mat:
    """Rows spanning the solution space of M x = 0 (one row per free column)."""
    rows = [list(r) for r in M]
    n = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][j]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j]:
                c = rows[i][j]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def hnf(M: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of an integer matrix.

    Canonical for the row lattice: pivots are positive and leftmost, entries
    above each pivot are reduced into [0, pivot), zero rows sink to the bottom.
    The shape of the input is preserved.
    """
    H = [[int(a) for a in row] for row in M]
    m = len(H)
    n = len(H[0]) if m else 0
    r = 0
    for j in range(n):
        if r == m:
            break
        if not any(H[i][j] for i in range(r, m)):
            continue
        while True:
            nz = [i for i in range(r, m) if H[i][j]]
            i0 = min(nz, key=lambda i: (abs(H[i][j]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
            if H[r][j] < 0:
                H[r] = [-a for a in H[r]]
            pivot = H[r][j]
            clean = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // pivot
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][j]:
                        clean = False
            if clean:
                break
        pivot = H[r][j]
        for i in range(r):
            q = H[i][j] // pivot
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        r += 1
    return tuple(tuple(row) for row in H)


def clear_denominators(M: Mat) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Smallest positive integer D with D*M integral, plus that integer matrix."""
    D = 1
    for row in M:
        for a in row:
            D = D * a.denominator // _gcd(D, a.denominator)
    scaled = tuple(tuple(int(a * D) for a in row) for row in M)
    return scaled, D


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def floor_sqrt(x: Fraction) -> int:
    """Largest integer t >= 0 with t*t <= x (x >= 0)."""
    assert x >= 0
    return isqrt(x.numerator * x.denominator) // x.denominator


def ceil_sqrt(x: Fraction) -> int:
    """Smallest integer t >= 0 with t*t >= x (x >= 0)."""
    t = floor_sqrt(x)
    return t if t * t >= x else t + 1
