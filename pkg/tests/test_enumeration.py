from fractions import Fraction as F

import pytest

from latstab import (
    BudgetExceeded,
    Lattice,
    NotInSpan,
    RankTooLarge,
    closest_vector,
    covering_radius,
    linalg,
    list_vectors,
    shortest_vector,
    successive_minima,
)
from conftest import seeded_lattices
from oracles import box_closest, box_minima, box_vectors


class TestListVectors:
    def test_unit_square_counts(self, z2):
        assert len(list_vectors(z2, F(1))) == 2
        assert len(list_vectors(z2, F(2))) == 4
        assert len(list_vectors(z2, F(4))) == 6

    def test_sorted_and_sign_canonical(self, z2):
        got = list_vectors(z2, F(2)).vectors
        assert got == (((0, 1), F(1)), ((1, 0), F(1)), ((1, -1), F(2)), ((1, 1), F(2)))

    def test_rational_radius(self, mixed2):
        got = list_vectors(mixed2, F(5, 4)).vectors
        assert got == (((0, 1), F(1, 4)), ((0, 2), F(1)))

    def test_matches_box_oracle_on_random_lattices(self):
        for L in seeded_lattices(101, 12, n_max=3, entry_bound=3):
            radius = 2 * max(linalg.norm_sq(r) for r in L.basis)
            assert list_vectors(L, radius).vectors == tuple(box_vectors(L, radius))


class TestShortestAndMinima:
    def test_shortest_frozen(self, mixed2):
        assert shortest_vector(mixed2) == ((0, 1), F(1, 4))

    def test_minima_frozen(self):
        L = Lattice(((F(1), F(0)), (F(1, 2), F(10))))
        mins = successive_minima(L)
        assert mins.minima_sq == (F(1), F(401, 4))

    def test_minima_match_box_oracle(self):
        for L in seeded_lattices(202, 10, n_max=3, entry_bound=3):
            assert successive_minima(L).minima_sq == box_minima(L)

    def test_achieving_vectors_are_independent(self, z3):
        mins = successive_minima(z3)
        assert linalg.rank(linalg.as_mat(mins.achieving_vectors)) == 3


class TestClosestVector:
    def test_frozen_interior(self, z2):
        near = closest_vector(z2, (F(2, 5), F(3, 5)))
        assert near.point == (0, 1)
        assert near.dist_sq == F(8, 25)

    def test_frozen_skewed(self):
        L = Lattice(((F(1), F(0)), (F(3), F(1))))
        near = closest_vector(L, (0, F(9, 10)))
        assert near.coords == (-3, 1)
        assert near.dist_sq == F(1, 100)

    def test_tie_breaks_to_smallest_coords(self, z2):
        near = closest_vector(z2, (F(1, 2), 0))
        assert near.coords == (0, 0)
        assert near.dist_sq == F(1, 4)

    def test_outside_span_needs_project(self):
        L = Lattice(((F(1), F(0)),))
        with pytest.raises(NotInSpan):
            closest_vector(L, (F(1, 4), 1))
        near = closest_vector(L, (F(1, 4), 1), project=True)
        assert near.point == (0, 0)
        assert near.dist_sq == F(17, 16)

    def test_matches_box_oracle(self):
        lattices = seeded_lattices(303, 10, n_max=3, entry_bound=3)
        for idx, L in enumerate(lattices):
            t = tuple(F(idx + i + 1, 2 * idx + 3) for i in range(L.rank))
            x = linalg.vec_mat(t, L.basis)
            best, ties = box_closest(L, x)
            near = closest_vector(L, x)
            assert near.dist_sq == best
            assert near.coords == ties[0]


class TestBudget:
    def test_budget_exceeded(self, z3):
        with pytest.raises(BudgetExceeded):
            list_vectors(z3, F(400), node_budget=50)

    def test_error_carries_cap(self, z3):
        with pytest.raises(BudgetExceeded) as err:
            list_vectors(z3, F(400), node_budget=50)
        assert err.value.budget == 50


class TestCoveringRadius:
    def test_unit_square(self, z2):
        got = covering_radius(z2)
        assert got.exact
        assert got.lower_sq == got.upper_sq == F(1, 2)
        assert got.witness == (F(1, 2), F(1, 2))

    def test_line(self, z1):
        assert covering_radius(z1).lower_sq == F(1, 4)

    def test_diagonal_frozen(self, mixed2):
        got = covering_radius(mixed2)
        assert got.lower_sq == F(17, 16)
        assert got.witness == (1, F(1, 4))

    def test_cube(self, z3):
        assert covering_radius(z3).lower_sq == F(3, 4)

    def test_witness_distance_is_the_radius(self, skew2):
        got = covering_radius(skew2)
        assert closest_vector(skew2, got.witness).dist_sq == got.lower_sq

    def test_exact_capped_at_rank_three(self):
        rows = tuple(tuple(F(1 if i == j else 0) for j in range(4)) for i in range(4))
        with pytest.raises(RankTooLarge):
            covering_radius(Lattice(rows))

    def test_heuristic_brackets_exact(self, mixed2):
        got = covering_radius(mixed2, "heuristic", seed=3)
        assert not got.exact
        assert got.lower_sq <= F(17, 16) <= got.upper_sq

    def test_heuristic_finds_cube_hole(self):
        rows = tuple(tuple(F(1 if i == j else 0) for j in range(4)) for i in range(4))
        got = covering_radius(Lattice(rows), "heuristic")
        assert got.lower_sq == got.upper_sq == F(1)

    def test_mode_validated(self, z2):
        with pytest.raises(ValueError):
            covering_radius(z2, "fast")
