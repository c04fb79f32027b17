"""
From almost-integer products to nearby dual vectors
===================================================

If x has near-integer inner products with the basis rows, rounding its
dual coordinates lands on a provably close dual vector; exact search can
only do better. The same mechanism solves linear systems "nearest to a
guess", with a certified bound on how much the correction can exceed the
residual.
"""

from fractions import Fraction as F

from latstab import (
    Lattice,
    almost_near_linear,
    check_hypothesis,
    near_dual_vector,
    residual_amplification,
    round_in_dual_coordinates,
    linalg,
)

L = Lattice(((F(1), F(0)), (F(0), F(1))))
x = (F(9, 10), F(1, 10))

# Both unit products are within 1/10 of an integer...
report = check_hypothesis(L, x, delta=F(1, 10), radius_sq=F(1))
print("hypothesis at delta=1/10, radius^2=1:", report.holds,
      f"({report.checked_count} vectors checked)")

# ...so rounding the dual coordinates yields a close dual vector, within
# the analytic bound m * delta^2 * sum ||w_i||^2 = 2 * (1/100) * 2 = 1/25.
rounded = round_in_dual_coordinates(L, x)
print("rounded:", rounded.point, "dist^2 =", rounded.dist_sq, "(bound 1/25)")

# Exact nearest search agrees here; in skewed bases it can be strictly
# better than rounding.
exact = near_dual_vector(L, x)
print("exact:  ", exact.point, "dist^2 =", exact.dist_sq)

skew = Lattice(((F(1), F(0)), (F(7), F(1))))
y = (F(43, 10), F(3, 5))
print("\nskewed basis:")
print("  rounded dist^2:", round_in_dual_coordinates(skew, y).dist_sq)
print("  exact dist^2:  ", near_dual_vector(skew, y).dist_sq)

# The linear-system analogue: the solution of A z = b nearest to a guess x,
# computed exactly.
A = ((F(1), F(1)),)
b = (F(1),)
guess = (F(3, 5), F(3, 5))
z = almost_near_linear(A, b, guess)
print("\nnearest solution of x1 + x2 = 1 to (3/5, 3/5):", z)
assert linalg.mat_vec(linalg.as_mat(A), z) == linalg.as_vec(b)

# How far can the correction exceed the residual? At most 1/sigma_min.
# The report certifies an exact rational lower bound for sigma_min^2 and
# checks the amplification inequality exactly.
cert = residual_amplification(A, b, (F(1, 2), F(5)))
print("residual^2:", cert.residual_norm_sq,
      "correction^2:", cert.correction_norm_sq,
      "sigma_min^2 >=", cert.sigma_min_sq_lower)
