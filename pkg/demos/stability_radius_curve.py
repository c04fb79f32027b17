"""
How far out must the constraints reach?
=======================================

The probe maximizes distance-to-dual over all points whose products with
lattice vectors up to a radius are delta-close to integers. Sweeping the
radius produces a monotone curve; where it dips below epsilon^2 is the
estimated stability radius. A scaled analytic level caps the sweep, so
the estimate always exists.
"""

from fractions import Fraction as F

from latstab import Lattice, ProbeConfig, degenerate_family, stability_radius

cfg = ProbeConfig(seed=0, restarts=8)

# The unit grid, delta = 1/4, epsilon^2 = 1/100.
L = Lattice(((F(1), F(0)), (F(0), F(1))))
probe = stability_radius(L, F(1, 4), F(1, 100), cfg)
print("radius^2 -> worst feasible dist^2 (unit grid):")
for r2, f in zip(probe.radius_grid, probe.f_hat_sq):
    marker = "  <- estimate" if r2 == probe.estimated_r_sq else ""
    print(f"  {str(r2):>5} -> {f}{marker}")
print("analytic sufficient level:", probe.sufficient_radius_sq,
      f"(bound {probe.sufficient_bound_sq} <= 1/100, K = {probe.scaling_steps})")

# A family with one direction degenerating: the dual minimum collapses
# like 1/d^2 while the probe keeps the estimate finite and certified.
print("\ndiagonal family c=1, d in {1, 10, 100}:")
print("    d | dual min^2 | dual covering^2 | estimated r^2 | sufficient r^2")
for diag in degenerate_family(1, [1, 10, 100], cfg=cfg):
    print(f"  {str(diag.scale):>3} | {str(diag.dual_minima_sq[0]):>10} |"
          f" {str(diag.mu_dual_sq):>15} | {str(diag.probe.estimated_r_sq):>13} |"
          f" {diag.probe.sufficient_radius_sq}")
