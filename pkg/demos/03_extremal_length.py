"""Extremal length from cross-ratios via elliptic periods.

Four marked points on the boundary of the half-plane define a conformal
quadrilateral.  After a Moebius normalization to (infinity, lambda, 0, 1)
the extremal length of the separating curve family is a ratio of two
complete elliptic integrals; the library evaluates them by the Carlson
duplication algorithm.
"""

import math

import numpy as np

import zigzag as zz

print(__doc__)

print("Cross-ratio normalization:")
print(f"  lambda(inf, -1, 0, 1)  = {zz.cross_ratio_lambda(math.inf, -1, 0, 1)}")
print(f"  lambda(0, 1, 2, 3)     = {zz.cross_ratio_lambda(0, 1, 2, 3)}")
print()

print("The square configuration lambda = -1 has lattice ratio i and")
print(f"extremal length {zz.extremal_length_quad(-1.0)}:")
d = zz.elliptic_periods(-1.0)
print(f"  omega1 = {d.omega1:.8f}")
print(f"  omega2 = {d.omega2:.8f}")
print()

print("As lambda -> 0- the separating annulus degenerates and the")
print("extremal length decays like 1/log(1/|lambda|):")
print(f"  {'lambda':>10}  {'ext':>12}  {'ext * log(1/|lambda|)':>22}")
for lam in (-1e-3, -1e-4, -1e-5, -1e-6, -1e-7, -1e-8):
    ext = zz.extremal_length_quad(lam)
    print(f"  {lam:>10.0e}  {ext:>12.8f}  {ext * math.log(1 / abs(lam)):>22.6f}")
print()

print("Per-zigzag extremal-length vectors compare the two domains:")
z = zz.ZigzagParams(3, 2, (0.2, 0.5, 0.3))
for pat in (zz.ne_pattern(3), zz.sw_pattern(3)):
    prev = zz.solve_parameter_problem(z, pat)
    vals = zz.extremal_lengths(prev)
    print(f"  E_{pat.orientation} = {np.round(vals, 8)}")
