"""
Hilbert-Kunz estimates against the volume bounds
================================================

Colengths are counted exactly; limits are estimated with one Richardson step.
"""

from fractions import Fraction

from toricsig import bounds, catalog
from toricsig.hkest import ehk_estimate, multiplicity_estimate, power_colength

quadric = catalog.entry("quadric").cone

ehk = ehk_estimate(quadric, [8, 16, 32])
for smp in ehk.samples:
    print(f"q={smp.parameter:2d}  length {smp.colength:6d}  normalized {float(smp.normalized):.5f}")
print("extrapolated ehk:", float(ehk.extrapolated), " (4/3 =", float(Fraction(4, 3)), ")")

e = multiplicity_estimate(quadric, [16, 32])
print("extrapolated e:", float(e.extrapolated))

# the Hilbert-Samuel function of the quadric, n = 0..5
print("lengths A/m^(n+1):", [power_colength(quadric, n) for n in range(6)])

# cube-corner volumes, and the dimension-3 lower bound (stated for e >= 3)
print("v(3/2, 3) =", bounds.v(Fraction(3, 2), 3))
for m in (3, 4, 8, 16):
    lo = bounds.dim3_bound_refined(m)
    print(f"e={m}: refined bound >= {float(lo.lo):.5f}, e/6 + 1 = {float(Fraction(m, 6) + 1):.5f}")

# limits of ehk for the quadric hypersurfaces next to the conjectured bounds
for row in bounds.conjecture_table(8):
    print(f"d={row.d}  1+c_d = {str(row.limit):>10}  rhs = {str(row.rhs):>6}")
