"""
F-signatures as polytope volumes
================================

A toric ring is given by the rows of an integer matrix.  Its F-signature
is the volume of the slab polytope {x : 0 <= <x, v_i> <= 1}.
"""

from fractions import Fraction

from toricsig import dual_zonotope, fsignature, validate_cone, volume
from toricsig.polyvol import grid_volume

# the quadric xw = yz: four generators in the plane of a square cone
quadric = validate_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)], "quadric")
print("quadric:", fsignature(quadric))

# the polytope itself, with its vertex count
p = dual_zonotope(quadric)
res = volume(p)
print("vertices:", res.vertex_count, "simplices:", res.triangulation_size)

# a midpoint grid gets close, but only to first order in 1/Q
for Q in (8, 16, 32):
    approx = grid_volume(p, Q)
    print(f"  Q={Q:3d}  grid {float(approx):.5f}  error {float(approx - res.volume):+.5f}")

# second Veronese rings all sit at 1/2
for d in range(2, 6):
    rows = [(2,) + (-1,) * (d - 1)] + [tuple(int(i == j) for j in range(d)) for i in range(1, d)]
    print(f"veronese k[x1..x{d}]^(2):", fsignature(rows))

# regular rings have F-signature 1, and nothing else does
print("k[x,y,z]:", fsignature([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
assert fsignature(quadric) == Fraction(2, 3)
