"""
Searching for large F-signature
===============================

Enumerate [I | B] generator matrices with entries in {-1, 0, 1}, keep those
whose maximal minors are all +-1, and list the classes above 1/2.
"""

from fractions import Fraction

from toricsig import bounds, classify
from toricsig.classify import SearchSpace, enumerate_high_fsig

for d, n in ((3, 4), (3, 5), (5, 6)):
    space = SearchSpace(d, n, 1)
    found = enumerate_high_fsig(space, Fraction(1, 2), workers=4)
    print(f"d={d} n={n}: {len(found)} class(es)", [str(c.fsig) for c in found])
    for c in found:
        print("   ", c.as_dict()["matrix"])

# slab volumes inside the cube: only three exceed 1/2
print("slabs above 1/2:", bounds.euler_lemma_scan(10))
for k in range(4):
    print(f"d=4, {k} negative signs:", classify.sign_pattern_volume(4, k))
