"""
Splitting Frobenius pushforwards by divisor class
=================================================

For each residue u mod q the pushforward has one rank-one summand.  Counting
summands in the trivial class gives the free rank, and the ratio tends to
the F-signature.
"""

from toricsig import catalog, fsignature
from toricsig.frobdec import conic_census, decompose, generator_total
from toricsig.hkest import frobenius_colength

quadric = catalog.entry("quadric").cone
s = fsignature(quadric)

# free rank over q^3 approaches 2/3
for q in (2, 4, 8, 16, 32):
    dec = decompose(quadric, q)
    print(f"q={q:2d}  free {dec.free_count:6d} / {dec.total:6d} = {float(dec.free_ratio):.4f}"
          f"  (limit {float(s):.4f})")

# which classes showed up, and how often
dec = decompose(quadric, 8)
for cls, count in dec.class_counts:
    print("  class", cls, "count", count)

# generators of the pushforward match the Frobenius colength
print("sum of mu:", generator_total(quadric, dec), " colength:", frobenius_colength(quadric, 8))

# the sampled census of conic classes bounds every decomposition
for name in ("quadric", "veronese2_3", "segre_3"):
    c = conic_census(catalog.entry(name).cone, budget=10**8)
    print(f"{name}: {len(c)} conic classes, stable={c.stable}")
