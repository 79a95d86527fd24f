"""Exact volumes of bounded rational polytopes.

A polytope is a stack of slabs ``lower <= <normal, x> <= upper``.  Vertices
are found by solving every choice of ``d`` independent slab normals against
every choice of bound, and the volume comes from a pulling triangulation:
each face is coned from its lexicographically smallest vertex over the
facets that avoid it.  The simplices live in ambient coordinates, so no
facet normalisation factor is ever needed.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import exactlin
from .toric import Cone

Point = tuple[Fraction, ...]


class Unbounded(ValueError):
    pass


@dataclass(frozen=True)
class Halfspace:
    normal: tuple[int, ...]
    lower: Fraction
    upper: Fraction


@dataclass(frozen=True)
class Polytope:
    dim: int
    halfspaces: tuple[Halfspace, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def from_slabs(cls, slabs) -> "Polytope":
        """Build from ``(normal, lower, upper)`` triples."""
        hs = tuple(Halfspace(tuple(int(c) for c in n), Fraction(lo), Fraction(hi)) for n, lo, hi in slabs)
        if not hs:
            raise ValueError("a polytope needs at least one slab")
        dims = {len(h.normal) for h in hs}
        if len(dims) != 1:
            raise ValueError("slab normals have different lengths")
        return cls(dims.pop(), hs)

    def contains(self, x) -> bool:
        return all(h.lower <= sum(a * b for a, b in zip(h.normal, x)) <= h.upper for h in self.halfspaces)

    def transformed(self, g: Sequence[Sequence[int]]) -> "Polytope":
        """Image under ``x -> g x`` for a unimodular integer matrix ``g``."""
        ginv = exactlin.inverse(g)
        slabs = []
        for h in self.halfspaces:
            # <n, g^-1 y> = <g^-T n, y>
            nn = [sum(ginv[i][j] * h.normal[i] for i in range(self.dim)) for j in range(self.dim)]
            if any(c.denominator != 1 for c in nn):
                raise ValueError("transform is not unimodular")
            slabs.append(([int(c) for c in nn], h.lower, h.upper))
        return Polytope.from_slabs(slabs)


@dataclass(frozen=True)
class VolumeResult:
    volume: Fraction
    vertex_count: int
    triangulation_size: int


def cube(d: int) -> Polytope:
    return Polytope.from_slabs([(tuple(int(i == j) for j in range(d)), 0, 1) for i in range(d)])


def dual_zonotope(cone: Union[Cone, Sequence[Sequence[int]]]) -> Polytope:
    """The polytope ``{x : 0 <= <x, v_i> <= 1 for every generator v_i}``.

    Accepts a validated :class:`Cone` or any raw generator matrix.
    """
    gens = cone.generators if isinstance(cone, Cone) else cone
    return Polytope.from_slabs([(v, 0, 1) for v in gens])


def _check_bounded(p: Polytope):
    if exactlin.rank([h.normal for h in p.halfspaces]) < p.dim:
        raise Unbounded("slab normals do not span the ambient space")


def vertices(p: Polytope) -> list[Point]:
    """All vertices, lexicographically sorted."""
    if "vertices" in p._cache:
        return p._cache["vertices"]
    _check_bounded(p)
    hs = p.halfspaces
    found = set()
    for J in itertools.combinations(range(len(hs)), p.dim):
        try:
            inv = exactlin.inverse([hs[j].normal for j in J])
        except ZeroDivisionError:
            continue
        for bounds in itertools.product(*[(hs[j].lower, hs[j].upper) for j in J]):
            x = tuple(exactlin.matvec(inv, bounds))
            if p.contains(x):
                found.add(x)
    verts = sorted(found)
    p._cache["vertices"] = verts
    return verts


def _affine_dim(pts) -> int:
    if not pts:
        return -1
    base = pts[0]
    return exactlin.rank([[a - b for a, b in zip(q, base)] for q in pts[1:]]) if len(pts) > 1 else 0


def _triangulate(p: Polytope) -> list[tuple[int, ...]]:
    """Pulling triangulation as tuples of vertex indices (full-dimensional p)."""
    verts = vertices(p)
    # tight[k] = set of vertex indices on each of the 2m bounding hyperplanes
    tight = []
    for h in p.halfspaces:
        vals = [sum(a * b for a, b in zip(h.normal, v)) for v in verts]
        tight.append(frozenset(i for i, s in enumerate(vals) if s == h.lower))
        tight.append(frozenset(i for i, s in enumerate(vals) if s == h.upper))

    @functools.lru_cache(maxsize=None)
    def facets(face: frozenset, k: int) -> list[frozenset]:
        cands = {face & t for t in tight}
        out = [g for g in cands if g and g != face and _affine_dim([verts[i] for i in sorted(g)]) == k - 1]
        return sorted(out, key=lambda g: sorted(g))

    @functools.lru_cache(maxsize=None)
    def tri(face: frozenset, k: int) -> tuple[tuple[int, ...], ...]:
        if k == 0:
            return ((min(face),),)
        w = min(face)  # vertices are sorted, so this is the lex-smallest point
        out = []
        for g in facets(face, k):
            if w in g:
                continue
            out.extend((w,) + s for s in tri(g, k - 1))
        return tuple(out)

    return list(tri(frozenset(range(len(verts))), p.dim))


def volume(p: Polytope) -> VolumeResult:
    """Exact Euclidean volume.  Lower-dimensional polytopes have volume 0."""
    verts = vertices(p)
    if _affine_dim(verts) < p.dim:
        return VolumeResult(Fraction(0), len(verts), 0)
    simplices = _triangulate(p)
    total = 0
    for s in simplices:
        base = verts[s[0]]
        total += abs(exactlin.det_rational([[a - b for a, b in zip(verts[i], base)] for i in s[1:]]))
    return VolumeResult(Fraction(total) / math.factorial(p.dim), len(verts), len(simplices))


def fsignature(cone: Union[Cone, Sequence[Sequence[int]]]) -> Fraction:
    """F-signature of the toric ring: the volume of its dual zonotope."""
    return volume(dual_zonotope(cone)).volume


def grid_volume(p: Polytope, Q: int) -> Fraction:
    """Midpoint-rule estimate from the points ``(k + 1/2)/Q`` of a bounding box.

    Independent of :func:`volume`; used as a test oracle.
    """
    import numpy as np

    verts = vertices(p)
    lo = [math.floor(min(v[i] for v in verts) * Q) for i in range(p.dim)]
    hi = [math.ceil(max(v[i] for v in verts) * Q) for i in range(p.dim)]
    # scaled point coordinates 2k+1 over denominator 2Q
    axes = [np.arange(2 * a + 1, 2 * b, 2, dtype=np.int64) for a, b in zip(lo, hi)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, p.dim)
    inside = np.ones(len(mesh), dtype=bool)
    for h in p.halfspaces:
        s = mesh @ np.array(h.normal, dtype=np.int64)
        # lower <= s/(2Q) <= upper
        inside &= (s * h.lower.denominator >= h.lower.numerator * 2 * Q)
        inside &= (s * h.upper.denominator <= h.upper.numerator * 2 * Q)
    return Fraction(int(inside.sum()), Q**p.dim)
