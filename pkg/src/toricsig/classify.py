"""Exhaustive search for toric rings of large F-signature.

Candidates are generator sets ``e_1, ..., e_d, b_1, ..., b_{n-d}`` with the
extra generators ``b_j`` taken from a bounded box; any cone whose first ``d``
generators form a lattice basis can be brought into this shape.  If some
maximal minor has ``|det| >= 2`` the dual zonotope sits inside a
parallelepiped of volume ``1/|det|``, so large F-signature forces every
maximal minor to be ``+-1``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import exactlin
from .bounds import slice_volume
from .polyvol import Polytope, cube, dual_zonotope, vertices, volume
from .toric import BudgetExceeded, Cone, ConeError, validate_cone

DEFAULT_CANDIDATE_BUDGET = 10**6


class InternalMismatch(AssertionError):
    """Two independent computations of the same exact quantity disagree."""


@dataclass(frozen=True)
class MinorVerdict:
    unimodular: bool
    witness: Optional[tuple[int, ...]] = None
    witness_det: Optional[int] = None


def minors_unimodular(cone: Cone | Sequence[Sequence[int]]) -> MinorVerdict:
    """Whether every maximal minor of the generator matrix is ``+-1``.

    On failure the first offending subset (in lexicographic order) is returned.
    """
    gens = cone.generators if isinstance(cone, Cone) else [tuple(g) for g in cone]
    d = len(gens[0])
    for J in itertools.combinations(range(len(gens)), d):
        det = exactlin.det([gens[j] for j in J])
        if abs(det) != 1:
            return MinorVerdict(False, J, det)
    return MinorVerdict(True)


@dataclass(frozen=True)
class SearchSpace:
    d: int
    n: int
    entry_bound: int
    # restrict to cones all of whose maximal minors are +-1
    unimodular_only: bool = True

    def __post_init__(self):
        if self.d < 1 or self.n < self.d or self.entry_bound < 0:
            raise ValueError("need d >= 1, n >= d, entry_bound >= 0")

    @property
    def size(self) -> int:
        return (2 * self.entry_bound + 1) ** (self.d * (self.n - self.d))

    def raw(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        """Every ``[I | B]`` in the box, extra columns in nondecreasing order."""
        d, k, b = self.d, self.n - self.d, self.entry_bound
        ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
        cols = list(itertools.product(range(-b, b + 1), repeat=d))
        # reordering the extra generators gives the same cone
        for extra in itertools.combinations_with_replacement(cols, k):
            yield ident + extra


def canonical_form(gens: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least ``[I | B]`` presentation over generator-bases.

    Every ordered choice of ``d`` generators forming a lattice basis gives
    coordinates in which those generators are the unit vectors; the
    remaining generators are then sorted.  Lattice isomorphisms permute
    generators, so the result depends only on the isomorphism class.  Sets
    without a unimodular basis use the least Hermite normal form over all
    generator orderings instead.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    d = len(gens[0])
    best = None
    for J in itertools.combinations(range(len(gens)), d):
        B = [gens[j] for j in J]
        if abs(exactlin.det(B)) != 1:
            continue
        # coordinates w.r.t. basis B: solve c B = g, i.e. c = g B^-1
        inv = exactlin.inverse(B)
        rest = [tuple(int(sum(g[i] * inv[i][j] for i in range(d))) for j in range(d))
                for k, g in enumerate(gens) if k not in J]
        for perm in itertools.permutations(range(d)):
            cand = tuple(sorted(tuple(r[p] for p in perm) for r in rest))
            if best is None or cand < best:
                best = cand
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    if best is not None:
        return ident + best
    for perm in itertools.permutations(gens):
        H = exactlin.hermite_normal_form(exactlin.transpose(perm))
        cand = tuple(zip(*H))
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class Classified:
    canonical: tuple[tuple[int, ...], ...]
    fsig: Fraction
    vertex_count: int
    facet_count: int

    @property
    def fingerprint(self) -> tuple:
        return (self.fsig, self.vertex_count, self.facet_count)

    def as_dict(self) -> dict:
        # generators are the columns of the printed matrix
        d = len(self.canonical[0])
        matrix = [[g[i] for g in self.canonical] for i in range(d)]
        return {"matrix": matrix, "fsig": f"{self.fsig.numerator}/{self.fsig.denominator}"}


def _facet_count(p: Polytope, verts) -> int:
    count = 0
    for h in p.halfspaces:
        for bound in (h.lower, h.upper):
            tight = [v for v in verts if sum(a * b for a, b in zip(h.normal, v)) == bound]
            if len(tight) >= p.dim and exactlin.rank([[a - b for a, b in zip(t, tight[0])]
                                                      for t in tight[1:]]) == p.dim - 1:
                count += 1
    return count


def evaluate(cone: Cone) -> Classified:
    p = dual_zonotope(cone)
    res = volume(p)
    return Classified(canonical_form(cone.generators), res.volume, res.vertex_count,
                      _facet_count(p, vertices(p)))


def candidates(space: SearchSpace, budget: int = DEFAULT_CANDIDATE_BUDGET) -> Iterator[Cone]:
    """Valid cones of the search space, in enumeration order."""
    if space.size > budget:
        raise BudgetExceeded(f"search space of {space.size} matrices exceeds budget {budget}")
    for gens in space.raw():
        if space.unimodular_only and not minors_unimodular(gens).unimodular:
            continue
        try:
            yield validate_cone(gens)
        except ConeError:
            continue


def _evaluate_batch(batch, threshold):
    out = []
    for cone in batch:
        c = evaluate(cone)
        if threshold is None or c.fsig > threshold:
            out.append(c)
    return out


def scan(space: SearchSpace, threshold: Optional[Fraction] = None, workers: int = 1,
         budget: int = DEFAULT_CANDIDATE_BUDGET, reverse: bool = False) -> list[Classified]:
    """Evaluate every candidate (or those above ``threshold``), one record each."""
    cones = list(candidates(space, budget))
    if reverse:
        cones.reverse()
    threshold = None if threshold is None else Fraction(threshold)
    size = max(1, math.ceil(len(cones) / max(1, workers)))
    batches = [cones[i:i + size] for i in range(0, len(cones), size)]
    if workers > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _evaluate_batch(b, threshold), batches))
    else:
        parts = [_evaluate_batch(b, threshold) for b in batches]
    return [c for part in parts for c in part]


def enumerate_high_fsig(space: SearchSpace, threshold: Fraction = Fraction(1, 2),
                        workers: int = 1, budget: int = DEFAULT_CANDIDATE_BUDGET,
                        reverse: bool = False) -> list[Classified]:
    """Isomorphism classes in ``space`` with F-signature above ``threshold``.

    Classes are deduplicated by canonical form and then by fingerprint, and
    returned sorted by decreasing F-signature.
    """
    found = scan(space, threshold, workers, budget, reverse)
    by_form = {}
    for c in found:
        by_form.setdefault(c.canonical, c)
    by_print = {}
    for form in sorted(by_form):
        c = by_form[form]
        by_print.setdefault(c.fingerprint, c)
    return sorted(by_print.values(), key=lambda c: (-c.fsig, c.canonical))


def sign_pattern_volume(d: int, k: int) -> Fraction:
    """Volume of the unit cube cut by ``0 <= sum of d-k coordinates - sum of k others <= 1``.

    Computed as a polytope volume and as ``A(d,k)/d!``: reflecting the ``k``
    negated coordinates turns the slab into ``k <= sum(x) <= k+1``.
    """
    if not 0 <= k <= d:
        raise ValueError("need 0 <= k <= d")
    slabs = [(h.normal, h.lower, h.upper) for h in cube(d).halfspaces]
    slabs.append(([1] * (d - k) + [-1] * k, 0, 1))
    geometric = volume(Polytope.from_slabs(slabs)).volume
    combinatorial = slice_volume(d, k) if k < d else Fraction(0)
    if geometric != combinatorial:
        raise InternalMismatch(f"d={d}, k={k}: polytope {geometric} vs Eulerian {combinatorial}")
    return geometric
