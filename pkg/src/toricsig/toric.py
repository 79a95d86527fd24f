"""Pointed normal affine toric rings given by the rays of their cone.

A ring is described by the primitive generators ``v_1, ..., v_n`` of a
full-dimensional strongly convex cone in ``N = Z^d``.  The monoid is
``S = {x in Z^d : <x, v_i> >= 0 for all i}`` and the ring is ``k[S]``.
Throughout, ``lam(x)`` is the vector ``(<x, v_1>, ..., <x, v_n>)``; it is
injective, so lattice points are handled in ``lam``-coordinates whenever
possible.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exactlin

DEFAULT_SEARCH_CAP = 8
MAX_SEARCH_CAP = 64
DEFAULT_INDEX_CAP = 64
DEFAULT_POINT_BUDGET = 10**7


class ConeError(ValueError):
    """Raised by :func:`validate_cone`; ``violations`` lists every problem found.

    Each violation is a ``(kind, row)`` pair, where kind is one of
    ``NonPrimitiveRow``, ``RankDeficient``, ``RedundantGenerator`` or
    ``NotPointed`` and row is the offending row index (``None`` when the
    problem is global).
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{k}({'' if i is None else i})" for k, i in self.violations))


class CapTooSmall(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class IndexNotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class Cone:
    """Validated cone data; build instances with :func:`validate_cone`."""

    generators: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @property
    def d(self) -> int:
        return len(self.generators[0])

    @property
    def n(self) -> int:
        return len(self.generators)

    @functools.cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.generators, dtype=np.int64)

    def lam(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(x, v)) for v in self.generators)

    def to_json(self) -> dict:
        return {"name": self.name, "dim": self.d, "generators": [list(v) for v in self.generators]}


def _in_cone(w, gens) -> bool:
    """Exact test of ``w`` in the cone spanned by ``gens`` (Caratheodory search)."""
    w = [Fraction(x) for x in w]
    if not any(w):
        return True
    gens = [list(g) for g in gens]
    d = len(w)
    for k in range(1, min(d, len(gens)) + 1):
        for sub in itertools.combinations(gens, k):
            if exactlin.rank(sub) < k:
                continue
            # least-squares normal equations have a unique solution here
            G = [[sum(a * b for a, b in zip(u, v)) for v in sub] for u in sub]
            rhs = [sum(a * b for a, b in zip(u, w)) for u in sub]
            c = exactlin.solve_rational(G, rhs)
            if c is None or any(ci < 0 for ci in c):
                continue
            if all(sum(ci * g[j] for ci, g in zip(c, sub)) == w[j] for j in range(d)):
                return True
    return False


def validate_cone(generators: Sequence[Sequence[int]], name: str = "") -> Cone:
    """Check the generators of a cone and return a :class:`Cone`.

    Raises :class:`ConeError` listing every violated condition: primitive
    rows, full rank, minimal generating set, strong convexity.
    """
    rows = exactlin.as_matrix(generators)
    rows = [[int(x) for x in r] for r in rows]
    violations = []
    for i, r in enumerate(rows):
        if math.gcd(*r) != 1:
            violations.append(("NonPrimitiveRow", i))
    d = len(rows[0])
    if exactlin.rank(rows) < d:
        violations.append(("RankDeficient", None))
    if not violations:
        pointed = True
        for j, v in enumerate(rows):
            others = rows[:j] + rows[j + 1:]
            if _in_cone([-x for x in v], others):
                pointed = False
                break
        if not pointed:
            violations.append(("NotPointed", None))
        else:
            for j, v in enumerate(rows):
                others = rows[:j] + rows[j + 1:]
                if others and _in_cone(v, others):
                    violations.append(("RedundantGenerator", j))
        if len(set(map(tuple, rows))) < len(rows):
            violations.append(("RedundantGenerator", None))
    if violations:
        raise ConeError(violations)
    return Cone(tuple(tuple(r) for r in rows), name)


def load_cone(obj) -> Cone:
    """Build a cone from the JSON object ``{"name", "dim", "generators"}``.

    ``obj`` may be a dict, a JSON string or a path to a JSON file.
    """
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError:
            with open(obj) as fh:
                obj = json.load(fh)
    gens = obj["generators"]
    dim = obj.get("dim")
    if dim is not None and any(len(g) != dim for g in gens):
        raise ValueError(f"generator length does not match dim={dim}")
    return validate_cone(gens, obj.get("name", ""))


# -- class group -------------------------------------------------------------

@dataclass(frozen=True)
class ClassGroup:
    """Cokernel of ``lam: Z^d -> Z^n`` with a canonical projection.

    Class representatives are tuples: the free coordinates first, then one
    residue per torsion invariant factor.
    """

    free_rank: int
    torsion: tuple[int, ...]
    _U: tuple[tuple[int, ...], ...] = field(repr=False)
    _diag: tuple[int, ...] = field(repr=False)

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * (self.free_rank + len(self.torsion))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def project(self, a: Sequence[int]) -> tuple[int, ...]:
        if len(a) != len(self._U):
            raise ValueError(f"divisor vector must have length {len(self._U)}")
        y = [sum(u * x for u, x in zip(row, a)) for row in self._U]
        d = len(self._diag)
        free = tuple(y[d:])
        tors = tuple(y[i] % self._diag[i] for i in range(d) if self._diag[i] > 1)
        return free + tors

    def project_many(self, A: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`project` over the rows of an integer array."""
        U = np.array(self._U, dtype=np.int64)
        Y = A.astype(np.int64) @ U.T
        d = len(self._diag)
        cols = [Y[:, d:]]
        for i in range(d):
            if self._diag[i] > 1:
                cols.append(np.mod(Y[:, i:i + 1], self._diag[i]))
        return np.hstack(cols) if cols else np.zeros((len(A), 0), dtype=np.int64)

    def add(self, x, y) -> tuple[int, ...]:
        f = self.free_rank
        free = tuple(a + b for a, b in zip(x[:f], y[:f]))
        tors = tuple((a + b) % t for a, b, t in zip(x[f:], y[f:], self.torsion))
        return free + tors

    def scale(self, k: int, x) -> tuple[int, ...]:
        f = self.free_rank
        return tuple(k * a for a in x[:f]) + tuple((k * a) % t for a, t in zip(x[f:], self.torsion))

    def order(self, x) -> Optional[int]:
        """Order of a class, ``None`` if it has infinite order."""
        f = self.free_rank
        if any(x[:f]):
            return None
        o = 1
        for a, t in zip(x[f:], self.torsion):
            o = math.lcm(o, t // math.gcd(a, t))
        return o


@functools.lru_cache(maxsize=None)
def class_group(cone: Cone) -> ClassGroup:
    U, D, _ = exactlin.smith_normal_form(cone.generators)
    diag = tuple(D[i][i] for i in range(cone.d))
    return ClassGroup(
        free_rank=cone.n - cone.d,
        torsion=tuple(t for t in diag if t > 1),
        _U=tuple(tuple(r) for r in U),
        _diag=diag,
    )


@dataclass(frozen=True)
class DivisorData:
    a: tuple[int, ...]
    class_rep: tuple[int, ...]


def divisor(cone: Cone, a: Sequence[int]) -> DivisorData:
    a = tuple(int(x) for x in a)
    return DivisorData(a, class_group(cone).project(a))


def is_principal(cone: Cone, a: Sequence[int]) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether ``D(a)`` is principal, with a witness ``m`` such that ``lam(m) = a``."""
    if len(a) != cone.n:
        raise ValueError(f"divisor vector must have length {cone.n}")
    x = exactlin.solve_integer(cone.generators, list(a))
    return (x is not None, None if x is None else tuple(x))


def canonical_vector(cone: Cone) -> tuple[int, ...]:
    return (1,) * cone.n


@dataclass(frozen=True)
class GorensteinData:
    is_gorenstein: bool
    q_index: Optional[int]
    canonical_class: tuple[int, ...]


def gorenstein_data(cone: Cone, cap: int = DEFAULT_INDEX_CAP) -> GorensteinData:
    """Gorenstein test and Q-Gorenstein index of the canonical class.

    ``q_index`` is ``None`` when the canonical class has a nonzero free part
    (the ring is not Q-Gorenstein).
    """
    cl = class_group(cone)
    omega = cl.project(canonical_vector(cone))
    if any(omega[:cl.free_rank]):
        return GorensteinData(False, None, omega)
    r_max = min(cap, math.prod(cl.torsion) if cl.torsion else 1)
    for r in range(1, r_max + 1):
        if is_principal(cone, [r] * cone.n)[0]:
            return GorensteinData(r == 1, r, omega)
    raise IndexNotFound(f"Q-Gorenstein index exceeds cap {cap}")


# -- lattice point enumeration -----------------------------------------------

@functools.lru_cache(maxsize=None)
def _box_frame(cone: Cone):
    """A nonsingular d-subset of generators with smallest |det| and its inverse."""
    best = None
    for J in itertools.combinations(range(cone.n), cone.d):
        dt = abs(exactlin.det([cone.generators[j] for j in J]))
        if dt and (best is None or dt < best[0]):
            best = (dt, J)
            if dt == 1:
                break
    J = best[1]
    return J, exactlin.inverse([cone.generators[j] for j in J])


def lattice_points(cone: Cone, lower: Sequence[int], upper: Sequence[int],
                   budget: int = DEFAULT_POINT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """All ``x`` in ``Z^d`` with ``lower <= lam(x) <= upper``.

    Returns ``(X, L)`` with the points as rows of ``X`` (lexicographically
    sorted) and their ``lam``-values as rows of ``L``.
    """
    lower = np.asarray(lower, dtype=np.int64)
    upper = np.asarray(upper, dtype=np.int64)
    J, inv = _box_frame(cone)
    lo, hi = [], []
    for row in inv:
        a = sum(min(c * int(lower[j]), c * int(upper[j])) for c, j in zip(row, J))
        b = sum(max(c * int(lower[j]), c * int(upper[j])) for c, j in zip(row, J))
        lo.append(math.ceil(a))
        hi.append(math.floor(b))
    d = cone.d
    if any(l > h for l, h in zip(lo, hi)):
        return np.zeros((0, d), dtype=np.int64), np.zeros((0, cone.n), dtype=np.int64)
    sizes = [h - l + 1 for l, h in zip(lo, hi)]
    total = math.prod(sizes)
    if total > budget:
        raise BudgetExceeded(f"enumeration box has {total} points (budget {budget})")
    V = cone.matrix
    rest = sizes[1:]
    if rest:
        grid = np.indices(rest, dtype=np.int64).reshape(d - 1, -1).T + np.array(lo[1:], dtype=np.int64)
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    per_slab = len(grid)
    step = max(1, 2_000_000 // max(per_slab, 1))
    X_parts, L_parts = [], []
    for start in range(lo[0], hi[0] + 1, step):
        firsts = np.arange(start, min(start + step, hi[0] + 1), dtype=np.int64)
        X = np.hstack([np.repeat(firsts, per_slab)[:, None], np.tile(grid, (len(firsts), 1))])
        L = X @ V.T
        keep = np.all((L >= lower) & (L <= upper), axis=1)
        X_parts.append(X[keep])
        L_parts.append(L[keep])
    return np.vstack(X_parts), np.vstack(L_parts)


def _dominates(L: np.ndarray, H: np.ndarray, shift=None) -> np.ndarray:
    """Row mask: ``L[i] - shift >= H[j]`` componentwise for some ``j``."""
    if len(H) == 0:
        return np.zeros(len(L), dtype=bool)
    base = L if shift is None else L - shift
    out = np.zeros(len(L), dtype=bool)
    for h in H:
        out |= np.all(base >= h, axis=1)
    return out


def _irreducibles(X: np.ndarray, L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    nz = L.sum(axis=1) > 0
    X, L = X[nz], L[nz]
    g = L.sum(axis=1)
    order = np.lexsort((*X.T[::-1], g))
    X, L, g = X[order], L[order], g[order]
    HX, HL = [], np.zeros((0, L.shape[1]), dtype=np.int64)
    for level in np.unique(g):
        sel = g == level
        red = _dominates(L[sel], HL)
        HX.append(X[sel][~red])
        HL = np.vstack([HL, L[sel][~red]])
    return (np.vstack(HX) if HX else np.zeros((0, X.shape[1]), dtype=np.int64)), HL


@functools.lru_cache(maxsize=None)
def _hilbert_basis(cone: Cone, search_cap: int, max_cap: int):
    cap = search_cap
    while cap <= max_cap:
        X, L = lattice_points(cone, [0] * cone.n, [cap] * cone.n)
        HX, HL = _irreducibles(X, L)
        # certificate: in the doubled box every nonzero point sits above some element
        X2, L2 = lattice_points(cone, [0] * cone.n, [2 * cap] * cone.n)
        nz = L2.sum(axis=1) > 0
        if np.all(_dominates(L2[nz], HL)):
            rows = sorted(tuple(int(v) for v in r) for r in HX)
            return tuple(rows)
        cap *= 2
    raise CapTooSmall(f"Hilbert basis not certified with search cap {max_cap}")


def hilbert_basis(cone: Cone, search_cap: int = DEFAULT_SEARCH_CAP,
                  max_cap: int = MAX_SEARCH_CAP) -> list[tuple[int, ...]]:
    """Irreducible elements of ``S``, sorted lexicographically.

    The search starts with the box ``max_i lam_i <= search_cap`` and doubles
    it until the doubled box contains no new irreducible element.
    """
    return list(_hilbert_basis(cone, search_cap, max_cap))


def hilbert_basis_lam(cone: Cone) -> np.ndarray:
    return np.array([cone.lam(h) for h in hilbert_basis(cone)], dtype=np.int64)


def _minimal_in_box(cone, a, cap, HL):
    a_arr = np.asarray(a, dtype=np.int64)
    X, L = lattice_points(cone, a_arr, a_arr + cap)
    red = _dominates(L, HL, shift=a_arr)
    return {tuple(int(v) for v in r) for r in X[~red]}


@functools.lru_cache(maxsize=4096)
def _minimal_generators(cone: Cone, a: tuple, cap: int, max_cap: int):
    HL = hilbert_basis_lam(cone)
    c = cap
    while c <= max_cap:
        gens = _minimal_in_box(cone, a, c, HL)
        if _minimal_in_box(cone, a, 2 * c, HL) == gens:
            return tuple(sorted(gens))
        c *= 2
    raise CapTooSmall(f"minimal generators of D{a} not certified with cap {max_cap}")


def minimal_generators(cone: Cone, a: Sequence[int], cap: int = DEFAULT_SEARCH_CAP,
                       max_cap: int = MAX_SEARCH_CAP) -> list[tuple[int, ...]]:
    """Minimal monomial generators of the divisorial ideal ``D(a)``.

    These are the points of ``V(a) = {x : lam(x) >= a}`` that stay in
    ``V(a)`` after subtracting no Hilbert basis element.  Their number is
    ``mu(D(a))``.
    """
    if len(a) != cone.n:
        raise ValueError(f"divisor vector must have length {cone.n}")
    return list(_minimal_generators(cone, tuple(int(x) for x in a), cap, max_cap))


def num_generators(cone: Cone, a: Sequence[int]) -> int:
    return len(minimal_generators(cone, a))


def cm_type(cone: Cone) -> int:
    """Cohen-Macaulay type: number of generators of the canonical module."""
    return num_generators(cone, canonical_vector(cone))
