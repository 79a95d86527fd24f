"""Frobenius pushforwards of toric rings split into divisorial ideals.

For ``q >= 2`` the pushforward ``F_* A`` is graded by the residues
``u in M / qM``; the summand indexed by ``u`` is ``D(a)`` with
``a_i = -floor(lam_i(u) / q)``.  Counting summands by divisor class gives the
free rank ``a_e`` (identity class) and the canonical count ``b_e``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .toric import (BudgetExceeded, Cone, DivisorData, canonical_vector, class_group, divisor,
                    num_generators)

DEFAULT_RESIDUE_BUDGET = 2**24
DEFAULT_DENOMINATORS = (16, 27)
# 27^5 doubled is far beyond a desk budget, so high dimensions sample coarser
HIGH_DIM_DENOMINATORS = (5, 7)


@dataclass(frozen=True)
class FrobeniusDecomposition:
    q: int
    d: int
    class_counts: tuple[tuple[tuple[int, ...], int], ...]
    representatives: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    free_count: int
    canonical_count: int

    @property
    def total(self) -> int:
        return self.q**self.d

    @property
    def counts(self) -> dict:
        return dict(self.class_counts)

    @property
    def witnesses(self) -> dict:
        """One exponent vector ``a`` per class."""
        return dict(self.representatives)

    @property
    def free_ratio(self) -> Fraction:
        return Fraction(self.free_count, self.total)


def summand_class(cone: Cone, u: Sequence[int], q: int) -> DivisorData:
    if q < 2:
        raise ValueError("q must be at least 2")
    return divisor(cone, [-(l // q) for l in cone.lam(u)])


def _residues(d: int, q: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for _ in range(d):
        cols.append(idx % q)
        idx = idx // q
    return np.stack(cols[::-1], axis=1)


def _classify_chunk(cone: Cone, q: int, start: int, stop: int) -> tuple[Counter, dict]:
    U = _residues(cone.d, q, start, stop)
    A = -np.floor_divide(U @ cone.matrix.T, q)
    C = class_group(cone).project_many(A)
    keys, first, counts = np.unique(C, axis=0, return_index=True, return_counts=True)
    cnt = Counter()
    reps = {}
    for k, i, c in zip(keys, first, counts):
        key = tuple(int(v) for v in k)
        cnt[key] += int(c)
        reps[key] = tuple(int(v) for v in A[i])
    return cnt, reps


def decompose(cone: Cone, q: int, budget: int = DEFAULT_RESIDUE_BUDGET,
              workers: int = 1) -> FrobeniusDecomposition:
    """Class multiplicities of ``F_* A`` over the residue box ``{0..q-1}^d``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    total = q**cone.d
    if total > budget:
        raise BudgetExceeded(f"{total} residues exceed the budget {budget}")
    chunk = 1 << 18
    bounds = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _classify_chunk(cone, q, *b), bounds))
    else:
        parts = [_classify_chunk(cone, q, *b) for b in bounds]
    counts = Counter()
    reps = {}
    # chunks are merged in residue order, so the witness kept is the first residue's
    for cnt, rp in parts:
        counts.update(cnt)
        for k, v in rp.items():
            reps.setdefault(k, v)
    cl = class_group(cone)
    omega = cl.project(canonical_vector(cone))
    return FrobeniusDecomposition(
        q=q,
        d=cone.d,
        class_counts=tuple(sorted(counts.items())),
        representatives=tuple(sorted(reps.items())),
        free_count=counts.get(cl.identity, 0),
        canonical_count=counts.get(omega, 0),
    )


def fsig_estimate(cone: Cone, q: int, **kw) -> Fraction:
    """Finite-level F-signature ``a_e / q^d``."""
    return decompose(cone, q, **kw).free_ratio


def generator_total(cone: Cone, dec: FrobeniusDecomposition) -> int:
    """``sum_u mu(D(a(u)))``: the number of generators of ``F_* A``."""
    wit = dec.witnesses
    return sum(c * num_generators(cone, wit[k]) for k, c in dec.class_counts)


# -- conic classes -----------------------------------------------------------

@dataclass(frozen=True)
class ConicCensus:
    classes: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[int, ...], ...]
    denominators: tuple[int, ...]
    stable: bool

    def __len__(self):
        return len(self.classes)


def _conic_classes(cone: Cone, Q: int, budget: int) -> dict:
    total = Q**cone.d
    if total > budget:
        raise BudgetExceeded(f"census at Q={Q} needs {total} samples (budget {budget})")
    cl = class_group(cone)
    out = {}
    chunk = 1 << 18
    for s in range(0, total, chunk):
        U = _residues(cone.d, Q, s, min(s + chunk, total))
        # ceil(lam(u)/Q)
        A = -np.floor_divide(-(U @ cone.matrix.T), Q)
        C = cl.project_many(A)
        keys, first = np.unique(C, axis=0, return_index=True)
        for k, i in zip(keys, first):
            out.setdefault(tuple(int(v) for v in k), tuple(int(v) for v in A[i]))
    return out


def default_denominators(d: int) -> tuple[int, ...]:
    return DEFAULT_DENOMINATORS if d <= 4 else HIGH_DIM_DENOMINATORS


def conic_census(cone: Cone, denominators: Optional[Iterable[int]] = None,
                 budget: int = DEFAULT_RESIDUE_BUDGET) -> ConicCensus:
    """Classes of the conic ideals ``D(ceil(lam(x)))`` sampled at ``x = u/Q``.

    ``stable`` is set when every denominator, and its double, yields the same
    class set.  The census is a semi-decision, not a proof of completeness.
    """
    dens = tuple(denominators) if denominators is not None else default_denominators(cone.d)
    if len(dens) < 2 or math.gcd(*dens) != 1:
        raise ValueError("need at least two coprime denominators")
    found = {}
    sets = []
    for Q in dens + tuple(2 * Q for Q in dens):
        got = _conic_classes(cone, Q, budget)
        sets.append(frozenset(got))
        for k, v in got.items():
            found.setdefault(k, v)
    stable = all(s == sets[0] for s in sets)
    keys = sorted(found)
    return ConicCensus(tuple(keys), tuple(found[k] for k in keys), dens, stable)


# -- Ulrich test -------------------------------------------------------------

class UlrichVerdict(Enum):
    ULRICH = "Ulrich"
    NOT_ULRICH = "NotUlrich"
    INCONCLUSIVE = "Inconclusive"


def ulrich_test(cone: Cone, a: Sequence[int], mult_estimate, tolerance=Fraction(0)) -> UlrichVerdict:
    """Compare ``mu(D(a))`` with the multiplicity of ``A``.

    A rank-one module has ``e(D(a)) = e(A)``.  ``mult_estimate`` may be exact
    (then ``tolerance`` is 0) or an estimate with an absolute tolerance.
    """
    mu = num_generators(cone, a)
    e = Fraction(mult_estimate)
    tol = Fraction(tolerance)
    if abs(mu - e) <= tol:
        # an exact integer hit is only conclusive if no other integer is in range
        if tol == 0 or (e - tol > mu - 1 and e + tol < mu + 1):
            return UlrichVerdict.ULRICH
        return UlrichVerdict.INCONCLUSIVE
    if mu < e - tol:
        return UlrichVerdict.NOT_ULRICH
    return UlrichVerdict.INCONCLUSIVE
