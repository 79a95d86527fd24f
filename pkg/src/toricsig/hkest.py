"""Hilbert-Kunz and Hilbert-Samuel colengths of toric rings by lattice counting.

``m`` is always the irrelevant ideal, generated by the Hilbert basis.  A
monomial ``x`` lies outside ``m^[q]`` iff ``lam(x) >= q lam(h)`` fails for
every Hilbert basis element ``h``; it lies outside ``m^(n+1)`` iff it is a sum
of at most ``n`` Hilbert basis elements in every way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exactlin
from .exactlin import RationalInterval
from .toric import (DEFAULT_POINT_BUDGET, BudgetExceeded, Cone, _dominates, cm_type,
                    gorenstein_data, hilbert_basis, hilbert_basis_lam, lattice_points)


@dataclass(frozen=True)
class ColengthSample:
    parameter: int
    colength: int
    normalized: Fraction


@dataclass(frozen=True)
class EstimateReport:
    samples: tuple[ColengthSample, ...]
    extrapolated: Fraction
    claimed_tolerance: Fraction

    @property
    def last(self) -> Fraction:
        return self.samples[-1].normalized

    def interval(self, rel: Fraction = Fraction(0)) -> RationalInterval:
        """``extrapolated`` widened by the larger of the claimed and relative tolerance."""
        tol = max(self.claimed_tolerance, abs(self.extrapolated) * Fraction(rel))
        return RationalInterval(self.extrapolated - tol, self.extrapolated + tol)


def _report(samples: list[ColengthSample]) -> EstimateReport:
    last = samples[-1]
    prev = samples[-2] if len(samples) > 1 else None
    if prev is not None and last.parameter == 2 * prev.parameter:
        extra = 2 * last.normalized - prev.normalized
        tol = abs(last.normalized - prev.normalized)
    else:
        extra = last.normalized
        tol = abs(last.normalized - prev.normalized) if prev is not None else Fraction(0)
    return EstimateReport(tuple(samples), extra, tol)


def frobenius_colength(cone: Cone, q: int, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """``length(A / m^[q])``.

    Counts monoid points in a ``lam``-box whose outer shell (thickness the
    largest ``lam``-entry of a Hilbert basis element) is entirely inside
    ``m^[q]``; since ``m^[q]`` is closed under adding monoid points, nothing
    outside the box can be missing.
    """
    if q < 1:
        raise ValueError("q must be positive")
    H = hilbert_basis_lam(cone)
    thick = int(H.max())
    T = q * thick + thick
    while True:
        _, L = lattice_points(cone, [0] * cone.n, [T] * cone.n, budget=budget)
        covered = _dominates(L, q * H)
        shell = L.max(axis=1) > T - thick
        if np.all(covered[shell]):
            return int((~covered).sum())
        T *= 2


def _order_table(cone: Cone, n: int, budget: int):
    """``ord(x)`` for every monoid point with ``sum(lam) <= n * max_h sum(lam(h))``."""
    H = hilbert_basis_lam(cone)
    HX = np.array(hilbert_basis(cone), dtype=np.int64)
    gmax = int(H.sum(axis=1).max())
    T = n * gmax
    X, L = lattice_points(cone, [0] * cone.n, [T] * cone.n, budget=budget)
    g = L.sum(axis=1)
    keep = g <= T
    X, L, g = X[keep], L[keep], g[keep]
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo + 1
    strides = np.cumprod(np.concatenate([[1], span[::-1][:-1]]))[::-1]
    idx = (X - lo) @ strides
    pos = np.full(int(np.prod(span)), -1, dtype=np.int64)
    pos[idx] = np.arange(len(X))
    order = np.argsort(g, kind="stable")
    levels = np.unique(g)
    ordv = np.zeros(len(X), dtype=np.int64)
    starts = np.searchsorted(g[order], levels)
    ends = np.append(starts[1:], len(order))
    for lev, s, e in zip(levels, starts, ends):
        sel = order[s:e]
        if lev == 0:
            ordv[sel] = 0
            continue
        best = np.full(len(sel), -1, dtype=np.int64)
        for hx, hl in zip(HX, H):
            ok = np.all(L[sel] >= hl, axis=1)
            if not ok.any():
                continue
            prev = X[sel][ok] - hx
            j = pos[(prev - lo) @ strides]
            best[ok] = np.maximum(best[ok], ordv[j] + 1)
        ordv[sel] = best
    return g, ordv


def power_colength(cone: Cone, n: int, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """``length(A / m^(n+1))``: monoid points of order at most ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _, ordv = _order_table(cone, n, budget)
    return int((ordv <= n).sum())


def ehk_estimate(cone: Cone, q_list: Sequence[int], **kw) -> EstimateReport:
    q_list = list(q_list)
    if q_list != sorted(q_list):
        raise ValueError("q_list must be ascending")
    d = cone.d
    samples = []
    for q in q_list:
        c = frobenius_colength(cone, q, **kw)
        samples.append(ColengthSample(q, c, Fraction(c, q**d)))
    return _report(samples)


def multiplicity_estimate(cone: Cone, n_list: Sequence[int], **kw) -> EstimateReport:
    n_list = list(n_list)
    if n_list != sorted(n_list):
        raise ValueError("n_list must be ascending")
    d = cone.d
    samples = []
    for n in n_list:
        c = power_colength(cone, n, **kw)
        samples.append(ColengthSample(n, c, Fraction(math.factorial(d) * c, n**d)))
    return _report(samples)


@dataclass(frozen=True)
class DifferenceFit:
    """``d``-th finite differences of ``n -> length(A/m^(n+1))``.

    Once the Hilbert-Samuel function agrees with its polynomial, every
    difference equals ``e(A)``.  ``stable`` only records that the computed
    differences agree; it is evidence, not a certificate.
    """

    colengths: tuple[int, ...]
    differences: tuple[int, ...]

    @property
    def stable(self) -> bool:
        return len(set(self.differences[-2:])) == 1

    @property
    def value(self) -> int:
        return self.differences[-1]


def multiplicity_by_differences(cone: Cone, n_max: Optional[int] = None,
                                budget: int = DEFAULT_POINT_BUDGET) -> DifferenceFit:
    """Colengths for ``n = 0..n_max`` from one order table, and their differences."""
    d = cone.d
    n_max = d + 2 if n_max is None else n_max
    if n_max < d + 1:
        raise ValueError("need n_max >= d + 1 for two differences")
    _, ordv = _order_table(cone, n_max, budget)
    ell = [int((ordv <= n).sum()) for n in range(n_max + 1)]
    diffs = tuple(sum((-1) ** (d - j) * math.comb(d, j) * ell[n + j] for j in range(d + 1))
                  for n in range(n_max + 1 - d))
    return DifferenceFit(tuple(ell), diffs)


# -- inequality report -------------------------------------------------------

class Verdict(Enum):
    HOLDS = "Holds"
    HOLDS_WITHIN_TOLERANCE = "HoldsWithinTolerance"
    VIOLATED = "Violated"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    verdict: Verdict
    lhs: Optional[RationalInterval] = None
    rhs: Optional[RationalInterval] = None

    def as_dict(self) -> dict:
        iv = lambda x: None if x is None else [str(x.lo), str(x.hi)]
        return {"name": self.name, "statement": self.statement, "verdict": self.verdict.value,
                "lhs": iv(self.lhs), "rhs": iv(self.rhs)}


def _iv(x) -> RationalInterval:
    return x if isinstance(x, RationalInterval) else RationalInterval.point(x)


def compare_le(lhs, rhs) -> Verdict:
    lhs, rhs = _iv(lhs), _iv(rhs)
    if lhs.hi <= rhs.lo:
        return Verdict.HOLDS
    if lhs.lo <= rhs.hi:
        return Verdict.HOLDS_WITHIN_TOLERANCE
    return Verdict.VIOLATED


def compare_lt(lhs, rhs) -> Verdict:
    lhs, rhs = _iv(lhs), _iv(rhs)
    if lhs.hi < rhs.lo:
        return Verdict.HOLDS
    if lhs.lo < rhs.hi:
        return Verdict.HOLDS_WITHIN_TOLERANCE
    return Verdict.VIOLATED


def compare_eq(lhs, rhs) -> Verdict:
    lhs, rhs = _iv(lhs), _iv(rhs)
    if lhs.width == 0 and rhs.width == 0:
        return Verdict.HOLDS if lhs.lo == rhs.lo else Verdict.VIOLATED
    return Verdict.HOLDS_WITHIN_TOLERANCE if lhs.overlaps(rhs) else Verdict.VIOLATED


@dataclass
class RingInvariants:
    """Everything :func:`inequality_report` needs; estimates carry intervals."""

    d: int
    fsig: Fraction
    is_gorenstein: bool
    cm_type: int
    ehk: RationalInterval
    e: RationalInterval
    extra: dict = field(default_factory=dict)


def gather_invariants(cone: Cone, fsig: Fraction, ehk: EstimateReport, mult: EstimateReport,
                      rel_tol: Fraction = Fraction(1, 20)) -> RingInvariants:
    g = gorenstein_data(cone)
    return RingInvariants(cone.d, fsig, g.is_gorenstein, cm_type(cone),
                          ehk.interval(rel_tol), mult.interval(rel_tol))


def inequality_report(inv: RingInvariants) -> list[Check]:
    """Evaluate the volume-bound and F-signature identities for one ring."""
    d, s, t = inv.d, Fraction(inv.fsig), inv.cm_type
    ehk, e = inv.ehk, inv.e
    out = []

    def add(name, statement, verdict, lhs=None, rhs=None):
        out.append(Check(name, statement, verdict, lhs and _iv(lhs), rhs and _iv(rhs)))

    na = Verdict.NOT_APPLICABLE
    add("hk_lower", "e/d! <= ehk", compare_le(e / math.factorial(d), ehk), e / math.factorial(d), ehk)
    add("hk_upper", "ehk <= e", compare_le(ehk, e), ehk, e)
    if d >= 3:
        add("hk_higher", "ehk > (e+d)/d!", compare_lt((e + d) / math.factorial(d), ehk),
            (e + d) / math.factorial(d), ehk)
    else:
        add("hk_higher", "ehk > (e+d)/d!", na)
    # e = 1 means regular, where ehk = 1 < 7/6
    if d == 3 and e.lo > 1:
        add("hk_dim3", "ehk >= e/6 + 1", compare_le(e / 6 + 1, ehk), e / 6 + 1, ehk)
    else:
        add("hk_dim3", "ehk >= e/6 + 1", na)
    if not inv.is_gorenstein:
        rhs = s * (t + 1) + 2 * e * (Fraction(1, 2) - s)
        add("nongor_upper", "ehk <= s(type+1) + 2e(1/2 - s)", compare_le(ehk, rhs), ehk, rhs)
        add("nongor_half", "s <= 1/2", compare_le(s, Fraction(1, 2)), s, Fraction(1, 2))
        if s == Fraction(1, 2):
            add("nongor_half_identity", "ehk = (type+1)/2", compare_eq(ehk, Fraction(t + 1, 2)),
                ehk, Fraction(t + 1, 2))
        else:
            add("nongor_half_identity", "ehk = (type+1)/2", na)
        add("gor_upper", "ehk <= s + (1-s)e", na)
    else:
        add("nongor_upper", "ehk <= s(type+1) + 2e(1/2 - s)", na)
        add("nongor_half", "s <= 1/2", na)
        add("nongor_half_identity", "ehk = (type+1)/2", na)
        if d >= 2:
            rhs = s + (1 - s) * e
            add("gor_upper", "ehk <= s + (1-s)e", compare_le(ehk, rhs), ehk, rhs)
        else:
            add("gor_upper", "ehk <= s + (1-s)e", na)
    if d == 3 and inv.is_gorenstein and e.lo > 2:
        add("gor_dim3_e24", "s <= e/24", compare_le(s, e / 24), s, e / 24)
    else:
        add("gor_dim3_e24", "s <= e/24", na)
    return out
