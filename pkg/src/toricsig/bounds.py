"""Cube-corner volumes, the Aberbach-Enescu lower bound, and related constants.

``v(s, d)`` is the volume of ``{x in [0,1]^d : sum(x) <= s}``.  Eulerian
numbers give the slabs ``k <= sum(x) <= k+1``, and the zigzag numbers give
the coefficients of ``sec x + tan x``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactlin import DEFAULT_EPS, RationalInterval, sqrt_interval

Number = Union[int, Fraction, RationalInterval]


class BoundVerdict(Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    NOT_APPLICABLE = "NotApplicable"


def _v_exact(s: Fraction, d: int) -> Fraction:
    if s <= 0:
        return Fraction(0)
    if s >= d:
        return Fraction(1)
    # inclusion-exclusion over the corners the hyperplane has passed
    return sum(Fraction((-1) ** n * math.comb(d, n)) * (s - n) ** d
               for n in range(math.floor(s) + 1)) / math.factorial(d)


def v(s: Number, d: int) -> Union[Fraction, RationalInterval]:
    """Volume of the part of the unit ``d``-cube with coordinate sum at most ``s``.

    ``v`` is nondecreasing in ``s``, so an interval argument maps to the
    interval of its endpoint values.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if isinstance(s, RationalInterval):
        return RationalInterval(_v_exact(s.lo, d), _v_exact(s.hi, d))
    return _v_exact(Fraction(s), d)


@dataclass(frozen=True)
class BoundContext:
    e: Fraction
    d: int
    r: int
    s: Union[Fraction, RationalInterval]
    t_list: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        if self.d < 1 or self.e < 1 or self.r < 0:
            raise ValueError("need d >= 1, e >= 1, r >= 0")
        if self.t_list is not None and len(self.t_list) != self.r:
            raise ValueError("t_list must have length r")


def ae_bound(ctx: BoundContext) -> Union[Fraction, RationalInterval]:
    """``e * (v(s) - sum_i v(s - t_i))``; ``t_i`` default to 1."""
    ts = ctx.t_list if ctx.t_list is not None else (Fraction(1),) * ctx.r
    e = Fraction(ctx.e)
    if isinstance(ctx.s, RationalInterval):
        lo = _v_exact(ctx.s.lo, ctx.d) - sum(_v_exact(ctx.s.hi - t, ctx.d) for t in ts)
        hi = _v_exact(ctx.s.hi, ctx.d) - sum(_v_exact(ctx.s.lo - t, ctx.d) for t in ts)
        return RationalInterval(e * lo, e * hi)
    s = Fraction(ctx.s)
    return e * (_v_exact(s, ctx.d) - sum(_v_exact(s - t, ctx.d) for t in ts))


@dataclass(frozen=True)
class HigherCheck:
    verdict: BoundVerdict
    value: Optional[Fraction] = None
    identity_value: Optional[int] = None
    threshold: Optional[int] = None


def higher_check(e: int, d: int) -> HigherCheck:
    """Check ``d! e^d (v_s - (e-2) v_{s-1}) > e^{d-1} (e+d)`` at ``s = 1 + 1/e``.

    The left side is also compared with its closed form ``(e+1)^d - d - e + 2``.
    """
    if e < 2 or d < 3:
        return HigherCheck(BoundVerdict.NOT_APPLICABLE)
    s = 1 + Fraction(1, e)
    lhs = math.factorial(d) * e**d * (v(s, d) - (e - 2) * v(s - 1, d))
    closed = (e + 1) ** d - d - e + 2
    rhs = e ** (d - 1) * (e + d)
    ok = lhs == closed and lhs > rhs
    return HigherCheck(BoundVerdict.HOLDS if ok else BoundVerdict.VIOLATED, lhs, closed, rhs)


# -- closed-form optima in dimension 3 ---------------------------------------

def optimal_cut(e: int, eps=DEFAULT_EPS) -> RationalInterval:
    """Maximiser ``(e+2+sqrt(e+2))/(e+1)`` of ``s^3 - (e+2)(s-1)^3`` on [1, 2]."""
    return (e + 2 + sqrt_interval(e + 2, eps)) / (e + 1)


def dim3_bound_general(e: int, eps=DEFAULT_EPS) -> RationalInterval:
    """``(e/6) * ((e+2+sqrt(e+2))/(e+1))^2`` as an enclosure."""
    return Fraction(e, 6) * optimal_cut(e, eps) ** 2


def dim3_bound_refined(e: int, eps=DEFAULT_EPS) -> RationalInterval:
    """``(1/6)(e + 3 + 2/e + (2 + 2/e) sqrt(e+1))`` as an enclosure."""
    e = Fraction(e)
    return (e + 3 + 2 / e + (2 + 2 / e) * sqrt_interval(e + 1, eps)) / 6


def separate(make, target: Fraction, eps=DEFAULT_EPS, eps_floor=Fraction(1, 10**60)) -> bool:
    """Decide ``make(eps) > target`` by shrinking ``eps`` until the interval clears it.

    Returns False if the interval lies below the target or precision runs out.
    """
    eps = Fraction(eps)
    while eps >= eps_floor:
        iv = make(eps)
        if iv.lo > target:
            return True
        if iv.hi <= target:
            return False
        eps /= 2**16
    return False


def dim3_refined_exceeds(e: int) -> bool:
    """The refined bound separates from ``e/6 + 1`` (for ``e >= 3``)."""
    return separate(lambda eps: dim3_bound_refined(e, eps), Fraction(e, 6) + 1)


# -- Eulerian numbers and cube slices -----------------------------------------

@functools.lru_cache(maxsize=None)
def eulerian(d: int, k: int) -> int:
    """Permutations of ``d`` letters with ``k`` descents."""
    if d < 0 or k < 0:
        raise ValueError("negative argument")
    if d == 0:
        return int(k == 0)
    if k >= d:
        return 0
    return (d - k) * eulerian(d - 1, k - 1) + (k + 1) * eulerian(d - 1, k) if k > 0 else 1


def slice_volume(d: int, k: int) -> Fraction:
    """Volume of ``{x in [0,1]^d : k <= sum(x) <= k+1}``."""
    if not 0 <= k < d:
        raise ValueError(f"need 0 <= k < d, got d={d}, k={k}")
    return Fraction(eulerian(d, k), math.factorial(d))


def euler_lemma_scan(d_max: int) -> list[tuple[int, int]]:
    """Every ``(d, k)`` with ``d <= d_max`` whose slab volume exceeds 1/2."""
    half = Fraction(1, 2)
    return [(d, k) for d in range(1, d_max + 1) for k in range(d) if slice_volume(d, k) > half]


# -- zigzag numbers -----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def zigzag_numbers(n_max: int) -> tuple[int, ...]:
    """Euler zigzag numbers ``E_0 .. E_n_max`` by the Seidel-Entringer triangle."""
    out = [1]
    row = [1]
    for n in range(1, n_max + 1):
        new = [0]
        for j in range(n):
            new.append(new[-1] + row[n - 1 - j])
        row = new
        out.append(row[-1])
    return tuple(out)


def zigzag_constants(d_max: int) -> list[Fraction]:
    """``[c_1, ..., c_d_max]`` with ``sec x + tan x = 1 + sum c_d x^d``."""
    if d_max < 1:
        raise ValueError("d_max must be positive")
    E = zigzag_numbers(d_max)
    return [Fraction(E[d], math.factorial(d)) for d in range(1, d_max + 1)]


def conjectured_rhs(d: int) -> Fraction:
    """``2^m/(2^m - 1)`` for ``d = 2m-1`` and ``(2^m + 1)/2^m`` for ``d = 2m``."""
    if d % 2:
        m = (d + 1) // 2
        return Fraction(2**m, 2**m - 1)
    m = d // 2
    return Fraction(2**m + 1, 2**m)


@dataclass(frozen=True)
class TableRow:
    d: int
    limit: Fraction
    rhs: Fraction


def conjecture_table(d_max: int) -> list[TableRow]:
    cs = zigzag_constants(d_max)
    return [TableRow(d, 1 + cs[d - 1], conjectured_rhs(d)) for d in range(1, d_max + 1)]


TABLE_NOTES = (
    "p = 2, d = 2m: length(A/m^[2^e]) = ((2^m+1)/2^m) 2^(de)",
    "p = 2, d = 2m-1 (conjectural): length(A/m^[2^e]) = (2^m/(2^m-1)) 2^(de) - (2^(m-1))^e/(2^m-1)",
    "d = 4, odd p: ehk = (29p^2+15)/(24p^2+12) > 29/24",
)
