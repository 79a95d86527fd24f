"""Exact integer and rational linear algebra.

Matrices are plain lists of lists of Python ints (or ``Fraction``), so every
operation here is exact.  Nothing in this module ever touches a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[int]]

DEFAULT_EPS = Fraction(1, 10**9)


def as_matrix(A: Sequence[Sequence[int]]) -> Matrix:
    """Copy ``A`` into a fresh list-of-lists, checking it is rectangular."""
    rows = [list(r) for r in A]
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


# -- Smith normal form -------------------------------------------------------

def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` with ``U @ A @ V == D``, ``U`` and ``V`` unimodular
    and ``D`` diagonal with ``D[i][i] | D[i+1][i+1]`` and nonnegative entries.

    Pivots are always the nonzero entry of smallest absolute value in the
    remaining block, ties broken by (row, col), so the transforms are
    reproducible.
    """
    D = as_matrix(A)
    m, n = len(D), len(D[0])
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(pi, t)
            if pj != t:
                swap_cols(pj, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form: the unique ``H = U A`` with ``U`` unimodular.

    Nonzero rows come first, pivots are positive and move strictly right, and
    entries above a pivot lie in ``[0, pivot)``.  Zero rows are kept at the bottom.
    """
    H = as_matrix(A)
    m, n = len(H), len(H[0]) if H else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid on column c among rows r..m-1
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    k = H[i][c] // H[r][c]
                    H[i] = [a - k * b for a, b in zip(H[i], H[r])]
                    done = done and H[i][c] == 0
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
            for i in range(r):
                k = H[i][c] // H[r][c]
                H[i] = [a - k * b for a, b in zip(H[i], H[r])]
            r += 1
    return H


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """Integer solution of ``A x = b``, or ``None`` when there is none."""
    A = as_matrix(A)
    m, n = len(A), len(A[0])
    if len(b) != m:
        raise ValueError(f"dimension mismatch: A is {m}x{n}, b has length {len(b)}")
    U, D, V = smith_normal_form(A)
    c = matvec(U, b)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(V, y)


# -- determinants and rational solves ----------------------------------------

def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    M = as_matrix(A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det_rational(A: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix with rational entries."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = -out
        out *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return out


def rank(A: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    cols = len(M[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse over the rationals; raises ``ZeroDivisionError`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [a / p for a in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Unique rational solution of a square system, ``None`` if singular."""
    try:
        inv = inverse(A)
    except ZeroDivisionError:
        return None
    return matvec(inv, [Fraction(x) for x in b])


# -- intervals ---------------------------------------------------------------

@dataclass(frozen=True)
class RationalInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints.

    Arithmetic returns an enclosure of every possible result, so the true
    value of an expression is always inside the computed interval.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RationalInterval":
        return cls(Fraction(x), Fraction(x))

    @staticmethod
    def _coerce(x) -> "RationalInterval":
        if isinstance(x, RationalInterval):
            return x
        return RationalInterval.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        o = self._coerce(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ps = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi]
        return RationalInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval division by an interval containing 0")
        return self * RationalInterval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        if k % 2 == 1 or self.lo >= 0:
            return RationalInterval(self.lo**k, self.hi**k)
        if self.hi <= 0:
            return RationalInterval(self.hi**k, self.lo**k)
        return RationalInterval(Fraction(0), max(self.lo**k, self.hi**k))

    def certainly_lt(self, other) -> bool:
        return self.hi < self._coerce(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > self._coerce(other).hi

    def overlaps(self, other) -> bool:
        o = self._coerce(other)
        return self.lo <= o.hi and o.lo <= self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def sqrt_interval(x, eps=DEFAULT_EPS) -> RationalInterval:
    """Rational interval of width at most ``eps`` containing ``sqrt(x)``."""
    x = Fraction(x)
    eps = Fraction(eps)
    if x < 0:
        raise ValueError("square root of a negative number")
    if eps <= 0:
        raise ValueError("eps must be positive")
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return RationalInterval.point(Fraction(rn, rd))
    N = math.ceil(1 / eps)
    # floor(sqrt(x) * N) = isqrt(floor(x * N^2))
    k = math.isqrt(math.floor(x * N * N))
    return RationalInterval(Fraction(k, N), Fraction(k + 1, N))
