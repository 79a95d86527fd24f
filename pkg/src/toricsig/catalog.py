"""Named toric rings with reference values, and the per-ring verification report.

Every sublattice construction below follows one pattern.  For an invariant
ring ``k[x_1..x_d]^G`` of a finite diagonal group with a weight vector ``w``
modulo ``r`` (``w_1 = 1``), the invariant monomials form the lattice
``{a : <w, a> = 0 mod r}`` with basis ``r e_1, e_j - w_j e_1`` (j >= 2).  In
that basis the coordinate functionals are ``(r, -w_2, ..., -w_d)`` and
``e_j``, which are the generator rows used here.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import frobdec, hkest
from .exactlin import RationalInterval
from .polyvol import fsignature
from .toric import Cone, class_group, cm_type, gorenstein_data, validate_cone


@dataclass(frozen=True)
class Expected:
    value: object
    # "literature", "computed" or "trivial"
    source: str
    basis: str
    # relative tolerance for estimated invariants; None means exact comparison
    rel_tol: Optional[Fraction] = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    cone: Cone
    expected: dict
    ehk_q: tuple[int, ...]
    mult_n: tuple[int, ...] = ()
    # order of the difference fit used for e when mult_n is empty
    diff_n: Optional[int] = None
    conic_denominators: Optional[tuple[int, ...]] = None
    decompose_q: tuple[int, ...] = ()
    # point budget for enumerations; None uses the library default
    budget: Optional[int] = None


def _unit(d: int, i: int) -> tuple[int, ...]:
    return tuple(int(i == j) for j in range(d))


def diagonal_quotient(weights, r: int) -> list[tuple[int, ...]]:
    """Generator rows for ``k[x]^G`` with ``G = Z/r`` acting by the given weights."""
    if weights[0] % r != 1 % r:
        raise ValueError("construction assumes the first weight is 1")
    d = len(weights)
    return [(r,) + tuple(-w for w in weights[1:])] + [_unit(d, i) for i in range(1, d)]


def segre_rows(n: int) -> list[tuple[int, ...]]:
    """Segre product of ``n`` copies of ``k[x, y]`` in dimension ``n + 1``."""
    return ([(0,) + _unit(n, i) for i in range(n)]
            + [(1,) + tuple(-c for c in _unit(n, i)) for i in range(n)])


def _lit(v, basis, tol=None):
    return Expected(v, "literature", basis, None if tol is None else Fraction(tol))


def _comp(v, basis, tol=None):
    return Expected(v, "computed", basis, None if tol is None else Fraction(tol))


def _triv(v, basis, tol=None):
    return Expected(v, "trivial", basis, None if tol is None else Fraction(tol))


def _build() -> list[CatalogEntry]:
    out = []

    def add(name, rows, expected, **kw):
        out.append(CatalogEntry(name, validate_cone(rows, name), expected, **kw))

    for d in range(1, 6):
        add(f"polynomial_{d}", [_unit(d, i) for i in range(d)],
            {"fsig": _triv(Fraction(1), "unit cube"), "gorenstein": _triv(True, "regular"),
             "type": _triv(1, "regular"), "ehk": _triv(Fraction(1), "regular", 0),
             "e": _triv(Fraction(1), "regular", 0)},
            ehk_q=(2, 4) if d >= 4 else (4, 8), diff_n=d + 1,
            decompose_q=(4, 8) if d >= 4 else (4, 8, 16))

    add("quadric", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)],
        {"fsig": _lit(Fraction(2, 3), "cube slab 1 <= sum <= 2, A(3,1)/3!"),
         "gorenstein": _lit(True, "hypersurface xw - yz"),
         "type": _lit(1, "Gorenstein"),
         "ehk": _lit(Fraction(4, 3), "equality case of ehk >= e/6 + 1", "1/50"),
         "e": _lit(Fraction(2), "quadric hypersurface", "1/20"),
         "conic_classes": _lit(3, "finite F-representation type {A, M1, M2}")},
        ehk_q=(8, 16, 32), mult_n=(16, 32), conic_denominators=(16, 27), decompose_q=(4, 8, 16))

    for d in range(2, 6):
        rows = [(1, 1, 0), (1, 0, 1), (0, 1, 1)] if d == 3 else diagonal_quotient([1] * d, 2)
        exp = {"fsig": _lit(Fraction(1, 2), "second Veronese subring"),
               "gorenstein": _comp(d % 2 == 0, "-1 in SL_d iff d even"),
               "type": _comp(1 if d % 2 == 0 else d, "omega generated by x_1..x_d when d is odd"),
               "conic_classes": _lit(2, "finite F-representation type {A, omega}"),
               "ehk": _comp(Fraction(d + 1, 2), "difference oracle and (type+1)/2 at d odd", "1/20"),
               "e": _comp(Fraction(2 ** (d - 1)), "degree of the second Veronese embedding", "1/20")}
        if d == 3:
            exp["ehk"] = _lit(Fraction(2), "(type+1)/2 with fsig 1/2", "3/100")
            exp["e"] = _lit(Fraction(4), "multiplicity of k[x,y,z]^(2)", "1/20")
            exp["type"] = _lit(3, "omega = (x, y, z)-part")
        add(f"veronese2_{d}", rows, exp,
            ehk_q=(8, 16) if d <= 3 else ((4, 8) if d == 4 else (2, 4)),
            mult_n=(16, 32) if d <= 3 else (), diff_n=None if d <= 3 else d + 2,
            conic_denominators=(16, 27) if d <= 4 else (5, 7),
            decompose_q=(4, 8, 16) if d <= 3 else (4, 8))

    add("veronese3_2", diagonal_quotient([1, 1], 3),
        {"fsig": _lit(Fraction(1, 3), "k[x,y]^(3)"),
         "gorenstein": _lit(False, "class of omega has order 3"),
         "type": _lit(2, "omega generated by x, y"),
         "ehk": _lit(Fraction(2), "equality in the non-Gorenstein upper bound", "1/20"),
         "e": _lit(Fraction(3), "degree of the twisted cubic cone", "1/20")},
        ehk_q=(16, 32, 64), mult_n=(32, 64), conic_denominators=(16, 27), decompose_q=(4, 8, 16))

    for n in range(2, 5):
        d = n + 1
        add(f"segre_{n}", segre_rows(n),
            {"fsig": _lit(Fraction(2, n + 1), "Segre product of n copies of k[x,y]"),
             "gorenstein": _lit(True, "Segre product of equal-degree polynomial rings"),
             "type": _lit(1, "Gorenstein"),
             "e": _comp(Fraction(math.factorial(n)), "degree of (P^1)^n", "1/20"),
             **({"conic_classes": _lit(7, "seven conic divisorial ideals")} if n == 3 else {})},
            ehk_q=(8, 16) if d <= 3 else ((4, 8) if d == 4 else (2, 4)),
            mult_n=(16, 32) if d <= 3 else (), diff_n=None if d <= 3 else d + 2,
            conic_denominators=(16, 27) if n == 3 else None,
            decompose_q=(4, 8, 16) if d <= 3 else (4, 8), budget=10**8 if d == 5 else None)

    add("ex_second", [(1, 1, 0), (1, -1, 0), (0, 0, 1), (2, 0, -1)],
        {"fsig": _lit(Fraction(1, 3), "equality fsig = e/24"),
         "gorenstein": _lit(True, "Gorenstein of multiplicity 8"),
         "type": _lit(1, "Gorenstein"),
         "ehk": _lit(Fraction(3), "fsig + (1 - fsig) e = 1/3 + 8/3", "1/20"),
         "e": _lit(Fraction(8), "equality fsig = e/24", "2/25")},
        ehk_q=(8, 16), mult_n=(8, 16), decompose_q=(4, 8, 16))

    add("segre_p2p2", [_unit(5, i) for i in range(5)] + [(1, 1, 1, -1, -1)],
        {"fsig": _lit(Fraction(11, 20), "cube slab 2 <= sum <= 3, A(5,2)/5!"),
         "gorenstein": _lit(True, "Segre product P^2 x P^2"),
         "type": _lit(1, "Gorenstein"),
         "e": _comp(Fraction(6), "degree of P^2 x P^2", "1/20")},
        ehk_q=(2, 4), diff_n=7, decompose_q=(4, 8))

    for m in (1, 2):
        d = 2 * m
        add(f"cyclic3_{d}", diagonal_quotient([1] * m + [2] * m, 3),
            {"fsig": _lit(Fraction(1, 3), "Z/3 quotient with weights (1^m, 2^m)"),
             "gorenstein": _lit(True, "weights sum to 0 mod 3"),
             "classgroup": _comp((0, (3,)), "Z/3"),
             "conic_classes": _lit(3, "finite F-representation type {A, M1, M2}")},
            ehk_q=(8, 16) if d <= 3 else (4, 8), mult_n=(16, 32) if d <= 3 else (),
            diff_n=None if d <= 3 else d + 2, conic_denominators=(16, 27),
            decompose_q=(4, 8, 16) if d <= 3 else (4, 8))
    return out


_CATALOG: Optional[tuple[CatalogEntry, ...]] = None


def catalog() -> tuple[CatalogEntry, ...]:
    """All entries, validated once."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = tuple(_build())
    return _CATALOG


def entry(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(f"unknown ring {name!r}; known: {', '.join(e.name for e in catalog())}")


# -- report ------------------------------------------------------------------

def fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, RationalInterval):
        return f"[{fmt(x.lo)}, {fmt(x.hi)}]"
    return str(x)


@dataclass
class Report:
    ring: str
    computed: dict
    expected: dict
    verdicts: list
    timings: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return any(v["verdict"] == hkest.Verdict.VIOLATED.value for v in self.verdicts)

    def as_dict(self, timings: bool = False) -> dict:
        out = {"ring": self.ring, "computed": self.computed, "expected": self.expected,
               "verdicts": self.verdicts}
        if timings:
            out["timings"] = self.timings
        return out


def _compare_expected(name, exp: Expected, got, interval=None) -> dict:
    V = hkest.Verdict
    if exp.rel_tol is None or interval is None:
        verdict = V.HOLDS if got == exp.value else V.VIOLATED
    else:
        target = Fraction(exp.value)
        ok = abs(Fraction(got) - target) <= exp.rel_tol * target
        verdict = V.HOLDS_WITHIN_TOLERANCE if ok else V.VIOLATED
        if ok and interval.width == 0 and Fraction(got) == target:
            verdict = V.HOLDS
    return {"name": f"expected_{name}", "statement": f"{name} = {fmt(exp.value)} ({exp.source})",
            "verdict": verdict.value, "lhs": fmt(got), "rhs": fmt(exp.value)}


def verify_entry(e: CatalogEntry, workers: int = 1, budget: Optional[int] = None) -> Report:
    """Compute every invariant for one ring and check it against the references."""
    budget = budget if budget is not None else e.budget
    kw = {} if budget is None else {"budget": budget}
    t = {}
    c = e.cone
    computed = {}

    t0 = time.perf_counter()
    s = fsignature(c)
    computed["fsig"] = s
    t["fsig"] = time.perf_counter() - t0

    cl = class_group(c)
    computed["classgroup"] = (cl.free_rank, cl.torsion)
    g = gorenstein_data(c)
    computed["gorenstein"] = g.is_gorenstein
    computed["q_index"] = g.q_index
    computed["type"] = cm_type(c)

    t0 = time.perf_counter()
    ehk = hkest.ehk_estimate(c, e.ehk_q, **kw)
    computed["ehk"] = ehk.extrapolated
    t["ehk"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if e.mult_n:
        mult = hkest.multiplicity_estimate(c, e.mult_n, **kw)
        computed["e"] = mult.extrapolated
        e_iv = mult.interval(Fraction(1, 20))
    else:
        fit = hkest.multiplicity_by_differences(c, e.diff_n, **kw)
        computed["e"] = Fraction(fit.value)
        computed["e_differences"] = list(fit.differences)
        e_iv = (RationalInterval.point(fit.value) if fit.stable
                else RationalInterval(min(fit.differences), max(fit.differences)))
    t["e"] = time.perf_counter() - t0

    if e.conic_denominators:
        t0 = time.perf_counter()
        census = frobdec.conic_census(c, e.conic_denominators, **kw)
        computed["conic_classes"] = len(census)
        computed["conic_stable"] = census.stable
        t["conic"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    decs = {}
    for q in e.decompose_q:
        dec = frobdec.decompose(c, q, workers=workers, **kw)
        decs[q] = dec
    computed["free_ratio"] = {str(q): dec.free_ratio for q, dec in decs.items()}
    t["decompose"] = time.perf_counter() - t0

    ehk_iv = ehk.interval(Fraction(1, 20))
    inv = hkest.RingInvariants(c.d, s, g.is_gorenstein, computed["type"], ehk_iv, e_iv)
    verdicts = [ch.as_dict() for ch in hkest.inequality_report(inv)]

    V = hkest.Verdict
    for q, dec in decs.items():
        ok = abs(dec.free_ratio - s) <= Fraction(3, q)
        verdicts.append({"name": f"free_ratio_q{q}", "statement": "|a_e/q^d - fsig| <= 3/q",
                         "verdict": (V.HOLDS if ok else V.VIOLATED).value,
                         "lhs": fmt(dec.free_ratio), "rhs": fmt(s)})
        if g.is_gorenstein:
            ok = dec.free_count == dec.canonical_count
            verdicts.append({"name": f"free_eq_canonical_q{q}", "statement": "a_e = b_e",
                             "verdict": (V.HOLDS if ok else V.VIOLATED).value,
                             "lhs": str(dec.free_count), "rhs": str(dec.canonical_count)})

    for name, exp in sorted(e.expected.items()):
        got = computed.get(name)
        interval = {"ehk": ehk_iv, "e": e_iv}.get(name)
        verdicts.append(_compare_expected(name, exp, got, interval))
    if "conic_stable" in computed:
        verdicts.append({"name": "conic_census_stable", "statement": "census stable under doubling",
                         "verdict": (V.HOLDS if computed["conic_stable"] else V.HOLDS_WITHIN_TOLERANCE).value,
                         "lhs": str(computed["conic_stable"]), "rhs": "True"})

    def show(v):
        if isinstance(v, dict):
            return {k: show(x) for k, x in v.items()}
        if isinstance(v, tuple):
            return [show(x) for x in v]
        if isinstance(v, list):
            return [show(x) for x in v]
        if isinstance(v, (bool, int, type(None))):
            return v
        return fmt(v)

    expected = {k: {"value": show(x.value), "source": x.source, "basis": x.basis,
                    "rel_tol": None if x.rel_tol is None else fmt(x.rel_tol)}
                for k, x in sorted(e.expected.items())}
    return Report(e.name, show(computed), expected, verdicts,
                  {k: round(v, 3) for k, v in t.items()})
