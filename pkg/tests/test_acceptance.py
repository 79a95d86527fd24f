"""Acceptance criteria 1-10, each at its stated tolerance and time limit.

Every criterion records its parts in ``conftest.ACCEPTANCE``; the terminal
summary prints one PASS/FAIL line per criterion.
"""

import contextlib
import io
import itertools
import math
import time
from fractions import Fraction

import pytest

import conftest
from oracles import cube_corner_grid
from toricsig import bounds, catalog, classify, cli, frobdec, hkest, polyvol, toric
from toricsig.classify import SearchSpace
from toricsig.hkest import Verdict


class Criterion:
    def __init__(self, num, limit=None):
        self.num, self.limit = num, limit
        self.parts = conftest.ACCEPTANCE.setdefault(num, [])

    def check(self, label, ok, detail=""):
        self.parts.append((label, bool(ok), detail))

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        if self.limit is not None:
            dt = time.perf_counter() - self.t0
            self.check("time", dt < self.limit, f"{dt:.1f}s of {self.limit}s")
        ok = all(p for _, p, _ in self.parts)
        failed = [f"{label} ({detail})" for label, p, detail in self.parts if not p]
        print(f"\ncriterion {self.num}: {'PASS' if ok else 'FAIL'}" + (f" {failed}" if failed else ""))
        return False

    def assert_all(self):
        bad = [(label, detail) for label, p, detail in self.parts if not p]
        assert not bad, bad


def cone(name):
    return catalog.entry(name).cone


def within(x, target, rel):
    return abs(Fraction(x) - target) <= Fraction(rel) * target


def test_criterion_1_exact_fsignatures():
    cases = [(f"polynomial_{d}", 1) for d in range(1, 6)]
    cases += [("quadric", Fraction(2, 3)), ("segre_p2p2", Fraction(11, 20))]
    cases += [(f"veronese2_{d}", Fraction(1, 2)) for d in range(2, 6)]
    cases += [("veronese3_2", Fraction(1, 3)), ("ex_second", Fraction(1, 3))]
    cases += [(f"segre_{n}", Fraction(2, n + 1)) for n in range(2, 5)]
    with Criterion(1) as c:
        for name, want in cases:
            t0 = time.perf_counter()
            got = polyvol.fsignature(cone(name))
            dt = time.perf_counter() - t0
            c.check(name, got == want and dt < 5, f"got {got}, want {want}, {dt:.2f}s")
    c.assert_all()


def test_criterion_2_classification():
    with Criterion(2, limit=180) as c:
        found = classify.enumerate_high_fsig(SearchSpace(3, 4, 1))
        c.check("2a d=3 n=4", [x.fsig for x in found] == [Fraction(2, 3)], [str(x.fsig) for x in found])
        found = classify.enumerate_high_fsig(SearchSpace(5, 6, 1))
        c.check("2b d=5 n=6", [x.fsig for x in found] == [Fraction(11, 20)], [str(x.fsig) for x in found])
        gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1), (1, -1, 1)]
        got = polyvol.fsignature(gens)
        c.check("2c 3x5 matrix", got == Fraction(1, 3), f"got {got}, want 1/3")
    c.assert_all()


def test_criterion_3_eulerian():
    with Criterion(3, limit=30) as c:
        bridge = all(Fraction(bounds.eulerian(d, k), math.factorial(d)) == bounds.v(k + 1, d) - bounds.v(k, d)
                     for d in range(1, 11) for k in range(d))
        c.check("slice bridge d<=10", bridge)
        scan = bounds.euler_lemma_scan(12)
        c.check("euler scan 12", scan == [(1, 0), (3, 1), (5, 2)], scan)
        agree = all(classify.sign_pattern_volume(d, k) == bounds.slice_volume(d, k)
                    for d in range(1, 8) for k in range(d))
        c.check("sign patterns d<=7", agree)
    c.assert_all()


def test_criterion_4_table():
    with Criterion(4, limit=1) as c:
        rows = bounds.conjecture_table(6)
        c.check("1 + c_d", [r.limit for r in rows] == [2, Fraction(3, 2), Fraction(4, 3), Fraction(29, 24),
                                                       Fraction(17, 15), Fraction(781, 720)])
        c.check("RHS_d", [r.rhs for r in rows] == [2, Fraction(3, 2), Fraction(4, 3), Fraction(5, 4),
                                                   Fraction(8, 7), Fraction(9, 8)])
    c.assert_all()


def test_criterion_5_bound_calculus():
    with Criterion(5, limit=60) as c:
        c.check("v(1,d), v(d,d)", all(bounds.v(1, d) == Fraction(1, math.factorial(d)) and bounds.v(d, d) == 1
                                      for d in range(1, 13)))
        worst = max(abs(bounds.v(s, d) - cube_corner_grid(s, d, 32))
                    for d in range(1, 5) for s in (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)))
        c.check("grid oracle", worst <= Fraction(2, 32), f"max error {float(worst):.4f}")
        c.check("higher_check", all(bounds.higher_check(e, d).verdict is bounds.BoundVerdict.HOLDS
                                    for e in range(2, 51) for d in range(3, 9)))
        c.check("refined bound > e/6 + 1", all(bounds.dim3_refined_exceeds(e) for e in range(3, 51)))
    c.assert_all()


def sizes_6(name):
    d = cone(name).d
    return (4, 8, 16) if d <= 3 else (4, 8)


def test_criterion_6_frobenius_decomposition():
    with Criterion(6, limit=180) as c:
        for ent in catalog.catalog():
            cn = ent.cone
            s = polyvol.fsignature(cn)
            gor = toric.gorenstein_data(cn).is_gorenstein
            for q in sizes_6(ent.name):
                dec = frobdec.decompose(cn, q)
                c.check(f"{ent.name} q={q} sum", sum(n for _, n in dec.class_counts) == q**cn.d)
                err = abs(dec.free_ratio - s)
                c.check(f"{ent.name} q={q} ratio", err <= Fraction(3, q), f"{err}")
                if gor:
                    c.check(f"{ent.name} q={q} a=b", dec.free_count == dec.canonical_count)
                if q <= 8 and cn.d <= 3:
                    c.check(f"{ent.name} q={q} mu", frobdec.generator_total(cn, dec)
                            == hkest.frobenius_colength(cn, q))
    c.assert_all()


def test_criterion_7_conic_censuses():
    cases = [(f"veronese2_{d}", 2) for d in range(2, 6)] + [("segre_3", 7), ("quadric", 3)]
    with Criterion(7, limit=60) as c:
        for name, size in cases:
            cen = frobdec.conic_census(cone(name), budget=10**8)
            c.check(name, cen.stable and len(cen) == size, f"{len(cen)} classes, stable={cen.stable}")
    c.assert_all()


def test_criterion_8_estimators():
    ehk_cases = [("quadric", (8, 16, 32), Fraction(4, 3), Fraction(2, 100)),
                 ("veronese2_3", (8, 16), Fraction(2), Fraction(3, 100)),
                 ("ex_second", (8, 16), Fraction(3), Fraction(5, 100)),
                 ("veronese3_2", (16, 32, 64), Fraction(2), Fraction(5, 100))]
    mult_cases = [("quadric", (16, 32), Fraction(2), Fraction(5, 100)),
                  ("ex_second", (8, 16), Fraction(8), Fraction(8, 100)),
                  ("veronese2_3", (16, 32), Fraction(4), Fraction(5, 100)),
                  ("veronese3_2", (32, 64), Fraction(3), Fraction(5, 100))]
    with Criterion(8, limit=300) as c:
        for name, qs, want, rel in ehk_cases:
            got = hkest.ehk_estimate(cone(name), qs).extrapolated
            c.check(f"ehk {name}", within(got, want, rel), f"{float(got):.4f} vs {want}")
        for name, ns, want, rel in mult_cases:
            got = hkest.multiplicity_estimate(cone(name), ns).extrapolated
            c.check(f"e {name}", within(got, want, rel), f"{float(got):.4f} vs {want}")
    c.assert_all()


def estimates(name, rel=Fraction(1, 20)):
    ent = catalog.entry(name)
    ehk = hkest.ehk_estimate(ent.cone, ent.ehk_q).interval(rel)
    e = hkest.multiplicity_estimate(ent.cone, ent.mult_n).interval(rel)
    return ehk, e


def test_criterion_9_inequalities():
    with Criterion(9, limit=120) as c:
        reports = [catalog.verify_entry(e) for e in catalog.catalog()]
        bad = [r.ring for r in reports if r.violated]
        c.check("no Violated verdict", not bad, bad)

        ehk, e = estimates("quadric")
        c.check("quadric ehk = e/6 + 1", hkest.compare_eq(ehk, e / 6 + 1) is not Verdict.VIOLATED)

        v = cone("veronese2_3")
        ehk, _ = estimates("veronese2_3")
        t = toric.cm_type(v)
        c.check("veronese2_3 exact data", t == 3 and polyvol.fsignature(v) == Fraction(1, 2))
        c.check("veronese2_3 ehk = (type+1)/2 = 2", Fraction(t + 1, 2) == 2
                and hkest.compare_eq(ehk, Fraction(2)) is not Verdict.VIOLATED)

        s = polyvol.fsignature(cone("ex_second"))
        _, e = estimates("ex_second")
        c.check("ex_second fsig = 1/3", s == Fraction(1, 3))
        c.check("ex_second e within 8% of 8", within(e.mid, Fraction(8), Fraction(8, 100)), str(e.mid))
        c.check("ex_second fsig = e/24", hkest.compare_eq(s, e / 24) is not Verdict.VIOLATED)

        k3 = cone("veronese3_2")
        s, t = polyvol.fsignature(k3), toric.cm_type(k3)
        ehk, e = estimates("veronese3_2")
        rhs = s * (t + 1) + 2 * e * (Fraction(1, 2) - s)
        c.check("k[x,y]^(3) ehk = s(t+1) + 2e(1/2 - s) = 2",
                hkest.compare_eq(ehk, rhs) is not Verdict.VIOLATED and rhs.lo <= 2 <= rhs.hi,
                f"ehk {ehk}, rhs {rhs}")
    c.assert_all()


def cli_output(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue().encode()


def test_criterion_10_determinism():
    with Criterion(10) as c:
        for argv in (["catalog", "verify", "--json"], ["classify", "--d", "3", "--n", "4", "--bound", "2",
                                                        "--all-minors", "--threshold", "1/3", "--json"],
                     ["decompose", "segre_3", "--q", "16", "--json"]):
            runs = [cli_output(*argv, "--threads", str(k)) for k in (1, 8)]
            c.check(" ".join(argv[:2]), runs[0] == runs[1] and runs[0][0] == 0)
    c.assert_all()
