import itertools
from fractions import Fraction

import pytest

from oracles import box_solve, lam
from toricsig import frobdec, hkest, polyvol, toric
from toricsig.frobdec import UlrichVerdict
from toricsig.toric import validate_cone

QUADRIC = validate_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
VER2 = validate_cone([(0, 1), (2, -1)])
VER3 = validate_cone([(0, 1), (3, -1)])


def brute_free_count(cone, q):
    """Residues whose summand ideal is principal, decided by box search."""
    count = 0
    for u in itertools.product(range(q), repeat=cone.d):
        a = [-(l // q) for l in lam(cone.generators, u)]
        if box_solve(cone.generators, a, 3) is not None:
            count += 1
    return count


def test_polynomial_ring_is_free():
    c = validate_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    for q in (2, 3, 5):
        dec = frobdec.decompose(c, q)
        assert len(dec.class_counts) == 1 and dec.free_count == q**3
    assert frobdec.fsig_estimate(c, 5) == 1


def test_veronese_examples():
    dec = frobdec.decompose(VER2, 3)
    assert len(dec.class_counts) == 2
    assert frobdec.fsig_estimate(VER2, 2) == Fraction(1, 2)
    assert frobdec.decompose(VER2, 2).free_count == 2


def test_quadric_levels():
    # frozen from brute_free_count below
    assert [frobdec.decompose(QUADRIC, q).free_count for q in (2, 4, 8, 16)] == [6, 44, 344, 2736]


@pytest.mark.parametrize("cone,q", [(QUADRIC, 2), (QUADRIC, 3), (QUADRIC, 4), (VER2, 5), (VER3, 4),
                                    (validate_cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)]), 3)])
def test_free_count_against_brute_force(cone, q):
    assert frobdec.decompose(cone, q).free_count == brute_free_count(cone, q)


def test_summand_class_example():
    s = frobdec.summand_class(QUADRIC, (1, 1, 0), 2)
    assert s.a == (0, 0, 0, -1)
    assert s.class_rep == toric.class_group(QUADRIC).project([0, 0, 0, -1])
    assert s.class_rep != toric.class_group(QUADRIC).identity
    with pytest.raises(ValueError):
        frobdec.summand_class(QUADRIC, (0, 0, 0), 1)


def test_budget():
    with pytest.raises(toric.BudgetExceeded):
        frobdec.decompose(QUADRIC, 100, budget=10**5)


def small_rings(cat):
    return [e for e in cat.values() if e.cone.d <= 4]


def test_multiplicities_sum(cat):
    for e in small_rings(cat):
        for q in (2, 3, 5):
            dec = frobdec.decompose(e.cone, q)
            assert sum(c for _, c in dec.class_counts) == q**e.cone.d


def test_fsig_estimate_trend(cat):
    report = {}
    for e in small_rings(cat):
        s = polyvol.fsignature(e.cone)
        qs = (4, 8, 16) if e.cone.d <= 3 else (4, 8)
        errs = []
        for q in qs:
            est = frobdec.fsig_estimate(e.cone, q)
            assert 0 <= est <= 1
            errs.append(abs(est - s))
        # fitted constant C in |est - s| <= C/q
        report[e.name] = max(err * q for err, q in zip(errs, qs))
        assert errs[-1] <= errs[0]
    print("fitted C:", {k: float(v) for k, v in report.items()})
    assert max(report.values()) <= 3


def test_generator_count_identity(cat):
    for e in cat.values():
        if e.cone.d > 3:
            continue
        for q in (2, 3, 4, 8):
            dec = frobdec.decompose(e.cone, q)
            assert frobdec.generator_total(e.cone, dec) == hkest.frobenius_colength(e.cone, q)


def test_gorenstein_free_equals_canonical(cat):
    for e in small_rings(cat):
        if not toric.gorenstein_data(e.cone).is_gorenstein:
            continue
        for q in (2, 3, 4, 7):
            dec = frobdec.decompose(e.cone, q)
            assert dec.free_count == dec.canonical_count


@pytest.mark.parametrize("name", ["veronese2_3", "veronese3_2", "ex_second", "cyclic3_2"])
def test_non_gorenstein_gap_shrinks(cat, name):
    c = cat[name].cone
    gaps = []
    for q in (4, 8, 16, 32):
        dec = frobdec.decompose(c, q, budget=2**16)
        gaps.append(Fraction(abs(dec.free_count - dec.canonical_count), q**c.d))
    assert gaps[-1] <= gaps[0] and gaps[-1] <= Fraction(1, 8)


def test_decomposition_classes_are_conic(cat):
    for e in small_rings(cat):
        census = set(frobdec.conic_census(e.cone, budget=10**8).classes)
        for q in (2, 3, 4, 5):
            assert set(frobdec.decompose(e.cone, q).counts) <= census


@pytest.mark.parametrize("name,size", [("polynomial_3", 1), ("quadric", 3), ("segre_3", 7), ("veronese2_2", 2),
                                       ("veronese2_3", 2), ("veronese2_4", 2), ("cyclic3_2", 3)])
def test_census_sizes(cat, name, size):
    census = frobdec.conic_census(cat[name].cone, budget=10**8)
    assert census.stable and len(census) == size


def test_census_needs_coprime_denominators():
    with pytest.raises(ValueError):
        frobdec.conic_census(QUADRIC, [4, 6])
    with pytest.raises(ValueError):
        frobdec.conic_census(QUADRIC, [5])


def test_ulrich_examples():
    # M = (x^2, xy, y^2) and omega = (x, y) in k[x,y]^(3)
    assert frobdec.ulrich_test(VER3, [0, -2], 3) is UlrichVerdict.ULRICH
    assert toric.num_generators(VER3, [0, -2]) == 3
    assert frobdec.ulrich_test(VER3, [1, 1], 3) is UlrichVerdict.NOT_ULRICH
    assert frobdec.ulrich_test(VER3, [0, 0], 3) is UlrichVerdict.NOT_ULRICH
    poly = validate_cone([(1, 0), (0, 1)])
    assert frobdec.ulrich_test(poly, [0, 0], 1) is UlrichVerdict.ULRICH
    assert frobdec.ulrich_test(VER3, [0, -2], Fraction(3), Fraction(3, 2)) is UlrichVerdict.INCONCLUSIVE


def test_workers_deterministic(cat):
    c = cat["segre_3"].cone
    assert frobdec.decompose(c, 24, workers=1) == frobdec.decompose(c, 24, workers=4)
