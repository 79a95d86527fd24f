import itertools
from fractions import Fraction

import numpy as np
import pytest

from oracles import delaunay_volume
from toricsig import bounds, classify, polyvol
from toricsig.classify import SearchSpace
from toricsig.toric import validate_cone

QUADRIC = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)]
THREE_BY_FIVE = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1), (1, -1, 1)]


def test_dimension_three_four_generators():
    found = classify.enumerate_high_fsig(SearchSpace(3, 4, 1))
    assert [c.fsig for c in found] == [Fraction(2, 3)]
    assert found[0].canonical == classify.canonical_form(QUADRIC)
    assert found[0].vertex_count == 6


def test_dimension_five_six_generators():
    found = classify.enumerate_high_fsig(SearchSpace(5, 6, 1))
    assert [c.fsig for c in found] == [Fraction(11, 20)]


def test_dimension_three_five_generators_empty():
    assert classify.enumerate_high_fsig(SearchSpace(3, 5, 1)) == []


def test_three_by_five_value():
    # the first generator is redundant: (1,1,-1) + (1,-1,1) = 2 e_1
    s = polyvol.fsignature(THREE_BY_FIVE)
    assert s == Fraction(5, 12)
    assert s == delaunay_volume([(r, 0, 1) for r in THREE_BY_FIVE], 3)


def test_nonunimodular_minors_stay_at_or_below_half():
    for space in (SearchSpace(3, 4, 1, unimodular_only=False), SearchSpace(3, 4, 2, unimodular_only=False),
                  SearchSpace(3, 5, 1, unimodular_only=False)):
        for cone in classify.candidates(space):
            if not classify.minors_unimodular(cone).unimodular:
                assert polyvol.fsignature(cone) <= Fraction(1, 2)


def test_minors_unimodular():
    assert classify.minors_unimodular(QUADRIC).unimodular
    v = classify.minors_unimodular([(1, 0), (1, 2)])
    assert not v.unimodular and v.witness == (0, 1) and abs(v.witness_det) == 2
    assert not classify.minors_unimodular(THREE_BY_FIVE).unimodular


def random_unimodular(d, rng):
    M = np.eye(d, dtype=int)
    for _ in range(5):
        i, j = rng.choice(d, 2, replace=False)
        M[i] += int(rng.integers(-2, 3)) * M[j]
    return M[rng.permutation(d)]


@pytest.mark.parametrize("gens", [QUADRIC, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -2)],
                                  [(1, 1, 0), (1, 0, 1), (0, 1, 1)]])
def test_canonical_form_invariance(gens):
    rng = np.random.default_rng(3)
    base = classify.canonical_form(gens)
    assert classify.canonical_form(base) == base
    for _ in range(5):
        M = random_unimodular(3, rng)
        moved = [tuple(int(x) for x in np.array(g) @ M) for g in gens]
        rng.shuffle(moved)
        assert classify.canonical_form(moved) == base


def test_order_and_threads_do_not_matter():
    space = SearchSpace(3, 4, 2, unimodular_only=False)
    a = classify.enumerate_high_fsig(space, Fraction(1, 3))
    assert a == classify.enumerate_high_fsig(space, Fraction(1, 3), reverse=True)
    assert a == classify.enumerate_high_fsig(space, Fraction(1, 3), workers=4)


def test_as_dict():
    c = classify.evaluate(validate_cone(QUADRIC))
    d = c.as_dict()
    assert d["fsig"] == "2/3" and len(d["matrix"]) == 3 and len(d["matrix"][0]) == 4


def test_budget():
    with pytest.raises(classify.BudgetExceeded):
        list(classify.candidates(SearchSpace(4, 8, 2), budget=1000))


def test_sign_pattern_volume():
    for d in range(1, 8):
        for k in range(d + 1):
            expected = bounds.slice_volume(d, k) if k < d else 0
            assert classify.sign_pattern_volume(d, k) == expected
    assert all(classify.sign_pattern_volume(4, k) <= Fraction(1, 2) for k in range(5))
    with pytest.raises(ValueError):
        classify.sign_pattern_volume(3, 4)
