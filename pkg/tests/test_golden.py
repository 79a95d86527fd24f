"""The frozen golden files, re-derived by the brute-force oracles.

Box oracles need a radius; each value is computed at two radii and must
agree, so a box that is too small shows up as a disagreement.
"""

import itertools
import json
import os
from fractions import Fraction

import pytest

from oracles import (box_solve, brute_frobenius_colength, brute_hilbert_basis, brute_num_generators,
                     brute_power_colength, delaunay_volume, determinantal_invariants, lam)
from toricsig import catalog

GOLDEN = os.path.join(os.path.dirname(__file__), os.pardir, "golden")
SMALL = [e.name for e in catalog.catalog() if e.cone.d <= 3]
ALL = [e.name for e in catalog.catalog()]


def golden(ring, inv):
    with open(os.path.join(GOLDEN, ring, f"{inv}.json")) as fh:
        return json.load(fh)["value"]


def stable(fn, r0):
    a, b = fn(r0), fn(r0 + 2)
    assert a == b, f"oracle box radius {r0} too small"
    return a


def rows(name):
    return [list(g) for g in catalog.entry(name).cone.generators]


@pytest.mark.parametrize("name", ALL)
def test_fsig_and_classgroup(name):
    gens = rows(name)
    d = len(gens[0])
    if 2 <= d <= 4:
        assert Fraction(golden(name, "fsig")) == delaunay_volume([(g, 0, 1) for g in gens], d)
    # cokernel of lam: the n x d matrix with the generators as rows
    inv = determinantal_invariants(gens)
    cg = golden(name, "classgroup")
    assert cg["free_rank"] == len(gens) - d
    assert cg["torsion"] == [x for x in inv if x > 1]


@pytest.mark.parametrize("name", SMALL)
def test_hilbert_basis_and_type(name):
    gens = rows(name)
    hb = stable(lambda r: brute_hilbert_basis(gens, r), 4)
    assert [tuple(h) for h in golden(name, "hilbert_basis")] == hb
    assert golden(name, "type") == stable(lambda r: brute_num_generators(gens, [1] * len(gens), r), 4)


@pytest.mark.parametrize("name", SMALL)
def test_colengths(name):
    gens = rows(name)
    hb = [tuple(h) for h in golden(name, "hilbert_basis")]
    reach = max(max(abs(c) for c in h) for h in hb)
    for q, val in golden(name, "frobenius_colength").items():
        q = int(q)
        assert val == stable(lambda r: brute_frobenius_colength(gens, hb, q, r), 2 * (q + 1) * reach)
    for n, val in golden(name, "power_colength").items():
        n = int(n)
        if n <= 3:
            assert val == stable(lambda r: brute_power_colength(gens, hb, n, r), 2 * (n + 1) * reach)


@pytest.mark.parametrize("name", SMALL)
def test_gorenstein(name):
    gens = rows(name)
    g = golden(name, "gorenstein")
    principal = box_solve(gens, [1] * len(gens), 6) is not None
    assert g["gorenstein"] == principal
    if g["q_index"] is not None:
        r = g["q_index"]
        assert box_solve(gens, [r] * len(gens), 6 * r) is not None
        assert all(box_solve(gens, [k] * len(gens), 6 * k) is None for k in range(1, r))


@pytest.mark.parametrize("name", SMALL)
def test_free_count_q4(name):
    gens = rows(name)
    d = len(gens[0])
    free = 0
    for u in itertools.product(range(4), repeat=d):
        a = [-(l // 4) for l in lam(gens, u)]
        if box_solve(gens, a, 3) is not None:
            free += 1
    value = golden(name, "decompose_q4")
    assert value["free"] == free
    assert sum(c for _, c in value["classes"]) == 4**d
