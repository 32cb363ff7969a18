from __future__ import annotations

import pytest

from cohomology.cech import scan_region
from cohomology.sheaf import ToricSheafData
from decoration.weil import Stratum, WeilDecoration, from_flag, twist
from divisors.divisor import TDivisor
from fixtures.catalog import build_fan
from lattice.errors import ExactnessFailure
from resolution.canonical import (all_chains, build_resolution, chains, e1_page, e1_vanishing_bound,
                                  oracle_agrees, verification_region, verify_exactness)


def test_chains_of_f1_rank2(f1_rank2):
    eta = f1_rank2.generic_index
    assert all_chains(f1_rank2, 0) == [(0,), (1,), (2,)]
    assert all_chains(f1_rank2, 1) == [(0, eta), (1, eta)]
    assert all_chains(f1_rank2, 2) == []
    assert chains(f1_rank2, 1, eta, 0) == []


def test_resolution_terms(f1, f1_rank2):
    cplx = build_resolution(f1, f1_rank2)
    assert cplx.ranks == (4, 2)
    assert cplx.euler_characteristic == 2
    top = cplx.terms[1]
    assert all(s.divisor == TDivisor((0, 0, 1, 1)) for s in top)
    assert cplx.index[1][top[0].chain] == 0


def test_tangent_resolution(p2, tangent):
    cplx = build_resolution(p2, tangent)
    assert cplx.ranks == (5, 3)
    assert cplx.euler_characteristic == 2
    d = cplx.to_dict()
    assert d["ranks"] == [5, 3]
    assert len(d["terms"][1]) == 3


def test_flag_resolution_is_longer():
    basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    dec = from_flag(basis, [TDivisor((2, 2, 0)), TDivisor((1, 1, 0)), TDivisor((0, 0, 0))])
    cplx = build_resolution(build_fan("p2"), dec)
    # chains in a three-element total order
    assert cplx.ranks == (1 + 2 + 3, 1 + 1 + 2, 1)
    assert cplx.euler_characteristic == 3


@pytest.mark.parametrize("fixture", ["f1_rank2", "tangent", "p1_jump"])
def test_resolution_is_exact(request, fixture):
    dec = request.getfixturevalue(fixture)
    fan = request.getfixturevalue({"f1_rank2": "f1", "tangent": "p2", "p1_jump": "p1"}[fixture])
    report = verify_exactness(fan, dec)
    assert report.exact and report.d_squared_zero and report.euler_matches
    assert report.checked > 0
    report.raise_for_errors()


def test_twisted_tangent_resolution_is_exact(p2, tangent):
    dec = twist(tangent, TDivisor((-4, 0, 0)))
    assert verify_exactness(p2, dec)


def test_corrupted_decoration_is_caught(f1, f1_rank2):
    genuine = ToricSheafData.from_decoration(f1_rank2)
    eta = f1_rank2.generic_index
    strata = list(f1_rank2.strata)
    strata[eta] = Stratum(strata[eta].closure, TDivisor((3, 3, 2, 2)))
    bad = WeilDecoration(2, tuple(strata))
    report = verify_exactness(f1, bad, sheaf=genuine)
    assert not report
    assert report.failure is not None
    with pytest.raises(ExactnessFailure):
        report.raise_for_errors()
    assert report.to_dict()["failure"]["cone"]


def test_verification_region_covers_the_strata(f1, f1_rank2):
    sheaf = ToricSheafData.from_decoration(f1_rank2)
    region = verification_region(f1, f1_rank2, sheaf)
    assert (0, 0) in region
    assert len(region) == len(set(region))
    scanned = scan_region(f1, sheaf)
    assert set(scanned) < set(region)
    for axis in range(2):
        assert min(m[axis] for m in region) == min(m[axis] for m in scanned) - 1
        assert max(m[axis] for m in region) == max(m[axis] for m in scanned) + 1


def test_e1_page_of_f1_rank2(f1, f1_rank2):
    page = e1_page(f1, f1_rank2)
    assert set(page) == {(0, 0), (1, 0)}
    # h0 of the generic divisor (0,0,1,1) is 5
    assert page[(0, 0)] == 12 + 20 + 2 * 5
    assert page[(1, 0)] == 2 * 5
    assert e1_vanishing_bound(f1, f1_rank2) == (False, True, True)
    assert oracle_agrees(f1, f1_rank2)


def test_e1_page_of_the_twisted_tangent_bundle(p2, tangent):
    dec = twist(tangent, TDivisor((-4, 0, 0)))
    assert e1_page(p2, dec) == {(0, 2): 9, (1, 2): 9}
    assert e1_vanishing_bound(p2, dec) == (True, False, False)
    assert oracle_agrees(p2, dec)
