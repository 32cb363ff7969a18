from __future__ import annotations

import json
import logging

import pytest

from cohomology.cech import is_acyclic
from cohomology.sheaf import ToricSheafData
from decoration.weil import from_line_bundle_sum, twist
from divisors.divisor import TDivisor
from fixtures.catalog import build_fan
from lattice.errors import FanMismatch, NotNeflyDecorated
from sweep import random_decoration
from vanishing.criteria import (check_extremal, check_perlman_smith, is_acyclicly_decorated,
                                is_immaculately_decorated, is_nefly_decorated, jump_bounds,
                                vanishing_bound)
from vanishing.geometry import geometric_report


def _verdict(report, rays):
    return next(v for v in report.verdicts if v.rays == rays)


def test_f1_rank2_fails_the_extremal_criterion(f1, f1_rank2):
    report = check_extremal(f1, f1_rank2)
    assert not report.satisfied
    bad = _verdict(report, (0, 2))
    assert (bad.lhs, bad.rhs) == (1, 3)
    assert report.failing == [bad]
    ok = _verdict(report, (1, 3))
    assert (ok.lhs, ok.rhs) == (1, 0) and ok.satisfied


def test_f1_rank2_is_nefly_decorated(f1, f1_rank2):
    assert is_nefly_decorated(f1, f1_rank2)
    assert is_acyclicly_decorated(f1, f1_rank2)
    assert vanishing_bound(f1, f1_rank2) == 1
    # certified acyclic even though the collection inequality fails
    assert is_acyclic(f1, ToricSheafData.from_decoration(f1_rank2))


def test_twist_makes_the_criterion_pass(f1, f1_rank2):
    report = check_perlman_smith(f1, f1_rank2, TDivisor((1, 0, 1, 0)))
    assert _verdict(report, (0, 2)).lhs == 3
    assert _verdict(report, (0, 2)).rhs == 3
    assert report.satisfied


def test_criterion_on_klyachko_data_matches_decoration(f1, f1_rank2):
    sheaf = ToricSheafData.from_decoration(f1_rank2)
    assert jump_bounds(sheaf) == jump_bounds(f1_rank2)
    a = check_perlman_smith(f1, sheaf).to_dict()
    b = check_perlman_smith(f1, f1_rank2).to_dict()
    assert a == b


def test_criterion_checks_the_fan(p2, f1_rank2):
    with pytest.raises(FanMismatch):
        check_perlman_smith(p2, f1_rank2)


def test_tangent_bundle_passes(p2, tangent):
    report = check_perlman_smith(p2, tangent)
    assert report.satisfied
    assert [v.rays for v in report.verdicts] == [(0, 1, 2)]
    assert is_nefly_decorated(p2, tangent)


def test_twisted_tangent_bundle(p2, tangent):
    dec = twist(tangent, TDivisor((-4, 0, 0)))
    verdict = is_acyclicly_decorated(p2, dec)
    assert not verdict
    assert verdict.witness is not None
    assert vanishing_bound(p2, dec) == 3
    assert not check_perlman_smith(p2, dec).satisfied


def test_p1_jump_sheaf(p1, p1_jump):
    nefly = is_nefly_decorated(p1, p1_jump)
    assert not nefly
    assert nefly.witness_divisor == (0, -1)
    assert is_acyclicly_decorated(p1, p1_jump)
    assert not is_immaculately_decorated(p1, p1_jump)
    assert vanishing_bound(p1, p1_jump) == 1


def test_immaculately_decorated(p2):
    dec = from_line_bundle_sum(p2, [TDivisor((-1, 0, 0)), TDivisor((-1, -1, 0))])
    assert is_immaculately_decorated(p2, dec)
    assert is_acyclicly_decorated(p2, dec)


def test_geometric_report_f1_rank2(f1, f1_rank2):
    report = geometric_report(f1, f1_rank2)
    entry = next(e for e in report.entries if e.rays == (0, 2))
    assert entry.lhs_pairing == 1
    assert entry.edge_len == 1
    assert entry.edge_lattice_points == 2
    assert entry.rhs == 3 and entry.rhs_algebraic == 3
    assert entry.facet_distances == (3, 1)
    assert not entry.decomposition_applies
    assert not entry.satisfied
    assert not report.satisfied


def test_geometric_report_needs_nef_strata(p1, p1_jump):
    with pytest.raises(NotNeflyDecorated):
        geometric_report(p1, p1_jump)


def test_geometric_report_is_json(f1, f1_rank2):
    out = json.loads(json.dumps(geometric_report(f1, f1_rank2).to_dict()))
    assert {tuple(e["rays"]) for e in out["collections"]} == {(0, 2), (1, 3)}
    assert all(isinstance(e["rhs"], (int, list)) for e in out["collections"])


@pytest.mark.parametrize("name", ["f1", "dp6", "p1xp1"])
def test_extremal_and_full_criterion_agree(name, rng):
    fan = build_fan(name)
    for _ in range(30):
        _, dec = random_decoration(rng, fan)
        assert check_extremal(fan, dec).satisfied == check_perlman_smith(fan, dec).satisfied


@pytest.mark.parametrize("name", ["p1", "p2", "f1", "dp7-fig1"])
def test_implication_chain_on_random_decorations(name, rng):
    fan = build_fan(name)
    for _ in range(15):
        _, dec = random_decoration(rng, fan)
        if check_perlman_smith(fan, dec).satisfied:
            assert is_nefly_decorated(fan, dec)
        if is_nefly_decorated(fan, dec):
            assert is_acyclicly_decorated(fan, dec)
        if is_acyclicly_decorated(fan, dec):
            assert is_acyclic(fan, ToricSheafData.from_decoration(dec))


def test_lattice_point_reading_is_flagged_when_it_flips_the_verdict(f1, caplog):
    dec = from_line_bundle_sum(f1, [TDivisor((0, 0, 2, 2)), TDivisor((2, 2, 1, 1))])
    with caplog.at_level(logging.DEBUG, logger="vanishing.geometry"):
        report = geometric_report(f1, dec)
    entry = next(e for e in report.entries if e.rays == (0, 2))
    assert (entry.lhs_pairing, entry.edge_lattice_points, entry.rhs) == (1, 2, 2)
    warnings = [r for r in caplog.records
                if r.name == "vanishing.geometry" and r.levelno == logging.WARNING]
    assert len(warnings) == 1 and "(0, 2)" in warnings[0].getMessage()


def test_lattice_point_reading_agrees_on_the_f1_pair(f1, f1_rank2, caplog):
    with caplog.at_level(logging.DEBUG, logger="vanishing.geometry"):
        geometric_report(f1, f1_rank2)
    assert not [r for r in caplog.records
                if r.name == "vanishing.geometry" and r.levelno >= logging.WARNING]
    assert any("2 lattice points but pairs to 1" in r.getMessage() for r in caplog.records)
