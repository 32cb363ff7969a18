from __future__ import annotations

import pytest

from decoration.filtration import RayFiltration
from decoration.weil import (Stratum, WeilDecoration, canonicalize, from_flag, from_line_bundle_sum,
                             klyachko_filtrations, sort_strata, summary, twist, validate_decoration)
from divisors.divisor import TDivisor
from fixtures.catalog import DECORATION_NAMES, build_decoration
from lattice.errors import AxiomViolation, DuplicateDivisor, NoGenericStratum, SchemaError
from lattice.subspace import Subspace


def _line(v):
    return Subspace.span([v], len(v))


@pytest.mark.parametrize("name", DECORATION_NAMES)
def test_fixture_decorations_are_valid(name):
    _, dec = build_decoration(name)
    diag = validate_decoration(dec)
    assert diag.valid, diag.to_dict()


def test_f1_rank2_summary(f1_rank2):
    s = summary(f1_rank2)
    assert s.mu == (0, 0, 1, 1)
    assert s.lam == (3, 3, 2, 2)
    assert f1_rank2.strata[f1_rank2.generic_index].divisor == TDivisor((0, 0, 1, 1))
    assert len(f1_rank2.strata) == 3


def test_stratum_order(f1_rank2):
    eta = f1_rank2.generic_index
    lines = [i for i in range(3) if i != eta]
    for i in lines:
        assert f1_rank2.less(i, eta)
        assert not f1_rank2.less(eta, i)
    assert f1_rank2.join(*lines) == eta


def test_tangent_filtrations(tangent):
    filt = klyachko_filtrations(tangent)
    assert filt.mu == (0, 0, 0)
    assert filt.lam == (1, 1, 1)
    ray0 = filt.rays[0]
    assert ray0.at(0).is_full
    assert ray0.at(1) == _line([1, 0])
    assert ray0.at(2).is_zero
    assert filt.rays[2].at(1) == _line([-1, -1])


def test_filtration_below_first_jump_is_everything():
    f = RayFiltration.from_levels([(2, Subspace.full(2)), (5, _line([0, 1]))], 2)
    assert f.at(-10).is_full
    assert f.at(3) == _line([0, 1])
    assert f.shifted(1).mu == 3


def test_filtration_must_descend():
    with pytest.raises(SchemaError):
        RayFiltration.from_levels([(0, _line([1, 0])), (1, Subspace.full(2))], 2)


def test_line_bundle_sum_strata(p1):
    dec = from_line_bundle_sum(p1, [TDivisor((0, 0)), TDivisor((1, -1))])
    divisors = {s.divisor.coeffs: s.closure.dim for s in dec.strata}
    assert divisors == {(0, 0): 1, (1, -1): 1, (0, -1): 2}


def test_flag_decoration():
    D1, D2 = TDivisor((2, 1, 0)), TDivisor((1, 0, 0))
    dec = from_flag([[1, 0], [0, 1]], [D1, D2])
    assert validate_decoration(dec).valid
    assert dec.strata[dec.generic_index].divisor == D2
    with pytest.raises(ValueError):
        from_flag([[1, 0]], [D1, D2])


def test_canonicalize_merges_equal_divisors():
    D = TDivisor((1, 1, 1))
    dec = canonicalize(2, [([[1, 0]], D), ([[0, 1]], D)])
    assert len(dec.strata) == 1
    assert dec.strata[0].closure.is_full


def test_twist_shifts_every_stratum(tangent):
    D = TDivisor((-4, 0, 0))
    twisted = twist(tangent, D)
    assert [s.divisor for s in twisted.strata] == [s.divisor + D for s in tangent.strata]
    assert summary(twisted).mu == (-4, 0, 0)


def _decoration(pairs):
    return WeilDecoration(2, sort_strata([Stratum(V, TDivisor(c)) for V, c in pairs]))


def test_missing_generic_stratum():
    dec = _decoration([(_line([1, 0]), (1, 0, 0)), (_line([0, 1]), (0, 1, 0))])
    diag = validate_decoration(dec)
    assert not diag.valid
    assert isinstance(diag.issues[0], NoGenericStratum)


def test_duplicate_divisor():
    dec = _decoration([(_line([1, 0]), (1, 0, 0)), (_line([0, 1]), (1, 0, 0)),
                       (Subspace.full(2), (0, 0, 0))])
    assert any(isinstance(e, DuplicateDivisor) for e in validate_decoration(dec).issues)


def test_order_reversal_violation():
    dec = _decoration([(_line([1, 0]), (-1, 0, 0)), (Subspace.full(2), (0, 0, 0))])
    diag = validate_decoration(dec)
    assert any(isinstance(e, AxiomViolation) for e in diag.issues)
    with pytest.raises(AxiomViolation):
        diag.raise_for_errors()


def test_join_law_violation():
    # two lines meeting in the generic stratum, whose divisor is not their minimum
    dec = _decoration([(_line([1, 0]), (2, 0, 0)), (_line([0, 1]), (0, 2, 0)),
                       (Subspace.full(2), (-1, -1, 0))])
    issues = validate_decoration(dec).issues
    assert any(isinstance(e, AxiomViolation) and "join" in str(e) for e in issues)
