from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from divisors.divisor import (TDivisor, canonical_divisor, cap, cup, is_ample, is_nef, join_all, leq,
                              local_vertices, meet, meet_all, nef_split, principal, reference_ample)
from divisors.polytope import (QPolytope, cap_is_honest, divisor_of, face_of, intersection,
                               minkowski_sum, scaled_cap_stabilizes, section_polyhedron)
from fixtures.catalog import build_divisor
from lattice.errors import FanMismatch, NonIntegralVertex, NotNef
from lattice.fan import Cone

NABLA = TDivisor((0, 0, 2, 2))
NABLA_PRIME = TDivisor((3, 3, 1, 1))


def _vertices(P):
    return {tuple(int(x) for x in v) for v in P.vertices}


def test_lattice_operations():
    D, E = TDivisor((1, -2, 3)), TDivisor((0, 4, 3))
    assert meet(D, E) == TDivisor((0, -2, 3))
    assert join_all([D, E]) == TDivisor((1, 4, 3))
    assert meet_all([D, E, TDivisor((-1, 9, 9))]) == TDivisor((-1, -2, 3))
    assert leq(meet(D, E), D) and not leq(D, E)
    assert cap is meet and cup is not meet


def test_arithmetic_checks_length():
    with pytest.raises(FanMismatch):
        TDivisor((1, 2)) + TDivisor((1, 2, 3))


def test_f1_section_polygons(f1):
    P = section_polyhedron(f1, NABLA)
    assert _vertices(P) == {(-2, 0), (0, 0), (2, 2), (-2, 2)}
    assert len(P.lattice_points()) == 12
    assert len(section_polyhedron(f1, NABLA_PRIME).lattice_points()) == 20


def test_empty_polyhedron(p2):
    assert section_polyhedron(p2, TDivisor((-1, 0, 0))) is None


def test_divisor_of_round_trip(f1):
    for D in (NABLA, NABLA_PRIME, TDivisor((0, 0, 1, 1))):
        assert divisor_of(f1, section_polyhedron(f1, D)) == D


def test_divisor_of_rejects_rational_vertices(p2):
    P = QPolytope(((Fraction(1, 2), 0), (0, 0), (0, 1)), 2)
    with pytest.raises(NonIntegralVertex):
        divisor_of(p2, P)


def test_nef_and_ample(f1):
    assert is_ample(f1, NABLA) and is_ample(f1, NABLA_PRIME)
    fiber = TDivisor((0, 0, 0, 1))
    assert is_nef(f1, fiber) and not is_ample(f1, fiber)
    # the exceptional curve pairs negatively with itself
    assert not is_nef(f1, TDivisor((0, 1, 0, 0)))


def test_local_vertices_lie_in_polygon(f1):
    P = section_polyhedron(f1, NABLA)
    for m in local_vertices(f1, NABLA):
        assert P.contains(m)


def test_principal_divisors_are_translates(p2):
    D = TDivisor((1, 0, 0))
    m = (2, -1)
    shifted = section_polyhedron(p2, D + principal(p2, m))
    assert shifted.same_set(section_polyhedron(p2, D).translate([-x for x in m]))


def test_canonical_and_reference_ample(dp7):
    assert canonical_divisor(dp7) == TDivisor((-1,) * 5)
    A = reference_ample(dp7)
    assert is_ample(dp7, A)


@pytest.mark.parametrize("coeffs", list(product(range(-2, 2), repeat=3)))
def test_nef_split(p2, coeffs):
    D = TDivisor(coeffs)
    plus, minus = nef_split(p2, D)
    assert plus - minus == D
    assert is_nef(p2, plus) and is_nef(p2, minus)


def test_face_of_a_vertex_cone(f1):
    F = face_of(f1, NABLA, Cone((1, 2)))
    assert F.dim == 0
    assert _vertices(F) == {(-2, 0)}
    with pytest.raises(NotNef):
        face_of(f1, TDivisor((0, 1, 0, 0)), Cone((1,)))


def test_minkowski_sum_matches_divisor_sum(f1):
    P, Q = section_polyhedron(f1, NABLA), section_polyhedron(f1, NABLA_PRIME)
    assert minkowski_sum(P, Q).same_set(section_polyhedron(f1, NABLA + NABLA_PRIME))


def test_f1_cap_is_the_generic_divisor(f1):
    M = cap(NABLA, NABLA_PRIME)
    assert M == TDivisor((0, 0, 1, 1))
    assert cap_is_honest(f1, NABLA, NABLA_PRIME)


def test_dp7_virtual_cap_is_not_honest(dp7):
    _, D = build_divisor("dp7-nabla")
    _, E = build_divisor("dp7-nabla-prime")
    M = cap(D, E)
    assert M == TDivisor((0, 0, 2, 5, 2))
    honest = intersection(section_polyhedron(dp7, D), section_polyhedron(dp7, E))
    # same point set, but the diagonal inequality is slack
    assert section_polyhedron(dp7, M).same_set(honest)
    assert divisor_of(dp7, honest) == TDivisor((0, 0, 2, 4, 2))
    assert not cap_is_honest(dp7, D, E)


def test_dp7_scaled_caps(dp7):
    _, D = build_divisor("dp7-nabla")
    _, E = build_divisor("dp7-nabla-prime")
    assert scaled_cap_stabilizes(dp7, D, E) == 2
    assert scaled_cap_stabilizes(dp7, D, E, kmax=5, mode="dilate") is None
    with pytest.raises(NotNef):
        scaled_cap_stabilizes(dp7, D, TDivisor((0, 0, 0, 0, -1)))
