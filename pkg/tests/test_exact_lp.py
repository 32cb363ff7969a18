from __future__ import annotations

from fractions import Fraction

import pytest

from lattice import exact, lp
from lattice.errors import SchemaError
from lattice.subspace import Subspace


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert exact.rank(rows) == 2
    kernel = exact.nullspace(rows, 3)
    assert len(kernel) == 1
    assert all(exact.dot(r, kernel[0]) == 0 for r in rows)


def test_solve_singular_and_regular():
    assert exact.solve([[1, 1], [2, 2]], [1, 2]) is None
    assert exact.solve([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))


@pytest.mark.parametrize("raw, value", [(3, Fraction(3)), ([1, 2], Fraction(1, 2)),
                                        ("-2/6", Fraction(-1, 3))])
def test_parse_rational(raw, value):
    assert exact.parse_rational(raw) == value


@pytest.mark.parametrize("raw", [0.5, [1, 0], True, "x/2", [1, 2, 3]])
def test_parse_rational_rejects(raw):
    with pytest.raises(SchemaError):
        exact.parse_rational(raw)


def test_primitive_and_clear_denominators():
    assert exact.primitive((4, -6)) == (2, -3)
    assert exact.primitive((0, 0)) == (0, 0)
    assert exact.clear_denominators((Fraction(1, 2), Fraction(-1, 3))) == (3, -2)


def test_subspace_canonical_form():
    a = Subspace.span([[1, 1, 0], [0, 1, 0]], 3)
    b = Subspace.span([[1, 0, 0], [0, 2, 0], [1, 1, 0]], 3)
    assert a == b and hash(a) == hash(b)
    assert a.dim == 2
    assert Subspace.span([[1, 0, 0]], 3) < a
    assert not a.contains(Subspace.full(3))


def test_subspace_intersection_and_sum():
    x = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    y = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert (x & y) == Subspace.span([[0, 1, 0]], 3)
    assert (x + y).is_full
    assert (x & Subspace.zero(3)).is_zero


def test_coordinates():
    V = Subspace.span([[1, 2], [0, 0]], 2)
    assert V.coordinates([2, 4]) == (Fraction(2),)
    assert V.coordinates([1, 0]) is None


def test_simplex_optimum():
    # min -x - y  s.t.  x + 2y + s = 4, 3x + y + t = 6
    res = lp.minimize([-1, -1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert res.status == "optimal"
    assert res.value == Fraction(-14, 5)


def test_simplex_infeasible_and_unbounded():
    assert lp.find_nonnegative_solution([[1, 1]], [-1]) is None
    res = lp.minimize([-1, 0], [[1, -1]], [0])
    assert res.status == "unbounded"


def test_in_cone():
    gens = [(1, 0), (1, 1)]
    assert lp.in_cone((2, 1), gens)
    assert not lp.in_cone((0, 1), gens)
    assert lp.in_cone((0, 0), [])


def test_positive_functional():
    a = lp.positive_functional([(1, -1, 0), (0, 1, -1)], 3)
    assert a is not None
    assert exact.dot(a, (1, -1, 0)) >= 1 and exact.dot(a, (0, 1, -1)) >= 1
    assert lp.positive_functional([(1, 0), (-1, 0)], 2) is None
