"""Exact rational linear algebra on small dense matrices.

Scalars are `fractions.Fraction` (or int) throughout; sympy does the
elimination so no floating point ever enters a decision.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import Matrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from lattice.errors import SchemaError

Vector = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Converts ints, Fractions and sympy rationals to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if hasattr(x, "p") and hasattr(x, "q"):
        return Fraction(int(x.p), int(x.q))
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(obj) -> Fraction:
    """Reads a rational from JSON: an int, a `[num, den]` pair or a `"p/q"` string.

    Raises:
        SchemaError: If the value is a float, a malformed pair or a zero denominator.
    """
    if isinstance(obj, bool):
        raise SchemaError(f"boolean is not a rational: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad rational string {obj!r}") from None
    if isinstance(obj, (list, tuple)) and len(obj) == 2 \
            and all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        if obj[1] == 0:
            raise SchemaError(f"zero denominator in {obj!r}")
        return Fraction(obj[0], obj[1])
    raise SchemaError(f"expected int, [num, den] or 'p/q', got {obj!r}")


def rational_json(x) -> list[int]:
    x = to_fraction(x)
    return [x.numerator, x.denominator]


def primitive(vector: Iterable[int]) -> tuple[int, ...]:
    """Divides an integer vector by the gcd of its entries (zero stays zero)."""
    v = tuple(int(a) for a in vector)
    g = math.gcd(*v) if v else 0
    return v if g in (0, 1) else tuple(a // g for a in v)


def clear_denominators(vector: Iterable) -> tuple[int, ...]:
    """Scales a rational vector to a primitive integer vector with the same direction."""
    v = [to_fraction(a) for a in vector]
    lcm = math.lcm(*(a.denominator for a in v)) if v else 1
    return primitive(int(a * lcm) for a in v)


def _domain_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[QQ(to_fraction(a).numerator, to_fraction(a).denominator) for a in row]
            for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def _sympy_matrix(rows: Sequence[Sequence], ncols: int) -> Matrix:
    if not rows:
        return Matrix.zeros(0, ncols)
    return Matrix([[Rational(to_fraction(a).numerator, to_fraction(a).denominator)
                    for a in row] for row in rows])


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Returns the rank over Q of a list of rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    return int(_domain_matrix(rows, ncols).rank())


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Returns the nonzero rows of the reduced row echelon form and their pivot columns."""
    if not rows or ncols == 0:
        return (), ()
    reduced, pivots = _sympy_matrix(rows, ncols).rref()
    out = tuple(tuple(to_fraction(reduced[i, j]) for j in range(ncols))
                for i in range(len(pivots)))
    return out, tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Returns a basis of {x : A x = 0} for A given by its rows."""
    if ncols == 0:
        return []
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    return [tuple(to_fraction(v[j]) for j in range(ncols))
            for v in _sympy_matrix(rows, ncols).nullspace()]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """Solves a square system exactly; None when the matrix is singular."""
    n = len(rows)
    m = _sympy_matrix(rows, n)
    if m.det() == 0:
        return None
    sol = m.LUsolve(Matrix([Rational(to_fraction(b).numerator, to_fraction(b).denominator)
                            for b in rhs]))
    return tuple(to_fraction(sol[i, 0]) for i in range(n))


def product_is_zero(left: Sequence[Sequence], right: Sequence[Sequence],
                    inner: int, ncols: int) -> bool:
    """Checks left @ right == 0 for an (a x inner) and an (inner x ncols) matrix."""
    if not left or not right or inner == 0 or ncols == 0:
        return True
    prod = _domain_matrix(left, inner).matmul(_domain_matrix(right, ncols))
    return bool(prod.is_zero_matrix)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))
