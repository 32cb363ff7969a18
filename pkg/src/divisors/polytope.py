"""Rational polytopes and the divisor <-> polytope dictionary.

Polytopes carry a vertex list and, when known, the inequalities
<u, n> >= b they were cut out by. The empty polyhedron is represented by None.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from configs.toric import toric
from divisors.divisor import TDivisor, is_nef, meet, reference_ample
from lattice import exact, lp
from lattice.errors import NonIntegralVertex, NotNef, UnboundedPolyhedron
from lattice.fan import Cone, Fan

logger = logging.getLogger(__name__)

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class QPolytope:
    """A nonempty polytope in M_Q given by its (irredundant, sorted) vertices."""
    vertices: tuple[Point, ...]
    ambient: int
    inequalities: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    def __post_init__(self):
        verts = sorted(set(tuple(exact.to_fraction(x) for x in v) for v in self.vertices))
        object.__setattr__(self, "vertices", tuple(verts))

    @classmethod
    def from_points(cls, points: Sequence[Sequence], ambient: int) -> "QPolytope":
        """Convex hull of a finite point set; interior points are pruned by LP."""
        pts = sorted(set(tuple(exact.to_fraction(x) for x in p) for p in points))
        return cls(tuple(_extreme_points(pts)), ambient)

    @cached_property
    def dim(self) -> int:
        v0 = self.vertices[0]
        diffs = [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]
        return exact.rank(diffs, self.ambient) if diffs else 0

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def minimum(self, direction: Sequence[int]) -> Fraction:
        return min(exact.dot(v, direction) for v in self.vertices)

    def maximum(self, direction: Sequence[int]) -> Fraction:
        return max(exact.dot(v, direction) for v in self.vertices)

    def contains(self, point: Sequence) -> bool:
        u = [exact.to_fraction(x) for x in point]
        if self.inequalities:
            return all(exact.dot(u, n) >= b for n, b in self.inequalities)
        # u as a convex combination of the vertices
        A = [[v[r] for v in self.vertices] for r in range(self.ambient)]
        A.append([1] * len(self.vertices))
        return lp.find_nonnegative_solution(A, u + [1]) is not None

    def lattice_points(self) -> list[tuple[int, ...]]:
        lo = [math.floor(min(v[r] for v in self.vertices)) for r in range(self.ambient)]
        hi = [math.ceil(max(v[r] for v in self.vertices)) for r in range(self.ambient)]
        box = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        return [p for p in box if self.contains(p)]

    def translate(self, shift: Sequence) -> "QPolytope":
        s = [exact.to_fraction(x) for x in shift]
        ineq = tuple((n, b + exact.dot(s, n)) for n, b in self.inequalities)
        return QPolytope(tuple(tuple(a + b for a, b in zip(v, s)) for v in self.vertices),
                         self.ambient, ineq)

    def negate(self) -> "QPolytope":
        ineq = tuple((tuple(-x for x in n), b) for n, b in self.inequalities)
        return QPolytope(tuple(tuple(-a for a in v) for v in self.vertices), self.ambient, ineq)

    def dilate(self, k: int) -> "QPolytope":
        ineq = tuple((n, k * b) for n, b in self.inequalities)
        return QPolytope(tuple(tuple(k * a for a in v) for v in self.vertices), self.ambient, ineq)

    def same_set(self, other: "QPolytope | None") -> bool:
        return other is not None and self.vertices == other.vertices


def _extreme_points(points: list[Point]) -> list[Point]:
    out = []
    for i, p in enumerate(points):
        others = points[:i] + points[i + 1:]
        if not others:
            out.append(p)
            continue
        A = [[q[r] for q in others] for r in range(len(p))]
        A.append([1] * len(others))
        if lp.find_nonnegative_solution(A, list(p) + [1]) is None:
            out.append(p)
    return out


@lru_cache(maxsize=None)
def _positively_spanning(normals: tuple[tuple[int, ...], ...]) -> bool:
    d = len(normals[0])
    for r in range(d):
        for sign in (1, -1):
            target = [sign * int(i == r) for i in range(d)]
            if not lp.in_cone(target, normals):
                return False
    return True


def polyhedron(normals: Sequence[Sequence[int]], bounds: Sequence, ambient: int) -> QPolytope | None:
    """Vertex representation of {u : <u, n_i> >= b_i for all i}.

    Every ambient-many linearly independent constraints are intersected and
    the feasible intersection points kept.

    Raises:
        UnboundedPolyhedron: If the normals do not positively span the space.
    """
    normals = tuple(tuple(int(x) for x in n) for n in normals)
    bounds = tuple(exact.to_fraction(b) for b in bounds)
    if not _positively_spanning(normals):
        raise UnboundedPolyhedron(f"normals {normals} do not positively span Q^{ambient}")
    ineq = tuple(zip(normals, bounds))
    found = set()
    for idx in itertools.combinations(range(len(normals)), ambient):
        sol = exact.solve([normals[i] for i in idx], [bounds[i] for i in idx])
        if sol is None:
            continue
        if all(exact.dot(sol, n) >= b for n, b in ineq):
            found.add(sol)
    if not found:
        return None
    return QPolytope(tuple(found), ambient, ineq)


def section_polyhedron(fan: Fan, D: TDivisor) -> QPolytope | None:
    """{u in M_Q : <u, r> >= -a_r for every ray r}; None when empty."""
    D.check_fan(fan)
    return polyhedron(fan.rays, [-a for a in D], fan.dim)


def divisor_of(fan: Fan, P: QPolytope) -> TDivisor:
    """The divisor with a_r = -min <P, r>.

    Raises:
        NonIntegralVertex: If P is not a lattice polytope.
    """
    for v in P.vertices:
        if any(x.denominator != 1 for x in v):
            raise NonIntegralVertex(v)
    return TDivisor(tuple(-int(P.minimum(r)) for r in fan.rays))


def face_of(fan: Fan, D: TDivisor, cone: Cone) -> QPolytope:
    """The face of P(D) on which every ray of `cone` attains its minimum.

    Raises:
        NotNef: If D is not nef.
    """
    if not is_nef(fan, D):
        raise NotNef(D.coeffs)
    P = section_polyhedron(fan, D)
    verts = [v for v in P.vertices
             if all(exact.dot(v, fan.rays[i]) == -D[i] for i in cone.ray_indices)]
    tight = tuple((fan.rays[i], Fraction(-D[i])) for i in cone.ray_indices)
    return QPolytope(tuple(verts), fan.dim, P.inequalities + tight
                     + tuple((tuple(-x for x in fan.rays[i]), Fraction(D[i]))
                             for i in cone.ray_indices))


def intersection(P: QPolytope, Q: QPolytope) -> QPolytope | None:
    """Honest set intersection of two polytopes known by inequalities."""
    if not P.inequalities or not Q.inequalities:
        raise ValueError("intersection needs polytopes with inequality data")
    ineq = P.inequalities + Q.inequalities
    return polyhedron([n for n, _ in ineq], [b for _, b in ineq], P.ambient)


def minkowski_sum(P: QPolytope, Q: QPolytope) -> QPolytope:
    """P + Q as the hull of pairwise vertex sums.

    Args:
        P: Polytope in M_Q.
        Q: Polytope in the same space.

    Returns:
        The sum with redundant points pruned.
    """
    sums = [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    return QPolytope.from_points(sums, P.ambient)


def cap_is_honest(fan: Fan, D: TDivisor, E: TDivisor) -> bool:
    """True when the virtual intersection of P(D), P(E) is their set intersection."""
    M = meet(D, E)
    P = section_polyhedron(fan, M)
    if P is None or not P.is_lattice:
        return False
    return divisor_of(fan, P) == M


def scaled_cap_stabilizes(fan: Fan, D: TDivisor, E: TDivisor, kmax: int | None = None,
                          mode: str = "ample") -> int | None:
    """Smallest k <= kmax at which the virtual cap of the k-th members is honest.

    With mode "ample" the k-th members are D + (k-1)A and E + (k-1)A for the
    reference ample divisor A; with mode "dilate" they are kD and kE.

    Raises:
        NotNef: If either input is not nef.
    """
    for X in (D, E):
        if not is_nef(fan, X):
            raise NotNef(X.coeffs)
    kmax = toric.CAP_STABILIZE_KMAX if kmax is None else kmax
    A = reference_ample(fan)
    for k in range(1, kmax + 1):
        if mode == "ample":
            Dk, Ek = D + (k - 1) * A, E + (k - 1) * A
        elif mode == "dilate":
            Dk, Ek = k * D, k * E
        else:
            raise ValueError(mode)
        if cap_is_honest(fan, Dk, Ek):
            logger.debug("cap of %s and %s honest at k=%d (%s)", D, E, k, mode)
            return k
    return None
