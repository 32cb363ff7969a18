"""Surface line bundle cohomology from the difference of two nef polygons.

For D = D_plus - D_minus with both parts nef, h^k(O(D))_m is the reduced
cohomology H~^{k-1} of N_minus minus (N_plus - m), where N_* are the section
polygons. The set is cut into cells by the boundary lines of both polygons;
its homotopy type is read off the order complex of the cells it contains.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from divisors.divisor import TDivisor, is_nef, nef_split
from divisors.polytope import section_polyhedron
from lattice.errors import DimensionUnsupported, NotNef
from lattice.fan import Fan

logger = logging.getLogger(__name__)

Sign = tuple[int, ...]


def _canonical(normal: Sequence[int], value: int) -> tuple[tuple[int, int], int, int]:
    """Line <u, normal> = value with the normal's first nonzero entry made positive.

    Returns the canonical (normal, value) pair and the flip sign s such that
    <u, normal> - value = s * (<u, n> - c).
    """
    s = 1 if (normal[0] > 0 or (normal[0] == 0 and normal[1] > 0)) else -1
    return (s * normal[0], s * normal[1]), s * value, s


class _Arrangement:
    """Cells of a line arrangement lying inside a convex polygon.

    Each cell is stored by its sign vector against all lines.
    """

    def __init__(self, lines: list[tuple[tuple[int, int], int]],
                 inside: list[tuple[int, int]]):
        self.lines = lines
        self.inside = inside          # (line index, required sign) constraints
        self.vertices: list[Sign] = []
        self.edges: list[Sign] = []
        self.faces: list[Sign] = []
        self._build()

    def _signs(self, p: tuple[Fraction, Fraction]) -> Sign:
        out = []
        for (nx, ny), c in self.lines:
            v = nx * p[0] + ny * p[1] - c
            out.append((v > 0) - (v < 0))
        return tuple(out)

    def _ok(self, sign: Sign) -> bool:
        return all(sign[i] != -s for i, s in self.inside)

    def _build(self):
        points: dict[tuple[Fraction, Fraction], Sign] = {}
        for (i, ((ax, ay), ac)), (j, ((bx, by), bc)) in combinations(enumerate(self.lines), 2):
            det = ax * by - ay * bx
            if det == 0:
                continue
            p = (Fraction(ac * by - bc * ay, det), Fraction(ax * bc - bx * ac, det))
            if p in points:
                continue
            sign = self._signs(p)
            if self._ok(sign):
                points[p] = sign
        self.vertices = sorted(set(points.values()))

        edges = set()
        for k, ((nx, ny), _) in enumerate(self.lines):
            on = sorted((p for p, s in points.items() if s[k] == 0),
                        key=lambda p: -ny * p[0] + nx * p[1])
            for p, q in zip(on, on[1:]):
                mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
                sign = self._signs(mid)
                if self._ok(sign):
                    edges.add(sign)
        self.edges = sorted(edges)

        faces = set()
        for sign in self.edges:
            k = sign.index(0)
            for flip in (1, -1):
                face = sign[:k] + (flip,) + sign[k + 1:]
                if self._ok(face):
                    faces.add(face)
        self.faces = sorted(faces)


def _below(x: Sign, y: Sign) -> bool:
    return all(a == 0 or a == b for a, b in zip(x, y))


def order_complex_cohomology(vertices: list[Sign], edges: list[Sign], faces: list[Sign]) -> tuple[int, int, int]:
    """(dim H~^{-1}, dim H~^0, dim H~^1) of a planar union of arrangement cells."""
    cells = vertices + edges + faces
    if not cells:
        return 1, 0, 0
    index = {c: i for i, c in enumerate(cells)}
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pairs = 0
    ve = [(v, e) for v in vertices for e in edges if _below(v, e)]
    vf = [(v, f) for v in vertices for f in faces if _below(v, f)]
    ef = {(e, f) for e in edges for f in faces if _below(e, f)}
    for x, y in ve + vf + list(ef):
        pairs += 1
        parent[find(index[x])] = find(index[y])
    triples = sum(1 for v, e in ve for f in faces if (e, f) in ef and _below(v, f))
    chi = len(cells) - pairs + triples
    comps = len({find(i) for i in range(len(cells))})
    return 0, comps - 1, comps - chi


@dataclass
class PolytopeDifference:
    """Degree-wise engine for O(D_plus - D_minus) on a complete smooth surface."""
    fan: Fan
    d_plus: TDivisor
    d_minus: TDivisor

    def __post_init__(self):
        if self.fan.dim != 2:
            raise DimensionUnsupported(self.fan.dim)
        for X in (self.d_plus, self.d_minus):
            if not is_nef(self.fan, X):
                raise NotNef(X.coeffs)
        self._minus_vertices = section_polyhedron(self.fan, self.d_minus).vertices
        self._plus_vertices = section_polyhedron(self.fan, self.d_plus).vertices

    @classmethod
    def for_divisor(cls, fan: Fan, D: TDivisor) -> "PolytopeDifference":
        if fan.dim != 2:
            raise DimensionUnsupported(fan.dim)
        plus, minus = nef_split(fan, D)
        return cls(fan, plus, minus)

    def _in_shifted_plus(self, p, m) -> bool:
        return all(r[0] * p[0] + r[1] * p[1] >= -a - (r[0] * m[0] + r[1] * m[1])
                   for r, a in zip(self.fan.rays, self.d_plus))

    def _separated(self, m) -> bool:
        for r in self.fan.rays:
            minus = [r[0] * p[0] + r[1] * p[1] for p in self._minus_vertices]
            plus = [r[0] * (p[0] - m[0]) + r[1] * (p[1] - m[1]) for p in self._plus_vertices]
            if max(minus) < min(plus) or max(plus) < min(minus):
                return True
        return False

    def cohomology(self, m: Sequence[int]) -> tuple[int, int, int]:
        """(h^0, h^1, h^2) of O(D_plus - D_minus) in degree m."""
        m = tuple(int(x) for x in m)
        if all(self._in_shifted_plus(p, m) for p in self._minus_vertices):
            return 1, 0, 0
        if self._separated(m):
            return 0, 0, 0

        lines: list[tuple[tuple[int, int], int]] = []
        position: dict[tuple[tuple[int, int], int], int] = {}

        def constraint(normal, value):
            key_n, key_c, s = _canonical(normal, value)
            key = (key_n, key_c)
            if key not in position:
                position[key] = len(lines)
                lines.append(key)
            return position[key], s

        inside = [constraint(r, -a) for r, a in zip(self.fan.rays, self.d_minus)]
        shifted = [constraint(r, -a - (r[0] * m[0] + r[1] * m[1]))
                   for r, a in zip(self.fan.rays, self.d_plus)]
        arr = _Arrangement(lines, inside)

        def outside_plus(sign: Sign) -> bool:
            return any(sign[i] == -s for i, s in shifted)

        h = order_complex_cohomology([c for c in arr.vertices if outside_plus(c)],
                                     [c for c in arr.edges if outside_plus(c)],
                                     [c for c in arr.faces if outside_plus(c)])
        logger.debug("polytope difference at m=%s: %d/%d/%d cells -> %s", m,
                     len(arr.vertices), len(arr.edges), len(arr.faces), h)
        return h


def polytope_difference_cohomology(fan: Fan, d_plus: TDivisor, d_minus: TDivisor,
                                   m: Sequence[int]) -> tuple[int, int, int]:
    """h^k(O(D_plus - D_minus))_m via the reduced cohomology of the polygon difference.

    Raises:
        DimensionUnsupported: If the fan is not 2-dimensional.
        NotNef: If either part is not nef.
    """
    return PolytopeDifference(fan, d_plus, d_minus).cohomology(m)
