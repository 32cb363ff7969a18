"""Smooth complete fans: validation, point location and walls."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from lattice import lp
from lattice.errors import (DuplicateRay, IncompleteFan, NonPrimitiveRay,
                            NonSimplicialCone, NonSmoothCone, OverlappingCones,
                            PointOutsideCone, SchemaError, ToricInputError)
from lattice.exact import primitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Cone:
    """A cone of a fan, given by the sorted indices of its rays."""
    ray_indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ray_indices", tuple(sorted(self.ray_indices)))

    @property
    def dim(self) -> int:
        return len(self.ray_indices)

    def __iter__(self):
        return iter(self.ray_indices)

    def __len__(self):
        return len(self.ray_indices)

    def __contains__(self, ray: int) -> bool:
        return ray in self.ray_indices


@dataclass(frozen=True)
class Wall:
    """A codimension-one cone shared by two maximal cones.

    `relation` is the vector in Z^{rays} encoding u1 + u2 + sum c_r r = 0,
    with +1 on the two opposite rays `opposite`.
    """
    ray_indices: tuple[int, ...]
    adjacent: tuple[int, int]
    opposite: tuple[int, int]
    relation: tuple[int, ...]


@dataclass
class FanDiagnostics:
    smooth: bool
    complete: bool
    projective: bool
    issues: list[ToricInputError] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def raise_for_errors(self):
        if self.issues:
            raise self.issues[0]

    def to_dict(self) -> dict:
        return {
            "smooth": self.smooth,
            "complete": self.complete,
            "projective": self.projective,
            "issues": [{"error": type(e).__name__, "message": str(e)} for e in self.issues],
        }


@dataclass(frozen=True)
class Fan:
    """A simplicial fan in N = Z^dim.

    Construction stores the data as given; `Fan.validated` (and every caller
    that needs geometry) runs `validate_fan` first.
    """
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    projective: bool = True
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones",
                           tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @classmethod
    def validated(cls, dim: int, rays: Sequence[Sequence[int]],
                  max_cones: Sequence[Sequence[int]], projective: bool = True,
                  name: str = "") -> "Fan":
        """Builds a fan and raises the first validation error, if any."""
        fan = cls(dim, tuple(map(tuple, rays)), tuple(map(tuple, max_cones)), projective, name)
        validate_fan(fan).raise_for_errors()
        return fan

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def ray_matrix(self) -> np.ndarray:
        return np.array(self.rays, dtype=np.int64).reshape(self.n_rays, self.dim)

    @cached_property
    def cones(self) -> tuple[Cone, ...]:
        """All cones of the fan (faces of maximal cones), zero cone included."""
        faces = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                faces.update(combinations(c, k))
        return tuple(Cone(f) for f in sorted(faces, key=lambda f: (len(f), f)))

    @cached_property
    def face_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(c.ray_indices for c in self.cones)

    def is_face(self, ray_indices) -> bool:
        return tuple(sorted(ray_indices)) in self.face_set

    @cached_property
    def _inverses(self) -> tuple[np.ndarray, ...]:
        out = []
        for c in self.max_cones:
            inv = Matrix([list(self.rays[i]) for i in c]).T.inv()
            out.append(np.array([[int(inv[i, j]) for j in range(self.dim)]
                                 for i in range(self.dim)], dtype=np.int64))
        return tuple(out)

    def cone_inverse(self, index: int) -> np.ndarray:
        """Integer inverse of the ray matrix (rays as columns) of a maximal cone."""
        return self._inverses[index]

    def containing_max_cone(self, cone: Cone) -> int:
        """Index of the first maximal cone having `cone` as a face."""
        rs = set(cone.ray_indices)
        for k, c in enumerate(self.max_cones):
            if rs.issubset(c):
                return k
        raise ValueError(f"{cone.ray_indices} is not a cone of the fan")

    def pi(self, vector: Sequence[int]) -> tuple[int, ...]:
        """The map Z^{rays} -> N sending e_r to the ray r."""
        return tuple(int(x) for x in np.asarray(vector, dtype=np.int64) @ self.ray_matrix)

    @cached_property
    def walls(self) -> tuple[Wall, ...]:
        return tuple(walls(self))


def _cone_issue(fan: Fan, cone: tuple[int, ...]) -> ToricInputError | None:
    d = fan.dim
    vecs = [list(fan.rays[i]) for i in cone]
    if len(cone) > d or Matrix(vecs).rank() < len(cone):
        return NonSimplicialCone(cone)
    if len(cone) < d:
        snf = smith_normal_form(Matrix(vecs), domain=ZZ)
        if any(abs(snf[i, i]) != 1 for i in range(len(cone))):
            return NonSmoothCone(cone)
        return IncompleteFan(f"maximal cone {cone} is not {d}-dimensional", cone)
    det = Matrix(vecs).det()
    if abs(det) != 1:
        return NonSmoothCone(cone, int(det))
    return None


def _overlap(fan: Fan, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True when the two simplicial cones meet outside their common face."""
    own = [i for i in a if i not in b]
    if not own:
        return False
    A = [[fan.rays[i][r] for i in a] + [-fan.rays[j][r] for j in b] for r in range(fan.dim)]
    A.append([int(i in own) for i in a] + [0] * len(b))
    return lp.find_nonnegative_solution(A, [0] * fan.dim + [1]) is not None


def validate_fan(fan: Fan) -> FanDiagnostics:
    """Checks a fan for primitivity, smoothness, the fan property and completeness.

    Completeness is decided by the pseudo-manifold test: every (d-1)-face of a
    maximal cone lies in exactly two maximal cones. Projectivity is taken from
    the input flag.

    Args:
        fan: The fan to check.

    Returns:
        A FanDiagnostics with every problem found, in discovery order.

    Raises:
        SchemaError: If the raw data is structurally malformed.
    """
    d = fan.dim
    if d < 1 or not fan.rays:
        raise SchemaError("fan needs dim >= 1 and at least one ray")
    issues: list[ToricInputError] = []
    smooth = complete = True

    for i, r in enumerate(fan.rays):
        if len(r) != d:
            raise SchemaError(f"ray {i} has {len(r)} coordinates, expected {d}")
        if all(x == 0 for x in r) or primitive(r) != r:
            issues.append(NonPrimitiveRay(i, r))
    seen: dict[tuple[int, ...], int] = {}
    for i, r in enumerate(fan.rays):
        if r in seen:
            issues.append(DuplicateRay(seen[r], i))
        seen.setdefault(r, i)

    used = set()
    for c in fan.max_cones:
        if not c or any(not 0 <= i < fan.n_rays for i in c) or len(set(c)) != len(c):
            raise SchemaError(f"maximal cone {c} has bad ray indices")
        used.update(c)
    for i in range(fan.n_rays):
        if i not in used:
            raise SchemaError(f"ray {i} lies in no maximal cone")
    if issues:
        return FanDiagnostics(False, False, fan.projective, issues)

    for c in fan.max_cones:
        issue = _cone_issue(fan, c)
        if issue is not None:
            issues.append(issue)
            if isinstance(issue, IncompleteFan):
                complete = False
            else:
                smooth = False
    if issues:
        return FanDiagnostics(smooth, complete, fan.projective, issues)

    for a, b in combinations(fan.max_cones, 2):
        if _overlap(fan, a, b):
            issues.append(OverlappingCones(a, b))
    if issues:
        return FanDiagnostics(smooth, False, fan.projective, issues)

    cofaces: dict[tuple[int, ...], int] = {}
    for c in fan.max_cones:
        for w in combinations(c, d - 1):
            cofaces[w] = cofaces.get(w, 0) + 1
    for w, count in sorted(cofaces.items()):
        if count != 2:
            complete = False
            issues.append(IncompleteFan(f"wall {w} has {count} maximal coface(s)", w))
    logger.debug("validated fan %s: smooth=%s complete=%s", fan.name or fan.rays, smooth, complete)
    return FanDiagnostics(smooth, complete, fan.projective, issues)


def locate(fan: Fan, p: Sequence[int]) -> Cone:
    """Returns the cone whose relative interior contains the lattice point p.

    Raises:
        IncompleteFan: If no maximal cone contains p.
    """
    p = np.asarray(p, dtype=np.int64)
    if not p.any():
        return Cone(())
    for k, c in enumerate(fan.max_cones):
        coords = fan.cone_inverse(k) @ p
        if (coords >= 0).all():
            return Cone(tuple(c[i] for i in range(len(c)) if coords[i] > 0))
    raise IncompleteFan(f"point {tuple(int(x) for x in p)} lies in no cone")


def cone_coords(fan: Fan, cone: Cone, p: Sequence[int]) -> tuple[int, ...]:
    """Expands p in the rays of `cone`; the coefficients follow cone.ray_indices.

    Raises:
        PointOutsideCone: If p is not a nonnegative combination of the cone's rays.
    """
    p = np.asarray(p, dtype=np.int64)
    if cone.dim == 0:
        if p.any():
            raise PointOutsideCone(cone.ray_indices, p.tolist())
        return ()
    k = fan.containing_max_cone(cone)
    sigma = fan.max_cones[k]
    coords = fan.cone_inverse(k) @ p
    out = []
    for pos, ray in enumerate(sigma):
        c = int(coords[pos])
        if ray in cone:
            if c < 0:
                raise PointOutsideCone(cone.ray_indices, p.tolist())
            out.append(c)
        elif c != 0:
            raise PointOutsideCone(cone.ray_indices, p.tolist())
    return tuple(out)


def walls(fan: Fan) -> list[Wall]:
    """Lists the walls of a smooth complete fan with their integer relations."""
    d = fan.dim
    owners: dict[tuple[int, ...], list[int]] = {}
    for k, c in enumerate(fan.max_cones):
        for w in combinations(c, d - 1):
            owners.setdefault(w, []).append(k)
    out = []
    for w in sorted(owners):
        ks = owners[w]
        if len(ks) != 2:
            raise IncompleteFan(f"wall {w} has {len(ks)} maximal coface(s)", w)
        k1, k2 = ks
        u1 = next(i for i in fan.max_cones[k1] if i not in w)
        u2 = next(i for i in fan.max_cones[k2] if i not in w)
        target = -(fan.ray_matrix[u1] + fan.ray_matrix[u2])
        coords = fan.cone_inverse(k1) @ target
        relation = [0] * fan.n_rays
        relation[u1] = relation[u2] = 1
        for pos, ray in enumerate(fan.max_cones[k1]):
            if ray == u1:
                if coords[pos] != 0:
                    raise NonSmoothCone(fan.max_cones[k1])
            else:
                relation[ray] = int(coords[pos])
        out.append(Wall(w, (k1, k2), (u1, u2), tuple(relation)))
    return out
