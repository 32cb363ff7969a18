"""Primitive collections, primitive relations and the extremal rays of the Mori cone."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from divisors.divisor import TDivisor, is_nef, local_vertex
from lattice import lp
from lattice.errors import (DegenerateConeError, FanMismatch, FocusNotInterior,
                            IncompleteFan, KernelCheckFailed, NotNef)
from lattice.fan import Cone, Fan, Wall, cone_coords, locate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimitiveCollection:
    """A minimal non-face together with its focus and primitive relation.

    `focus_coeffs` lists (ray, f_ray) pairs over the rays of the focus cone;
    `relation` is e_P - f(P) in Z^{rays}.
    """
    rays: tuple[int, ...]
    focus_cone: Cone = Cone(())
    focus_coeffs: tuple[tuple[int, int], ...] = ()
    relation: tuple[int, ...] = ()
    extremal: bool = False

    def incidence(self, n_rays: int) -> tuple[int, ...]:
        """e_P, the indicator vector of the collection."""
        return tuple(int(i in self.rays) for i in range(n_rays))

    def focus_weight(self, ray: int) -> int:
        return dict(self.focus_coeffs).get(ray, 0)


@dataclass(frozen=True)
class MoriCone:
    generators: tuple[PrimitiveCollection, ...]
    extremal_subset: tuple[int, ...]

    @property
    def extremal(self) -> tuple[PrimitiveCollection, ...]:
        return tuple(self.generators[i] for i in self.extremal_subset)


def primitive_collections(fan: Fan) -> list[PrimitiveCollection]:
    """All minimal non-faces of the fan's simplicial complex, without relation data.

    Candidates are tested by increasing size, and only when every proper
    subset is a face.
    """
    out = []
    for k in range(2, fan.dim + 2):
        for subset in combinations(range(fan.n_rays), k):
            if fan.is_face(subset):
                continue
            if all(fan.is_face(sub) for sub in combinations(subset, k - 1)):
                out.append(PrimitiveCollection(subset))
    return out


def focus(fan: Fan, rays: Sequence[int]) -> tuple[Cone, tuple[tuple[int, int], ...]]:
    """Locates the sum of the rays and expands it in its cone.

    Raises:
        FocusNotInterior: If the sum lies in no cone or an expansion coefficient vanishes.
    """
    total = fan.ray_matrix[list(rays)].sum(axis=0)
    try:
        cone = locate(fan, total)
    except IncompleteFan:
        raise FocusNotInterior(rays) from None
    coeffs = cone_coords(fan, cone, total)
    if any(c < 1 for c in coeffs):
        raise FocusNotInterior(rays)
    return cone, tuple(zip(cone.ray_indices, coeffs))


def primitive_relation(fan: Fan, rays: Sequence[int],
                       focus_coeffs: Sequence[tuple[int, int]] | None = None) -> tuple[int, ...]:
    """e_P - f(P), checked to lie in the kernel of pi.

    Raises:
        KernelCheckFailed: If sum R_r r is not zero.
    """
    if focus_coeffs is None:
        _, focus_coeffs = focus(fan, rays)
    rel = [int(i in rays) for i in range(fan.n_rays)]
    for ray, f in focus_coeffs:
        rel[ray] -= f
    if any(fan.pi(rel)):
        raise KernelCheckFailed(rel)
    return tuple(rel)


@lru_cache(maxsize=None)
def _extremal_flags(fan: Fan) -> tuple[PrimitiveCollection, ...]:
    filled = []
    for pc in primitive_collections(fan):
        cone, coeffs = focus(fan, pc.rays)
        filled.append(replace(pc, focus_cone=cone, focus_coeffs=coeffs,
                              relation=primitive_relation(fan, pc.rays, coeffs)))
    if not filled or all(not any(pc.relation) for pc in filled):
        raise DegenerateConeError(f"fan {fan.name or fan.rays} has no nonzero primitive relation")
    flagged = []
    for i, pc in enumerate(filled):
        others = [q.relation for j, q in enumerate(filled) if j != i]
        flagged.append(replace(pc, extremal=not lp.in_cone(pc.relation, others)))
    n_ext = sum(pc.extremal for pc in flagged)
    if n_ext == 0:
        raise DegenerateConeError("no extremal primitive relation found")
    if n_ext < fan.n_rays - fan.dim:
        logger.warning("only %d extremal relations for Picard rank %d", n_ext, fan.n_rays - fan.dim)
    logger.debug("%d primitive collections, %d extremal", len(flagged), n_ext)
    return tuple(flagged)


def collections(fan: Fan) -> list[PrimitiveCollection]:
    """Primitive collections with foci, relations and extremal flags filled in."""
    return list(_extremal_flags(fan))


def extremal_rays(fan: Fan) -> MoriCone:
    gens = _extremal_flags(fan)
    return MoriCone(gens, tuple(i for i, pc in enumerate(gens) if pc.extremal))


def pair(D: TDivisor | Sequence[int], relation: Sequence[int]) -> int:
    """The intersection pairing sum a_r R_r.

    Raises:
        FanMismatch: If the two vectors have different lengths.
    """
    coeffs = D.coeffs if isinstance(D, TDivisor) else tuple(D)
    if len(coeffs) != len(relation):
        raise FanMismatch(len(relation), len(coeffs))
    return sum(a * r for a, r in zip(coeffs, relation))


def wall_for_relation(fan: Fan, relation: Sequence[int]) -> Wall | None:
    """The wall whose relation is a positive rational multiple of `relation`, if any."""
    for w in fan.walls:
        ratio = None
        for a, b in zip(relation, w.relation):
            if (a == 0) != (b == 0):
                break
            if a == 0:
                continue
            q = Fraction(a, b)
            if q <= 0 or (ratio is not None and q != ratio):
                break
            ratio = q
        else:
            if ratio is not None:
                return w
    return None


def edge_length(fan: Fan, D: TDivisor, wall: Wall) -> int:
    """Lattice length of the edge of P(D) dual to `wall` (0 when it degenerates).

    Raises:
        NotNef: If D is not nef.
    """
    if not is_nef(fan, D):
        raise NotNef(D.coeffs)
    m1 = np.array(local_vertex(fan, D, wall.adjacent[0]))
    m2 = np.array(local_vertex(fan, D, wall.adjacent[1]))
    length = math.gcd(*(int(x) for x in m1 - m2))
    if length != pair(D, wall.relation):
        raise RuntimeError(f"edge length {length} of {D} along wall {wall.ray_indices} "
                           f"disagrees with the pairing {pair(D, wall.relation)}")
    return length
