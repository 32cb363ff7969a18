"""Cech cohomology over the cover by maximal-cone charts, degree by degree.

Sections over an intersection of charts are the chart sections of the
common face; ranks are exact over Q. Results are cached on the tuple of
per-ray subspaces, which is all a degree contributes.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from cohomology.sheaf import ToricSheafData, sections_from_spaces
from configs.toric import toric
from lattice import exact
from lattice.errors import NonTerminatingScan
from lattice.fan import Cone, Fan
from lattice.subspace import Subspace

logger = logging.getLogger(__name__)

Degree = tuple[int, ...]
HVector = tuple[int, ...]


@dataclass
class GradedCohomology:
    """h^i(m) on a finite scan region; degrees absent from `degrees` are zero."""
    dim: int
    degrees: dict[Degree, HVector] = field(default_factory=dict)
    region: tuple[Degree, ...] = ()

    def at(self, m: Sequence[int]) -> HVector:
        return self.degrees.get(tuple(m), (0,) * (self.dim + 1))

    def totals(self) -> HVector:
        out = [0] * (self.dim + 1)
        for h in self.degrees.values():
            for i, x in enumerate(h):
                out[i] += x
        return tuple(out)

    @property
    def is_acyclic(self) -> bool:
        return all(x == 0 for x in self.totals()[1:])

    @property
    def is_immaculate(self) -> bool:
        return all(x == 0 for x in self.totals())


@lru_cache(maxsize=8192)
def _cech_from_spaces(fan: Fan, spaces: tuple[Subspace, ...], rank: int) -> HVector:
    d = fan.dim
    n_max = len(fan.max_cones)
    cones = [set(c) for c in fan.max_cones]
    # C^p is indexed by (p+1)-subsets of maximal cones; only p <= d+1 matter
    groups: list[list[tuple[tuple[int, ...], Subspace]]] = []
    for p in range(d + 2):
        terms = []
        for idx in itertools.combinations(range(n_max), p + 1):
            face = set.intersection(*(cones[i] for i in idx))
            V = sections_from_spaces(spaces, Cone(tuple(face)), rank)
            if not V.is_zero:
                terms.append((idx, V))
        groups.append(terms)
    dims = [sum(V.dim for _, V in terms) for terms in groups]

    ranks = []
    for p in range(d + 1):
        src, dst = groups[p], groups[p + 1]
        if not src or not dst:
            ranks.append(0)
            continue
        dst_pos = {}
        offset = 0
        for J, W in dst:
            dst_pos[J] = (offset, W)
            offset += W.dim
        columns = []
        for I, V in src:
            for v in V.basis:
                col = [0] * offset
                for J, (off, W) in dst_pos.items():
                    if not set(I).issubset(J):
                        continue
                    k = next(k for k, j in enumerate(J) if j not in I)
                    coords = W.coordinates(v)
                    sign = -1 if k % 2 else 1
                    for t, c in enumerate(coords):
                        col[off + t] += sign * c
                columns.append(col)
        ranks.append(exact.rank(columns, offset))
    h = tuple(dims[p] - ranks[p] - (ranks[p - 1] if p else 0) for p in range(d + 1))
    return h


def cech_cohomology(fan: Fan, sheaf: ToricSheafData, m: Sequence[int]) -> HVector:
    """(h^0, ..., h^d) of the sheaf in degree m."""
    sheaf.check_fan(fan)
    return _cech_from_spaces(fan, sheaf.ray_spaces(fan, m), sheaf.rank)


def _initial_box(fan: Fan, mu: Sequence[int], lam: Sequence[int]) -> tuple[list[int], list[int]]:
    points = []
    for k, sigma in enumerate(fan.max_cones):
        inv_t = fan.cone_inverse(k).T
        for levels in itertools.product(*((mu[i] - 1, lam[i] + 1) for i in sigma)):
            points.append(-(inv_t @ np.array(levels, dtype=np.int64)))
    pts = np.array(points)
    return pts.min(axis=0).tolist(), pts.max(axis=0).tolist()


def _box(lo: Sequence[int], hi: Sequence[int]) -> Iterable[Degree]:
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def scan(fan: Fan, mu: Sequence[int], lam: Sequence[int],
         evaluate: Callable[[Degree], HVector]) -> GradedCohomology:
    """Evaluates a degree-wise engine on a box grown until it is quiet.

    The starting box holds every degree pinned by the jump levels mu-1 and
    lam+1 on some maximal cone. Shells are added until SCAN_QUIET_SHELLS
    consecutive shells carry no cohomology.

    Raises:
        NonTerminatingScan: If SCAN_SHELL_CAP shells are added without that happening.
    """
    lo, hi = _initial_box(fan, mu, lam)
    result = GradedCohomology(fan.dim)
    region = []
    for m in _box(lo, hi):
        region.append(m)
        h = evaluate(m)
        if any(h):
            result.degrees[m] = h
    quiet = 0
    for s in range(1, toric.SCAN_SHELL_CAP + 1):
        new_lo = [a - s for a in lo]
        new_hi = [b + s for b in hi]
        shell_total = 0
        for m in _box(new_lo, new_hi):
            if all(a - s < x < b + s for x, a, b in zip(m, lo, hi)):
                continue
            region.append(m)
            h = evaluate(m)
            if any(h):
                result.degrees[m] = h
                shell_total += sum(h)
        quiet = quiet + 1 if shell_total == 0 else 0
        if quiet >= toric.SCAN_QUIET_SHELLS:
            result.region = tuple(region)
            logger.info("scan region: %d degrees, %d shells", len(region), s)
            return result
    raise NonTerminatingScan(toric.SCAN_SHELL_CAP)


def graded_cohomology(fan: Fan, sheaf: ToricSheafData, engine: str | None = None) -> GradedCohomology:
    """Cohomology of the sheaf in every degree of its scan region.

    The support and polytope engines only apply to line bundles.
    """
    sheaf.check_fan(fan)
    engine = engine or toric.DEFAULT_ENGINE
    if engine == "cech":
        return scan(fan, sheaf.mu, sheaf.lam, lambda m: cech_cohomology(fan, sheaf, m))
    if sheaf.rank != 1:
        raise ValueError(f"engine {engine!r} needs a line bundle, got rank {sheaf.rank}")
    from cohomology.support import line_bundle_cohomology
    from divisors.divisor import TDivisor
    return line_bundle_cohomology(fan, TDivisor(sheaf.mu), engine)


def scan_region(fan: Fan, sheaf: ToricSheafData) -> tuple[Degree, ...]:
    return graded_cohomology(fan, sheaf).region


def is_acyclic(fan: Fan, sheaf: ToricSheafData, engine: str | None = None) -> bool:
    return graded_cohomology(fan, sheaf, engine).is_acyclic


def is_immaculate(fan: Fan, sheaf: ToricSheafData, engine: str | None = None) -> bool:
    return graded_cohomology(fan, sheaf, engine).is_immaculate
