"""Line bundle cohomology from the fan-support subcomplex.

In degree m, h^i(O(D)) is the dimension of the reduced cohomology H~^{i-1}
of the subcomplex of the fan spanned by the rays with <m, r> < -a_r.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from cohomology.cech import GradedCohomology, HVector, scan
from divisors.divisor import TDivisor
from lattice import exact
from lattice.fan import Fan


@lru_cache(maxsize=4096)
def reduced_cohomology(fan: Fan, support: frozenset[int]) -> tuple[int, ...]:
    """dim H~^j for j = -1 .. d-1 of the subcomplex induced on `support`.

    The augmented cochain complex starts with the empty face, so the empty
    subcomplex has H~^{-1} of dimension 1.
    """
    d = fan.dim
    faces = [[()]]
    for k in range(1, d + 1):
        faces.append([c.ray_indices for c in fan.cones
                      if c.dim == k and support.issuperset(c.ray_indices)])
    ranks = []
    for k in range(d):
        src, dst = faces[k], faces[k + 1]
        if not src or not dst:
            ranks.append(0)
            continue
        pos = {f: i for i, f in enumerate(dst)}
        rows = []
        for f in src:
            row = [0] * len(dst)
            for g in dst:
                if set(f).issubset(g):
                    missing = next(t for t, v in enumerate(g) if v not in f)
                    row[pos[g]] = -1 if missing % 2 else 1
            rows.append(row)
        ranks.append(exact.rank(rows, len(dst)))
    return tuple(len(faces[k]) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(d + 1))


def support_of(fan: Fan, D: TDivisor, m: Sequence[int]) -> frozenset[int]:
    pairing = fan.ray_matrix @ np.asarray(m, dtype=np.int64)
    return frozenset(i for i in range(fan.n_rays) if pairing[i] < -D[i])


def line_bundle_cohomology_support(fan: Fan, D: TDivisor, m: Sequence[int]) -> HVector:
    """(h^0, ..., h^d) of O(D) in degree m."""
    D.check_fan(fan)
    return reduced_cohomology(fan, support_of(fan, D, m))


def degree_evaluator(fan: Fan, D: TDivisor, engine: str = "support") -> Callable[[Sequence[int]], HVector]:
    """A function m -> (h^0, ..., h^d) of O(D) computed by the named engine.

    Raises:
        DimensionUnsupported: For the polytope engine off surfaces.
        ValueError: If the engine name is not recognized.
    """
    D.check_fan(fan)
    if engine == "support":
        return lambda m: line_bundle_cohomology_support(fan, D, m)
    elif engine == "polytope":
        from cohomology.polytope_difference import PolytopeDifference
        return PolytopeDifference.for_divisor(fan, D).cohomology
    elif engine == "cech":
        from cohomology.cech import cech_cohomology
        from cohomology.sheaf import ToricSheafData
        sheaf = ToricSheafData.line_bundle(D)
        return lambda m: cech_cohomology(fan, sheaf, m)
    raise ValueError(f"unknown engine {engine!r}")


def line_bundle_cohomology(fan: Fan, D: TDivisor, engine: str = "support") -> GradedCohomology:
    """Scans O(D) with the support or the polytope-difference engine."""
    return scan(fan, D.coeffs, D.coeffs, degree_evaluator(fan, D, engine))


def total_cohomology(fan: Fan, D: TDivisor, engine: str = "support") -> HVector:
    return line_bundle_cohomology(fan, D, engine).totals()
