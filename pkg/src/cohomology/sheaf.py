"""Toric reflexive sheaves given by Klyachko data, and their chart sections."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from decoration.filtration import KlyachkoFiltration, RayFiltration
from decoration.weil import WeilDecoration, klyachko_filtrations
from divisors.divisor import TDivisor
from lattice.errors import FanMismatch
from lattice.fan import Cone, Fan
from lattice.subspace import Subspace


@dataclass(frozen=True)
class ToricSheafData:
    """Rank plus one descending filtration of E = Q^rank per ray."""
    rank: int
    filtration: KlyachkoFiltration

    @classmethod
    def from_decoration(cls, dec: WeilDecoration) -> "ToricSheafData":
        return cls(dec.ambient_dim, klyachko_filtrations(dec))

    @classmethod
    def line_bundle(cls, D: TDivisor) -> "ToricSheafData":
        E = Subspace.full(1)
        rays = tuple(RayFiltration(((a, E),)) for a in D)
        return cls(1, KlyachkoFiltration(1, rays))

    @property
    def n_rays(self) -> int:
        return self.filtration.n_rays

    @property
    def mu(self) -> tuple[int, ...]:
        return self.filtration.mu

    @property
    def lam(self) -> tuple[int, ...]:
        return self.filtration.lam

    def check_fan(self, fan: Fan) -> "ToricSheafData":
        if self.n_rays != fan.n_rays:
            raise FanMismatch(fan.n_rays, self.n_rays)
        return self

    def twist(self, D: TDivisor | Sequence[int]) -> "ToricSheafData":
        """E(D): every ray filtration shifted up by a_r."""
        coeffs = tuple(D)
        if len(coeffs) != self.n_rays:
            raise FanMismatch(self.n_rays, len(coeffs))
        return ToricSheafData(self.rank, self.filtration.shifted(coeffs))

    def direct_sum(self, other: "ToricSheafData") -> "ToricSheafData":
        if other.n_rays != self.n_rays:
            raise FanMismatch(self.n_rays, other.n_rays)
        r = self.rank + other.rank
        rays = []
        for f, g in zip(self.filtration.rays, other.filtration.rays):
            levels = sorted({l for l, _ in f.jumps} | {l for l, _ in g.jumps}
                            | {min(f.mu, g.mu)})
            pairs = []
            for l in levels:
                rows = [list(v) + [0] * other.rank for v in f.at(l).basis]
                rows += [[0] * self.rank + list(v) for v in g.at(l).basis]
                pairs.append((l, Subspace.span(rows, r)))
            rays.append(RayFiltration.from_levels(pairs, r))
        return ToricSheafData(r, KlyachkoFiltration(r, tuple(rays)))

    def ray_spaces(self, fan: Fan, m: Sequence[int]) -> tuple[Subspace, ...]:
        """E_r^{-<m, r>} for every ray r."""
        levels = -(fan.ray_matrix @ np.asarray(m, dtype=np.int64))
        return tuple(self.filtration.at(i, int(l)) for i, l in enumerate(levels))


def sections_from_spaces(spaces: Sequence[Subspace], cone: Cone, rank: int) -> Subspace:
    V = Subspace.full(rank)
    for i in cone.ray_indices:
        V = V & spaces[i]
        if V.is_zero:
            break
    return V


def chart_sections(fan: Fan, sheaf: ToricSheafData, cone: Cone, m: Sequence[int]) -> Subspace:
    """Degree-m sections over the affine chart of `cone`: the intersection of E_r^{-<m, r>}."""
    sheaf.check_fan(fan)
    return sections_from_spaces(sheaf.ray_spaces(fan, m), cone, sheaf.rank)
