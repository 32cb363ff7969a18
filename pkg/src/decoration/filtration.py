"""Descending per-ray filtrations of E (Klyachko data)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from lattice.errors import SchemaError
from lattice.subspace import Subspace


@dataclass(frozen=True)
class RayFiltration:
    """E^l for one ray, stored by its jumps.

    `jumps` is a list of (level, V) with strictly increasing levels and
    strictly decreasing nonzero subspaces, the first being E. E^l is V_j for
    the smallest j with level_j >= l, and 0 above the last level.
    """
    jumps: tuple[tuple[int, Subspace], ...]

    @classmethod
    def from_levels(cls, pairs: Sequence[tuple[int, Subspace]], rank: int) -> "RayFiltration":
        """Canonical form of a list of (level, E^level) pairs.

        Raises:
            SchemaError: If the chain is not descending, or does not start at E.
        """
        pairs = sorted(((int(l), V) for l, V in pairs), key=lambda p: p[0])
        if not pairs:
            raise SchemaError("a filtration needs at least one jump")
        levels = [l for l, _ in pairs]
        if len(set(levels)) != len(levels):
            raise SchemaError(f"repeated filtration level in {levels}")
        if not pairs[0][1].is_full or pairs[0][1].ambient != rank:
            raise SchemaError(f"filtration must start with E = Q^{rank}")
        for (l1, V1), (l2, V2) in zip(pairs, pairs[1:]):
            if not V1.contains(V2):
                raise SchemaError(f"filtration not descending between levels {l1} and {l2}")
        kept = [(l, V) for k, (l, V) in enumerate(pairs)
                if not V.is_zero and (k + 1 == len(pairs) or pairs[k + 1][1] != V)]
        if not kept:
            raise SchemaError("filtration is zero at every level")
        return cls(tuple(kept))

    @property
    def rank(self) -> int:
        return self.jumps[0][1].ambient

    @property
    def mu(self) -> int:
        """Last level at which the filtration is all of E."""
        return self.jumps[0][0]

    @property
    def lam(self) -> int:
        """Last level at which the filtration is nonzero."""
        return self.jumps[-1][0]

    def at(self, level: int) -> Subspace:
        for l, V in self.jumps:
            if l >= level:
                return V
        return Subspace.zero(self.rank)

    def shifted(self, a: int) -> "RayFiltration":
        return RayFiltration(tuple((l + a, V) for l, V in self.jumps))


@dataclass(frozen=True)
class KlyachkoFiltration:
    rank: int
    rays: tuple[RayFiltration, ...]

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def mu(self) -> tuple[int, ...]:
        return tuple(f.mu for f in self.rays)

    @property
    def lam(self) -> tuple[int, ...]:
        return tuple(f.lam for f in self.rays)

    def at(self, ray: int, level: int) -> Subspace:
        return self.rays[ray].at(level)

    def shifted(self, coeffs: Sequence[int]) -> "KlyachkoFiltration":
        return KlyachkoFiltration(self.rank, tuple(f.shifted(a) for f, a in zip(self.rays, coeffs)))
