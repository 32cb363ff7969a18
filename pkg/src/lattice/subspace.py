"""Linear subspaces of Q^r stored by their canonical (RREF) basis."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from lattice import exact


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient.

    The basis is the list of nonzero RREF rows, so two equal subspaces compare
    and hash equal.
    """
    ambient: int
    basis: tuple[tuple[Fraction, ...], ...] = ()
    pivots: tuple[int, ...] = ()

    @classmethod
    def span(cls, rows: Iterable[Sequence], ambient: int) -> "Subspace":
        rows = [tuple(exact.to_fraction(a) for a in r) for r in rows]
        for r in rows:
            if len(r) != ambient:
                raise ValueError(f"vector of length {len(r)} in Q^{ambient}")
        basis, pivots = exact.rref(rows, ambient)
        return cls(ambient, basis, pivots)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span([[int(i == j) for j in range(ambient)] for i in range(ambient)], ambient)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient

    def contains_vector(self, vector: Sequence) -> bool:
        return self.coordinates(vector) is not None

    def contains(self, other: "Subspace") -> bool:
        """True when `other` is a subspace of self."""
        if other.dim > self.dim:
            return False
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __lt__(self, other: "Subspace") -> bool:
        return self != other and other.contains(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient)

    def __and__(self, other: "Subspace") -> "Subspace":
        if self.is_zero or other.is_zero:
            return Subspace.zero(self.ambient)
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        return _intersect(self, other)

    def coordinates(self, vector: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients of `vector` in the RREF basis, or None if it is not in the span."""
        v = [exact.to_fraction(a) for a in vector]
        coeffs = tuple(v[p] for p in self.pivots)
        for c in range(self.ambient):
            if sum(coeffs[i] * self.basis[i][c] for i in range(self.dim)) != v[c]:
                return None
        return coeffs

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(a) for a in r) + ")" for r in self.basis)
        return f"Subspace(Q^{self.ambient}: [{rows}])"


@lru_cache(maxsize=4096)
def _intersect(a: Subspace, b: Subspace) -> Subspace:
    # columns: basis of a, then minus basis of b; kernel vectors give common elements
    k, l = a.dim, b.dim
    rows = [[a.basis[i][c] for i in range(k)] + [-b.basis[j][c] for j in range(l)]
            for c in range(a.ambient)]
    vectors = [tuple(sum(sol[i] * a.basis[i][c] for i in range(k)) for c in range(a.ambient))
               for sol in exact.nullspace(rows, k + l)]
    return Subspace.span(vectors, a.ambient)
