"""Torus-invariant divisors and their lattice operations."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from lattice import lp
from lattice.errors import FanMismatch, NotProjective
from lattice.fan import Fan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TDivisor:
    """D = sum a_r D_r, one integer coefficient per ray of the ambient fan.

    Under the polytope isomorphism a divisor also stands for a virtual
    polytope, so meet/join double as virtual intersection/union.
    """
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "TDivisor":
        return cls((0,) * n)

    @classmethod
    def prime(cls, n: int, ray: int, coefficient: int = 1) -> "TDivisor":
        return cls(tuple(coefficient if i == ray else 0 for i in range(n)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def _other(self, other: "TDivisor") -> "TDivisor":
        if len(other) != len(self):
            raise FanMismatch(len(self), len(other))
        return other

    def __add__(self, other: "TDivisor") -> "TDivisor":
        other = self._other(other)
        return TDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TDivisor") -> "TDivisor":
        other = self._other(other)
        return TDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TDivisor":
        return TDivisor(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "TDivisor":
        return TDivisor(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def check_fan(self, fan: Fan) -> "TDivisor":
        if len(self) != fan.n_rays:
            raise FanMismatch(fan.n_rays, len(self))
        return self

    def __repr__(self) -> str:
        return f"TDivisor{self.coeffs}"


def meet(D: TDivisor, E: TDivisor) -> TDivisor:
    """Componentwise minimum (the largest divisor below both)."""
    E = D._other(E)
    return TDivisor(tuple(min(a, b) for a, b in zip(D, E)))


def join(D: TDivisor, E: TDivisor) -> TDivisor:
    """Componentwise maximum."""
    E = D._other(E)
    return TDivisor(tuple(max(a, b) for a, b in zip(D, E)))


def leq(D: TDivisor, E: TDivisor) -> bool:
    """Componentwise order, i.e. virtual inclusion P(D) in P(E)."""
    E = D._other(E)
    return all(a <= b for a, b in zip(D, E))


def meet_all(divisors: Iterable[TDivisor]) -> TDivisor:
    """Componentwise minimum of a nonempty family.

    Args:
        divisors: Divisors on one fan.

    Returns:
        The meet of all of them.

    Raises:
        IndexError: If the family is empty.
        FanMismatch: If two divisors have different lengths.
    """
    divisors = list(divisors)
    out = divisors[0]
    for D in divisors[1:]:
        out = meet(out, D)
    return out


def join_all(divisors: Iterable[TDivisor]) -> TDivisor:
    """Componentwise maximum of a nonempty family; see `meet_all`."""
    divisors = list(divisors)
    out = divisors[0]
    for D in divisors[1:]:
        out = join(out, D)
    return out


# Virtual intersection and union of the polytopes P(D), P(E); the result
# is the divisor standing for the virtual polytope.
cap = meet
cup = join


def local_vertex(fan: Fan, D: TDivisor, k: int) -> tuple[int, ...]:
    """The m in M with <m, r> = -a_r on every ray of the k-th maximal cone."""
    D.check_fan(fan)
    sigma = fan.max_cones[k]
    a = np.array([D[i] for i in sigma], dtype=np.int64)
    m = -(fan.cone_inverse(k).T @ a)
    return tuple(int(x) for x in m)


def local_vertices(fan: Fan, D: TDivisor) -> list[tuple[int, ...]]:
    """Local vertices in the order of `fan.max_cones`."""
    return [local_vertex(fan, D, k) for k in range(len(fan.max_cones))]


def _slacks(fan: Fan, D: TDivisor, m: Sequence[int]) -> np.ndarray:
    return fan.ray_matrix @ np.asarray(m, dtype=np.int64) + np.asarray(D.coeffs, dtype=np.int64)


def is_nef(fan: Fan, D: TDivisor) -> bool:
    """Local-vertex test: every m_sigma lies in the section polyhedron of D."""
    D.check_fan(fan)
    return all((_slacks(fan, D, m) >= 0).all() for m in local_vertices(fan, D))


def is_ample(fan: Fan, D: TDivisor) -> bool:
    """Nef with strict inequalities off each maximal cone."""
    D.check_fan(fan)
    for k, sigma in enumerate(fan.max_cones):
        slack = _slacks(fan, D, local_vertex(fan, D, k))
        for i in range(fan.n_rays):
            if slack[i] < 0 or (i not in sigma and slack[i] == 0):
                return False
    return True


def principal(fan: Fan, m: Sequence[int]) -> TDivisor:
    """div(chi^m) = sum <m, r> D_r."""
    return TDivisor(tuple(int(x) for x in fan.ray_matrix @ np.asarray(m, dtype=np.int64)))


def canonical_divisor(fan: Fan) -> TDivisor:
    """K = -sum D_r, the canonical divisor used by Serre duality.

    Args:
        fan: Smooth complete fan.

    Returns:
        The divisor with every coefficient -1.
    """
    return TDivisor((-1,) * fan.n_rays)


def wall_pairing(D: TDivisor, relation: Sequence[int]) -> int:
    """Intersection number of D with the curve class of a wall relation.

    Args:
        D: Torus-invariant divisor.
        relation: Integer relation in ray order.

    Returns:
        sum a_r * R_r.
    """
    return sum(a * r for a, r in zip(D.coeffs, relation))


@lru_cache(maxsize=None)
def reference_ample(fan: Fan) -> TDivisor:
    """A fixed ample divisor: sum of all D_r when that is ample, else an LP solution.

    Raises:
        NotProjective: If no divisor is strictly positive on every wall relation.
    """
    relations = [w.relation for w in fan.walls]
    anti = TDivisor((1,) * fan.n_rays)
    if all(wall_pairing(anti, R) > 0 for R in relations):
        return anti
    a = lp.positive_functional(relations, fan.n_rays)
    if a is None:
        raise NotProjective(f"fan {fan.name or fan.rays} carries no ample divisor")
    logger.info("reference ample divisor found by LP: %s", a)
    return TDivisor(a)


def nef_split(fan: Fan, D: TDivisor) -> tuple[TDivisor, TDivisor]:
    """Writes D = D_plus - D_minus with both parts nef.

    D_minus is the smallest multiple kA of the reference ample divisor A that
    makes D + kA nef (k = 0 when D is already nef).
    """
    D.check_fan(fan)
    A = reference_ample(fan)
    k = 0
    for w in fan.walls:
        deficit = -wall_pairing(D, w.relation)
        if deficit > 0:
            step = wall_pairing(A, w.relation)
            k = max(k, -(-deficit // step))
    return D + k * A, k * A
