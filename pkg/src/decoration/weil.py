"""Weil decorations: finite linear stratifications of E labelled by divisors."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from decoration.filtration import KlyachkoFiltration, RayFiltration
from divisors.divisor import TDivisor, join_all, leq, meet, meet_all
from lattice.errors import (AxiomViolation, DuplicateDivisor, FanMismatch,
                            NoGenericStratum, StratificationError, ToricInputError)
from lattice.fan import Fan
from lattice.subspace import Subspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Stratum:
    closure: Subspace
    divisor: TDivisor


@dataclass(frozen=True)
class DecorationSummary:
    mu: tuple[int, ...]
    lam: tuple[int, ...]
    d_eta: TDivisor
    d_hat: TDivisor


@dataclass
class DecorationDiagnostics:
    issues: list[ToricInputError] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.issues

    def raise_for_errors(self):
        if self.issues:
            raise self.issues[0]

    def to_dict(self) -> dict:
        return {"valid": self.valid,
                "issues": [{"error": type(e).__name__, "message": str(e)} for e in self.issues]}


@dataclass(frozen=True)
class WeilDecoration:
    """Strata of E with one divisor each.

    Strata are ordered by closure inclusion: S <= S' iff closure(S) is
    contained in closure(S'). The generic stratum (closure E) is the top.
    """
    ambient_dim: int
    strata: tuple[Stratum, ...]

    @property
    def n_rays(self) -> int:
        return len(self.strata[0].divisor)

    @property
    def divisors(self) -> tuple[TDivisor, ...]:
        return tuple(s.divisor for s in self.strata)

    @cached_property
    def generic_index(self) -> int:
        full = [i for i, s in enumerate(self.strata) if s.closure.is_full]
        if len(full) != 1:
            raise NoGenericStratum(f"expected one stratum with closure E, found {len(full)}")
        return full[0]

    @cached_property
    def _order(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(b.closure.contains(a.closure) for b in self.strata) for a in self.strata)

    def leq(self, i: int, j: int) -> bool:
        return self._order[i][j]

    def less(self, i: int, j: int) -> bool:
        return i != j and self._order[i][j]

    def join(self, i: int, j: int) -> int | None:
        """The least stratum whose closure contains both closures; None if not unique."""
        span = self.strata[i].closure + self.strata[j].closure
        above = [k for k, s in enumerate(self.strata) if s.closure.contains(span)]
        least = [k for k in above if all(self.leq(k, l) for l in above)]
        return least[0] if len(least) == 1 else None

    def check_fan(self, fan: Fan) -> "WeilDecoration":
        for s in self.strata:
            s.divisor.check_fan(fan)
        return self


def validate_decoration(dec: WeilDecoration) -> DecorationDiagnostics:
    """Checks the decoration axiom on the finite stratum model.

    Covers the unique generic stratum with minimal divisor, injectivity of
    the divisor labels, order reversal, existence of joins and the join law
    D(S v S') = min(D(S), D(S')).
    """
    issues: list[ToricInputError] = []
    if not dec.strata:
        return DecorationDiagnostics([NoGenericStratum("decoration has no strata")])
    n = dec.n_rays
    for i, s in enumerate(dec.strata):
        if s.closure.ambient != dec.ambient_dim:
            issues.append(StratificationError(f"stratum {i} lives in Q^{s.closure.ambient}"))
        elif s.closure.is_zero:
            issues.append(StratificationError(f"stratum {i} has zero closure"))
        if len(s.divisor) != n:
            issues.append(FanMismatch(n, len(s.divisor)))
    for i, j in combinations(range(len(dec.strata)), 2):
        if dec.strata[i].closure == dec.strata[j].closure:
            issues.append(StratificationError(f"strata {i} and {j} share a closure"))
    if issues:
        return DecorationDiagnostics(issues)

    try:
        eta = dec.generic_index
    except NoGenericStratum as exc:
        return DecorationDiagnostics([exc])
    d_eta = dec.strata[eta].divisor
    for i, s in enumerate(dec.strata):
        if not leq(d_eta, s.divisor):
            issues.append(AxiomViolation((eta, i), "generic divisor is not the minimum"))
    for i, j in combinations(range(len(dec.strata)), 2):
        Di, Dj = dec.strata[i].divisor, dec.strata[j].divisor
        if Di == Dj:
            issues.append(DuplicateDivisor((i, j)))
            continue
        if dec.less(i, j) and not leq(Dj, Di):
            issues.append(AxiomViolation((i, j), "order reversal fails"))
        elif dec.less(j, i) and not leq(Di, Dj):
            issues.append(AxiomViolation((i, j), "order reversal fails"))
        k = dec.join(i, j)
        if k is None:
            issues.append(AxiomViolation((i, j), "no unique join"))
        elif dec.strata[k].divisor != meet(Di, Dj):
            issues.append(AxiomViolation((i, j), f"join {k} carries {dec.strata[k].divisor.coeffs}, "
                                                 f"expected {meet(Di, Dj).coeffs}"))
    return DecorationDiagnostics(issues)


def canonicalize(ambient_dim: int, pairs: Sequence[tuple[Sequence[Sequence], TDivisor]]) -> WeilDecoration:
    """Builds a decoration from (basis rows, divisor) pairs, merging equal divisors into spans."""
    merged: dict[TDivisor, Subspace] = {}
    order: list[TDivisor] = []
    for rows, D in pairs:
        V = Subspace.span(rows, ambient_dim)
        if D in merged:
            merged[D] = merged[D] + V
        else:
            merged[D] = V
            order.append(D)
    strata = tuple(Stratum(merged[D], D) for D in order)
    return WeilDecoration(ambient_dim, sort_strata(strata))


def sort_strata(strata: Sequence[Stratum]) -> tuple[Stratum, ...]:
    # smaller closures first, generic stratum last
    return tuple(sorted(strata, key=lambda s: (s.closure.dim, s.divisor.coeffs, s.closure.basis)))


def from_line_bundle_sum(fan: Fan | None, divisors: Sequence[TDivisor]) -> WeilDecoration:
    """The decoration of O(D_1) + ... + O(D_n).

    A vector supported on I gets min_{i in I} D_i; the stratum of a value D
    has closure span{e_i : D_i >= D}.

    Raises:
        FanMismatch: If the divisors do not match the fan or each other.
    """
    if not divisors:
        raise ValueError("need at least one line bundle")
    n = len(divisors)
    for D in divisors:
        if fan is not None:
            D.check_fan(fan)
        divisors[0]._other(D)
    values: list[TDivisor] = []
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            D = meet_all(divisors[i] for i in idx)
            if D not in values:
                values.append(D)
    strata = []
    for D in values:
        rows = [[int(i == j) for j in range(n)] for i in range(n) if leq(D, divisors[i])]
        strata.append(Stratum(Subspace.span(rows, n), D))
    return WeilDecoration(n, sort_strata(strata))


def from_flag(basis: Sequence[Sequence], divisors: Sequence[TDivisor]) -> WeilDecoration:
    """Flag decoration V_1 < V_2 < ... < V_k = E built from a basis of E.

    The j-th stratum (0-based) is spanned by the first r-k+j+1 basis
    vectors, so the last one is E. Divisors must decrease along the flag.
    """
    r, k = len(basis), len(divisors)
    if not 1 <= k <= r:
        raise ValueError(f"flag of length {k} in rank {r}")
    offset = r - k
    strata = [Stratum(Subspace.span(basis[: offset + j + 1], r), D) for j, D in enumerate(divisors)]
    return WeilDecoration(r, sort_strata(strata))


def klyachko_filtrations(dec: WeilDecoration) -> KlyachkoFiltration:
    """E_r^l = span of the closures of strata whose divisor has r-coefficient >= l."""
    r = dec.ambient_dim
    rays = []
    for ray in range(dec.n_rays):
        levels = sorted({s.divisor[ray] for s in dec.strata})
        pairs = []
        for l in levels:
            V = Subspace.zero(r)
            for s in dec.strata:
                if s.divisor[ray] >= l:
                    V = V + s.closure
            pairs.append((l, V))
        rays.append(RayFiltration.from_levels(pairs, r))
    return KlyachkoFiltration(r, tuple(rays))


def summary(dec: WeilDecoration) -> DecorationSummary:
    """Jump bounds and the two extreme divisors of a decoration.

    Args:
        dec: Decoration whose generic stratum carries the minimum.

    Returns:
        mu and lambda (per-ray minimum and maximum coefficient), D(eta) and
        D-hat, the join of all stratum divisors.

    Raises:
        AxiomViolation: If the generic divisor is not the meet of all divisors.
    """
    d_eta = meet_all(dec.divisors)
    d_hat = join_all(dec.divisors)
    if d_eta != dec.strata[dec.generic_index].divisor:
        raise AxiomViolation((dec.generic_index,), "generic divisor is not the minimum")
    return DecorationSummary(d_eta.coeffs, d_hat.coeffs, d_eta, d_hat)


def twist(dec: WeilDecoration, D: TDivisor) -> WeilDecoration:
    """Shifts every stratum divisor by D, giving the decoration of E(D).

    Args:
        dec: Decoration of E.
        D: Twisting divisor on the same fan.

    Returns:
        A decoration with the same strata and shifted divisors.
    """
    strata = tuple(Stratum(s.closure, s.divisor + D) for s in dec.strata)
    return WeilDecoration(dec.ambient_dim, strata)
