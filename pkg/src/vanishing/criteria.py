"""Acyclicity certificates for decorated toric sheaves.

The primitive-collection inequality
    sum_{r in P} (a_r + mu_r) >= sum_r f_r (a_r + lam_r)
certifies that E(D) is acyclic when it holds for every primitive collection,
and already when it holds for the extremal ones. The decoration predicates
certify acyclicity stratum by stratum through the rank-one engines.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Sequence, Union

from cohomology.sheaf import ToricSheafData
from cohomology.support import total_cohomology
from decoration.weil import WeilDecoration, summary
from divisors.divisor import TDivisor, is_nef
from lattice.errors import FanMismatch
from lattice.fan import Fan
from mori.primitive import PrimitiveCollection, collections

logger = logging.getLogger(__name__)

SheafInput = Union[WeilDecoration, ToricSheafData]


@dataclass(frozen=True)
class CollectionVerdict:
    rays: tuple[int, ...]
    lhs: int
    rhs: int
    extremal: bool
    relation: tuple[int, ...] = ()

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs

    def to_dict(self) -> dict:
        out = asdict(self)
        out["satisfied"] = self.satisfied
        return out


@dataclass
class CriterionReport:
    """Per-collection verdicts; the conjunction certifies acyclicity of E(D)."""
    scope: str
    divisor: tuple[int, ...]
    verdicts: list[CollectionVerdict] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return all(v.satisfied for v in self.verdicts)

    @property
    def failing(self) -> list[CollectionVerdict]:
        return [v for v in self.verdicts if not v.satisfied]

    def __bool__(self) -> bool:
        return self.satisfied

    def to_dict(self) -> dict:
        return {"scope": self.scope, "divisor": list(self.divisor),
                "satisfied": self.satisfied,
                "collections": [v.to_dict() for v in self.verdicts]}


@dataclass(frozen=True)
class StratumVerdict:
    """A yes/no answer about every stratum, with the first offending stratum."""
    value: bool
    witness: int | None = None
    witness_divisor: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.value

    def to_dict(self) -> dict:
        return {"value": self.value, "witness": self.witness,
                "witness_divisor": None if self.witness_divisor is None else list(self.witness_divisor)}


def jump_bounds(data: SheafInput) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(mu, lam): D(eta) and D-hat for a decoration, first and last jumps for Klyachko data."""
    if isinstance(data, WeilDecoration):
        s = summary(data)
        return s.mu, s.lam
    return data.mu, data.lam


def _collection_verdict(pc: PrimitiveCollection, a: Sequence[int],
                        mu: Sequence[int], lam: Sequence[int]) -> CollectionVerdict:
    lhs = sum(a[r] + mu[r] for r in pc.rays)
    rhs = sum(f * (a[r] + lam[r]) for r, f in pc.focus_coeffs)
    return CollectionVerdict(pc.rays, lhs, rhs, pc.extremal, pc.relation)


def _check(fan: Fan, data: SheafInput, D: TDivisor | None, extremal_only: bool) -> CriterionReport:
    mu, lam = jump_bounds(data)
    if len(mu) != fan.n_rays:
        raise FanMismatch(fan.n_rays, len(mu))
    D = TDivisor.zero(fan.n_rays) if D is None else D.check_fan(fan)
    report = CriterionReport("extremal" if extremal_only else "all", D.coeffs)
    for pc in collections(fan):
        if extremal_only and not pc.extremal:
            continue
        report.verdicts.append(_collection_verdict(pc, D.coeffs, mu, lam))
    logger.info("%s criterion for D=%s: %d/%d collections hold", report.scope, D.coeffs,
                len(report.verdicts) - len(report.failing), len(report.verdicts))
    return report


def check_perlman_smith(fan: Fan, data: SheafInput, D: TDivisor | None = None) -> CriterionReport:
    """The inequality over every primitive collection of the fan.

    A passing report certifies that E(D) is acyclic.

    Args:
        fan: Smooth complete fan.
        data: A Weil decoration or Klyachko data; only mu and lam are read.
        D: Twisting divisor, zero when omitted.
    """
    return _check(fan, data, D, extremal_only=False)


def check_extremal(fan: Fan, data: SheafInput, D: TDivisor | None = None) -> CriterionReport:
    """The same inequality restricted to collections spanning extremal rays of the Mori cone."""
    return _check(fan, data, D, extremal_only=True)


def is_nefly_decorated(fan: Fan, dec: WeilDecoration) -> StratumVerdict:
    """Whether every stratum divisor is nef.

    Args:
        fan: Smooth complete fan.
        dec: Decoration on that fan.

    Returns:
        A truthy verdict, or the first stratum with a non-nef divisor as witness.
    """
    dec.check_fan(fan)
    for i, s in enumerate(dec.strata):
        if not is_nef(fan, s.divisor):
            return StratumVerdict(False, i, s.divisor.coeffs)
    return StratumVerdict(True)


def _stratum_totals(fan: Fan, dec: WeilDecoration) -> list[tuple[int, ...]]:
    return [total_cohomology(fan, s.divisor) for s in dec.check_fan(fan).strata]


def is_acyclicly_decorated(fan: Fan, dec: WeilDecoration) -> StratumVerdict:
    """Whether every stratum line bundle has no higher cohomology."""
    for i, h in enumerate(_stratum_totals(fan, dec)):
        if any(h[1:]):
            return StratumVerdict(False, i, dec.strata[i].divisor.coeffs)
    return StratumVerdict(True)


def is_immaculately_decorated(fan: Fan, dec: WeilDecoration) -> StratumVerdict:
    """Whether every stratum line bundle has no cohomology at all."""
    for i, h in enumerate(_stratum_totals(fan, dec)):
        if any(h):
            return StratumVerdict(False, i, dec.strata[i].divisor.coeffs)
    return StratumVerdict(True)


def vanishing_bound(fan: Fan, dec: WeilDecoration) -> int:
    """Least k0 >= 1 such that every stratum line bundle has H^k = 0 for all k >= k0.

    H^k of the decorated sheaf then vanishes for the same k.
    """
    top = 0
    for h in _stratum_totals(fan, dec):
        for k in range(1, len(h)):
            if h[k]:
                top = max(top, k)
    return top + 1
