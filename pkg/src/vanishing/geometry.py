"""The extremal inequality read on the polytopes of a nefly decorated sheaf.

For an extremal collection P matched to a wall, the left side is the edge
of P(D(eta)) dual to the wall (its lattice length equals the pairing of
D(eta) with the primitive relation), and the right side compares how far
P(D(eta)) and P(D-hat) reach in the direction e_P = sum_{r in P} r.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from decoration.weil import WeilDecoration, summary
from divisors.polytope import section_polyhedron
from lattice.exact import rational_json
from lattice.errors import NotNeflyDecorated, UnmatchedExtremalRay
from lattice.fan import Fan
from mori.primitive import collections, edge_length, pair, wall_for_relation
from vanishing.criteria import is_nefly_decorated

logger = logging.getLogger(__name__)


def _json(x):
    return x if isinstance(x, int) else rational_json(x)


@dataclass(frozen=True)
class GeoEntry:
    rays: tuple[int, ...]
    wall: tuple[int, ...] | None
    lhs_pairing: int
    edge_len: int | None
    edge_lattice_points: int | None
    rhs: int | Fraction
    rhs_algebraic: int
    facet_distances: tuple[int | Fraction, ...]
    facet_distance_sum: int | Fraction
    decomposition_applies: bool

    @property
    def satisfied(self) -> bool:
        return self.lhs_pairing >= self.rhs_algebraic

    @property
    def geometric_satisfied(self) -> bool:
        return self.lhs_pairing >= self.rhs

    def to_dict(self) -> dict:
        out = asdict(self)
        out["rhs"] = _json(self.rhs)
        out["facet_distances"] = [_json(x) for x in self.facet_distances]
        out["facet_distance_sum"] = _json(self.facet_distance_sum)
        out.update(satisfied=self.satisfied, geometric_satisfied=self.geometric_satisfied)
        return out


@dataclass
class GeoReport:
    entries: list[GeoEntry] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return all(e.satisfied for e in self.entries)

    def to_dict(self) -> dict:
        return {"satisfied": self.satisfied, "collections": [e.to_dict() for e in self.entries]}


def _value(x: Fraction) -> int | Fraction:
    # D-hat need not be nef, so its polytope may have rational vertices
    return int(x) if x.denominator == 1 else x


def geometric_report(fan: Fan, dec: WeilDecoration) -> GeoReport:
    """Edge lengths against facet distances for every extremal collection.

    `satisfied` is the pairing inequality, which is normative. The polytope
    right-hand side `rhs` agrees with `rhs_algebraic` whenever D-hat is nef.

    Raises:
        NotNeflyDecorated: If some stratum divisor is not nef.
        UnmatchedExtremalRay: If on a surface an extremal relation matches no wall.
    """
    verdict = is_nefly_decorated(fan, dec)
    if not verdict:
        raise NotNeflyDecorated(verdict.witness)
    s = summary(dec)
    inner = section_polyhedron(fan, s.d_eta)
    outer = section_polyhedron(fan, s.d_hat)
    report = GeoReport()
    for pc in collections(fan):
        if not pc.extremal:
            continue
        wall = wall_for_relation(fan, pc.relation)
        edge = None
        if wall is None:
            if fan.dim == 2:
                raise UnmatchedExtremalRay(pc.rays)
            logger.warning("extremal relation of %s matches no wall; edge length omitted", pc.rays)
        else:
            edge = edge_length(fan, s.d_eta, wall)
        direction = [int(x) for x in fan.ray_matrix[list(pc.rays)].sum(axis=0)]
        rhs = _value(inner.minimum(direction) - outer.minimum(direction))
        distances = tuple(_value(inner.minimum(fan.rays[r]) - outer.minimum(fan.rays[r]))
                          for r in pc.rays)
        algebraic = sum(f * (s.lam[r] - s.mu[r]) for r, f in pc.focus_coeffs)
        entry = GeoEntry(
            rays=pc.rays,
            wall=None if wall is None else wall.ray_indices,
            lhs_pairing=pair(s.d_eta, pc.relation),
            edge_len=edge,
            edge_lattice_points=None if edge is None else edge + 1,
            rhs=rhs,
            rhs_algebraic=algebraic,
            facet_distances=distances,
            facet_distance_sum=sum(distances),
            decomposition_applies=sum(distances) == rhs,
        )
        if entry.edge_lattice_points is not None:
            # the two readings disagree only when rhs = pairing + 1
            flips = (entry.edge_lattice_points >= rhs) != (entry.lhs_pairing >= rhs)
            logger.log(logging.WARNING if flips else logging.DEBUG,
                       "collection %s: edge has %d lattice points but pairs to %d (rhs %s)",
                       pc.rays, entry.edge_lattice_points, entry.lhs_pairing, rhs)
        if rhs != algebraic:
            logger.warning("collection %s: polytope rhs %s differs from %s (D-hat not nef)",
                           pc.rays, rhs, algebraic)
        report.entries.append(entry)
    return report
