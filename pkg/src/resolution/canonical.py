"""The canonical resolution of a decorated sheaf by totally split sheaves.

Position l of the complex is the sum over strict chains S_0 < ... < S_l of
S_0-bar (x) O(D(S_l)). The differential drops one stratum at a time with the
simplicial sign; every component is an inclusion of E-vectors, so on a chart
and in one degree the complex is a complex of subspaces of E. Exactness is
verified there, degree by degree, against the chart sections of the sheaf.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from cohomology.cech import Degree, cech_cohomology, graded_cohomology, scan
from cohomology.sheaf import ToricSheafData, chart_sections
from cohomology.support import total_cohomology
from decoration.weil import WeilDecoration
from divisors.divisor import TDivisor
from lattice import exact
from lattice.errors import ExactnessFailure
from lattice.fan import Cone, Fan
from lattice.subspace import Subspace

logger = logging.getLogger(__name__)

StrataChain = tuple[int, ...]


def chains(dec: WeilDecoration, length: int, start: int, end: int) -> list[StrataChain]:
    """Strict chains start = S_0 < S_1 < ... < S_length = end in the stratum order."""
    if length == 0:
        return [(start,)] if start == end else []
    if not dec.less(start, end):
        return []
    if length == 1:
        return [(start, end)]
    out = []
    for mid in range(len(dec.strata)):
        if dec.less(start, mid) and dec.less(mid, end):
            out.extend((start,) + tail for tail in chains(dec, length - 1, mid, end))
    return sorted(out)


def all_chains(dec: WeilDecoration, length: int) -> list[StrataChain]:
    n = len(dec.strata)
    return sorted(c for s, t in itertools.product(range(n), repeat=2)
                  for c in chains(dec, length, s, t))


@dataclass(frozen=True)
class Summand:
    """S_0-bar (x) O(D(S_l)) for one chain."""
    chain: StrataChain
    closure: Subspace
    divisor: TDivisor

    @property
    def rank(self) -> int:
        return self.closure.dim


@dataclass
class ResolutionComplex:
    """terms[l] lists the summands in homological position l; `rank` is rank E."""
    rank: int
    terms: list[list[Summand]] = field(default_factory=list)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(sum(s.rank for s in t) for t in self.terms)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** l * r for l, r in enumerate(self.ranks))

    @cached_property
    def index(self) -> list[dict[StrataChain, int]]:
        return [{s.chain: i for i, s in enumerate(t)} for t in self.terms]

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "ranks": list(self.ranks),
            "euler_characteristic": self.euler_characteristic,
            "terms": [[{"chain": list(s.chain), "closure_dim": s.rank,
                        "divisor": list(s.divisor.coeffs)} for s in t] for t in self.terms],
        }


def build_resolution(fan: Fan, dec: WeilDecoration) -> ResolutionComplex:
    """Assembles the terms of the canonical resolution from the strata chains."""
    dec.check_fan(fan)
    cplx = ResolutionComplex(dec.ambient_dim)
    for length in range(dec.ambient_dim):
        found = all_chains(dec, length)
        if not found:
            break
        cplx.terms.append([Summand(c, dec.strata[c[0]].closure, dec.strata[c[-1]].divisor)
                           for c in found])
    logger.debug("resolution ranks %s", cplx.ranks)
    return cplx


@dataclass
class ExactnessReport:
    exact: bool = True
    d_squared_zero: bool = True
    euler_matches: bool = True
    checked: int = 0
    failure: ExactnessFailure | None = None

    def __bool__(self) -> bool:
        return self.exact

    def raise_for_errors(self):
        if self.failure is not None:
            raise self.failure

    def to_dict(self) -> dict:
        out = {"exact": self.exact, "d_squared_zero": self.d_squared_zero,
               "euler_matches": self.euler_matches, "checked": self.checked,
               "failure": None}
        if self.failure is not None:
            f = self.failure
            out["failure"] = {"cone": list(f.cone), "degree": list(f.degree),
                              "position": f.position, "message": str(f)}
        return out


def _live(cplx: ResolutionComplex, cone: Cone, pairing: np.ndarray) -> list[list[Subspace]]:
    """The degree piece of every summand on the chart: S_0-bar or 0."""
    pieces = []
    for t in cplx.terms:
        row = []
        for s in t:
            ok = all(pairing[r] >= -s.divisor[r] for r in cone.ray_indices)
            row.append(s.closure if ok else Subspace.zero(cplx.rank))
        pieces.append(row)
    return pieces


def _offsets(pieces: list[Subspace]) -> tuple[list[int], int]:
    out, total = [], 0
    for V in pieces:
        out.append(total)
        total += V.dim
    return out, total


def _differential(cplx: ResolutionComplex, pieces: list[list[Subspace]], l: int) -> list[list] | None:
    """Matrix of d: position l -> l-1 in the RREF bases of the live pieces.

    None when some component does not land in its target piece, which only
    happens when the divisors break the order reversal.
    """
    src_off, src_dim = _offsets(pieces[l])
    dst_off, dst_dim = _offsets(pieces[l - 1])
    M = [[0] * src_dim for _ in range(dst_dim)]
    for j, s in enumerate(cplx.terms[l]):
        for b, v in enumerate(pieces[l][j].basis):
            for i in range(len(s.chain)):
                target = cplx.index[l - 1][s.chain[:i] + s.chain[i + 1:]]
                coords = pieces[l - 1][target].coordinates(v)
                if coords is None:
                    return None
                for t, c in enumerate(coords):
                    M[dst_off[target] + t][src_off[j] + b] += (-1) ** i * c
    return M


def _augmentation(pieces: list[Subspace], rank: int) -> list[list]:
    vectors = [v for V in pieces for v in V.basis]
    return [[v[c] for v in vectors] for c in range(rank)]


def _check_degree(cplx: ResolutionComplex, sheaf: ToricSheafData, fan: Fan,
                  k: int, m: Degree, report: ExactnessReport) -> ExactnessFailure | None:
    cone = Cone(fan.max_cones[k])
    pairing = fan.ray_matrix @ np.asarray(m, dtype=np.int64)
    pieces = _live(cplx, cone, pairing)
    dims = [sum(V.dim for V in p) for p in pieces]
    top = len(pieces) - 1
    target = chart_sections(fan, sheaf, cone, m)

    def fail(position, reason):
        return ExactnessFailure(cone.ray_indices, m, position, reason)

    maps = [_augmentation(pieces[0], cplx.rank)]
    for l in range(1, top + 1):
        M = _differential(cplx, pieces, l)
        if M is None:
            return fail(l, "differential leaves its target summand")
        maps.append(M)
    ranks = [exact.rank(M, n) for M, n in zip(maps, dims)]
    ranks.append(0)

    for l in range(1, top + 1):
        if not exact.product_is_zero(maps[l - 1], maps[l], dims[l - 1], dims[l]):
            report.d_squared_zero = False
            return fail(l, "d o d is not zero")
    image = Subspace.span([v for V in pieces[0] for v in V.basis], cplx.rank)
    if not target.contains(image):
        return fail(0, "augmentation image leaves the chart sections")
    if image.dim != target.dim:
        return fail(0, f"augmentation image has dimension {image.dim}, chart sections {target.dim}")
    if sum((-1) ** l * d for l, d in enumerate(dims)) != target.dim:
        report.euler_matches = False
        return fail(0, "graded Euler characteristic mismatch")
    for l in range(top + 1):
        if dims[l] - ranks[l] != ranks[l + 1]:
            return fail(l, f"kernel {dims[l] - ranks[l]} vs image {ranks[l + 1]}")
    return None


def verification_region(fan: Fan, dec: WeilDecoration, sheaf: ToricSheafData,
                        margin: int = 1) -> list[Degree]:
    """The scan region of the sheaf, widened to the decoration divisors, plus a margin.

    The Cech scan starts from the jump levels of the sheaf and of every
    stratum divisor and grows until it is quiet; the returned box extends
    that region by `margin` shells on every side.
    """
    coeffs = list(zip(*(s.divisor.coeffs for s in dec.strata)))
    mu = [min(a, min(c)) for a, c in zip(sheaf.mu, coeffs)]
    lam = [max(b, max(c)) for b, c in zip(sheaf.lam, coeffs)]
    scanned = scan(fan, mu, lam, lambda m: cech_cohomology(fan, sheaf, m)).region
    pts = np.array(scanned, dtype=np.int64)
    lo, hi = pts.min(axis=0) - margin, pts.max(axis=0) + margin
    return list(itertools.product(*(range(int(a), int(b) + 1) for a, b in zip(lo, hi))))


def verify_exactness(fan: Fan, dec: WeilDecoration, sheaf: ToricSheafData | None = None,
                     region: Iterable[Sequence[int]] | None = None) -> ExactnessReport:
    """Checks the canonical resolution chart by chart and degree by degree.

    On every maximal cone and every degree of the region this checks that
    d o d = 0, that the complex is exact in every positive position, and that
    the augmentation maps onto the chart sections of `sheaf`. The first
    failure is kept in the report.

    Args:
        fan: Smooth complete fan.
        dec: Decoration the resolution is built from.
        sheaf: Klyachko data to compare against; defaults to the data of `dec`.
        region: Degrees to check; defaults to `verification_region`.
    """
    sheaf = ToricSheafData.from_decoration(dec) if sheaf is None else sheaf.check_fan(fan)
    cplx = build_resolution(fan, dec)
    degrees = [tuple(int(x) for x in m) for m in region] if region is not None \
        else verification_region(fan, dec, sheaf)
    report = ExactnessReport()
    for m in degrees:
        for k in range(len(fan.max_cones)):
            report.checked += 1
            failure = _check_degree(cplx, sheaf, fan, k, m, report)
            if failure is not None:
                report.exact = False
                report.failure = failure
                logger.info("exactness fails: %s", failure)
                return report
    logger.info("resolution exact on %d chart degrees", report.checked)
    return report


def e1_page(fan: Fan, dec: WeilDecoration) -> dict[tuple[int, int], int]:
    """dim E_1^{-l, q}: sum over position-l summands of rank(S_0) * h^q(O(D(S_l)))."""
    cplx = build_resolution(fan, dec)
    page: dict[tuple[int, int], int] = {}
    for l, t in enumerate(cplx.terms):
        for s in t:
            h = total_cohomology(fan, s.divisor)
            for q, x in enumerate(h):
                if x:
                    page[(l, q)] = page.get((l, q), 0) + s.rank * x
    return page


def e1_vanishing_bound(fan: Fan, dec: WeilDecoration) -> tuple[bool, ...]:
    """For k = 0..d, whether the E_1 page alone forces H^k(E) = 0.

    H^k is forced to vanish when every entry E_1^{-l, q} with q - l = k is zero.
    """
    page = e1_page(fan, dec)
    return tuple(all(x == 0 for (l, q), x in page.items() if q - l == k)
                 for k in range(fan.dim + 1))


def oracle_agrees(fan: Fan, dec: WeilDecoration) -> bool:
    """No E_1 vanishing claim is contradicted by the Cech cohomology of the sheaf."""
    claims = e1_vanishing_bound(fan, dec)
    totals = graded_cohomology(fan, ToricSheafData.from_decoration(dec)).totals()
    return all(totals[k] == 0 for k, forced in enumerate(claims) if forced)
