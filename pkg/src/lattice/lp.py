"""Exact two-phase simplex over the rationals.

Small dense problems only (a few dozen variables). Bland's rule keeps the
method finite; Fractions keep every verdict exact.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from lattice.exact import to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LPResult:
    status: str                                   # optimal | infeasible | unbounded
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class ExactSimplex:
    """Solves min c.x subject to A x = b, x >= 0 exactly.

    The tableau holds one row per constraint with the right-hand side in the
    last column; `z` is the reduced-cost row whose last entry is minus the
    current objective value.
    """

    def __init__(self, A: Sequence[Sequence], b: Sequence, c: Sequence | None = None):
        self.m = len(A)
        self.n = len(A[0]) if A else (len(c) if c is not None else 0)
        if any(len(row) != self.n for row in A) or len(b) != self.m:
            raise ValueError("inconsistent LP dimensions")
        self.A = [[to_fraction(a) for a in row] for row in A]
        self.b = [to_fraction(v) for v in b]
        self.c = None if c is None else [to_fraction(v) for v in c]
        self.pivots = 0

    # tableau primitives
    def _pivot(self, i: int, j: int):
        p = self.T[i][j]
        row = [v / p for v in self.T[i]]
        self.T[i] = row
        for k, other in enumerate(self.T):
            f = other[j]
            if k != i and f != 0:
                self.T[k] = [a - f * r for a, r in zip(other, row)]
        f = self.z[j]
        if f != 0:
            self.z = [a - f * r for a, r in zip(self.z, row)]
        self.basis[i] = j
        self.pivots += 1

    def _run(self, ncols: int) -> str:
        while True:
            entering = next((j for j in range(ncols) if self.z[j] < 0), None)
            if entering is None:
                return "optimal"
            candidates = [(self.T[i][-1] / self.T[i][entering], self.basis[i], i)
                          for i in range(len(self.T)) if self.T[i][entering] > 0]
            if not candidates:
                return "unbounded"
            _, _, leaving = min(candidates)
            self._pivot(leaving, entering)

    def _solution(self) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.T[i][-1]
        return tuple(x)

    def solve(self) -> LPResult:
        """Runs phase I and, when an objective was given, phase II."""
        n, m = self.n, self.m
        # phase I: artificial basis after flipping rows to b >= 0
        self.T = []
        for i in range(m):
            sign = -1 if self.b[i] < 0 else 1
            art = [Fraction(int(k == i)) for k in range(m)]
            self.T.append([sign * a for a in self.A[i]] + art + [sign * self.b[i]])
        self.basis = [n + i for i in range(m)]
        self.z = [-sum((row[j] for row in self.T), Fraction(0)) for j in range(n)] \
            + [Fraction(0)] * m + [-sum((row[-1] for row in self.T), Fraction(0))]
        self._run(n + m)
        if -self.z[-1] != 0:
            logger.debug("phase I infeasible after %d pivots", self.pivots)
            return LPResult("infeasible")

        # drive artificials out of the basis, dropping redundant rows
        keep = []
        for i in range(len(self.T)):
            if self.basis[i] >= n:
                j = next((j for j in range(n) if self.T[i][j] != 0), None)
                if j is None:
                    continue
                self._pivot(i, j)
            keep.append(i)
        self.T = [self.T[i][:n] + [self.T[i][-1]] for i in keep]
        self.basis = [self.basis[i] for i in keep]

        if self.c is None:
            return LPResult("optimal", self._solution(), Fraction(0))

        # phase II
        cb = [self.c[j] for j in self.basis]
        self.z = [self.c[j] - sum((cb[i] * self.T[i][j] for i in range(len(self.T))), Fraction(0))
                  for j in range(n)]
        self.z.append(-sum((cb[i] * self.T[i][-1] for i in range(len(self.T))), Fraction(0)))
        status = self._run(n)
        logger.debug("simplex finished (%s) after %d pivots", status, self.pivots)
        if status == "unbounded":
            return LPResult("unbounded")
        x = self._solution()
        return LPResult("optimal", x, sum((cj * xj for cj, xj in zip(self.c, x)), Fraction(0)))


def find_nonnegative_solution(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Returns some x >= 0 with A x = b, or None."""
    if not A:
        return () if all(to_fraction(v) == 0 for v in b) else None
    return ExactSimplex(A, b).solve().x


def in_cone(vector: Sequence, generators: Sequence[Sequence]) -> bool:
    """True iff `vector` is a nonnegative rational combination of `generators`."""
    dim = len(vector)
    if not generators:
        return all(v == 0 for v in vector)
    A = [[g[r] for g in generators] for r in range(dim)]
    return find_nonnegative_solution(A, vector) is not None


def minimize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    return ExactSimplex(A, b, c).solve()


def positive_functional(vectors: Sequence[Sequence[int]], dim: int) -> tuple[int, ...] | None:
    """Finds an integer a with <a, v> >= 1 for every v, or None when none exists.

    Free variables are split as a = p - q and each inequality gets a surplus
    variable; the rational solution is scaled to integers afterwards.
    """
    k = len(vectors)
    if k == 0:
        return (0,) * dim
    A = []
    for r, v in enumerate(vectors):
        surplus = [-int(s == r) for s in range(k)]
        A.append(list(v) + [-x for x in v] + surplus)
    x = find_nonnegative_solution(A, [1] * k)
    if x is None:
        return None
    a = [x[i] - x[dim + i] for i in range(dim)]
    lcm = math.lcm(*(q.denominator for q in a))
    return tuple(int(q * lcm) for q in a)
