"""Named fans, divisors and decorations used by the tests, the CLI and the sweep."""
from __future__ import annotations

from itertools import combinations

from decoration.weil import Stratum, WeilDecoration, sort_strata, from_line_bundle_sum
from divisors.divisor import TDivisor
from lattice.fan import Fan
from lattice.subspace import Subspace

FAN_NAMES = ("p1", "p2", "f1", "dp7-fig1", "p1xp1", "dp6", "p3", "bl-p3")
DECORATION_NAMES = ("p2-tangent", "f1-example31", "p1-remark")
DIVISOR_NAMES = ("f1-nabla", "f1-nabla-prime", "dp7-nabla", "dp7-nabla-prime")

PROVENANCE = {
    "p1": "projective line, rays +1 and -1",
    "p2": "projective plane, rays e1, e2, -e1-e2",
    "f1": "Hirzebruch surface F1 with rays (-1,1), (0,1), (1,0), (0,-1)",
    "dp7-fig1": "plane blown up in two torus fixed points (pentagon fan)",
    "p1xp1": "product of two projective lines",
    "dp6": "plane blown up in three torus fixed points (hexagon fan)",
    "p3": "projective 3-space",
    "bl-p3": "projective 3-space blown up in a torus fixed point",
    "p2-tangent": "tangent bundle of the plane: line of ray r carries D_r, generic stratum 0",
    "f1-example31": "O(D) + O(D') on F1 with D = (0,0,2,2), D' = (3,3,1,1)",
    "p1-remark": "O + O(D_1 - D_2) on the projective line",
    "f1-nabla": "section polygon of (0,0,2,2) on F1, 12 lattice points",
    "f1-nabla-prime": "section polygon of (3,3,1,1) on F1, 20 lattice points",
    "dp7-nabla": "pentagon pair whose virtual intersection is not the honest one",
    "dp7-nabla-prime": "second polygon of that pair",
}


def _cycle(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, (i + 1) % n) for i in range(n))


def build_fan(name: str) -> Fan:
    """Builds a named fan and validates it.

    Args:
        name: One of FAN_NAMES.

    Returns:
        The validated fan, with `name` set.

    Raises:
        ValueError: If the name is not recognized.
    """
    if name == "p1":
        rays, cones, dim = ((1,), (-1,)), ((0,), (1,)), 1
    elif name == "p2":
        rays, cones, dim = ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)), 2
    elif name == "f1":
        rays, cones, dim = ((-1, 1), (0, 1), (1, 0), (0, -1)), ((1, 2), (0, 1), (0, 3), (2, 3)), 2
    elif name == "dp7-fig1":
        rays, cones, dim = ((1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1)), _cycle(5), 2
    elif name == "p1xp1":
        rays, cones, dim = ((1, 0), (0, 1), (-1, 0), (0, -1)), _cycle(4), 2
    elif name == "dp6":
        rays, cones, dim = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)), _cycle(6), 2
    elif name == "p3":
        rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
        cones, dim = tuple(combinations(range(4), 3)), 3
    elif name == "bl-p3":
        rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (1, 1, 1))
        cones = ((0, 1, 4), (0, 2, 4), (1, 2, 4), (0, 1, 3), (0, 2, 3), (1, 2, 3))
        dim = 3
    else:
        raise ValueError(name)
    return Fan.validated(dim, rays, cones, name=name)


def build_divisor(name: str) -> tuple[str, TDivisor]:
    """Returns (fan name, divisor) for a named divisor.

    Raises:
        ValueError: If the name is not recognized.
    """
    if name == "f1-nabla":
        return "f1", TDivisor((0, 0, 2, 2))
    if name == "f1-nabla-prime":
        return "f1", TDivisor((3, 3, 1, 1))
    if name == "dp7-nabla":
        return "dp7-fig1", TDivisor((2, 0, 4, 5, 2))
    if name == "dp7-nabla-prime":
        return "dp7-fig1", TDivisor((0, 2, 2, 5, 4))
    raise ValueError(name)


def build_decoration(name: str) -> tuple[str, WeilDecoration]:
    """Returns (fan name, decoration) for a named decoration.

    Raises:
        ValueError: If the name is not recognized.
    """
    if name == "p2-tangent":
        fan = build_fan("p2")
        strata = [Stratum(Subspace.span([r], 2), TDivisor.prime(3, i))
                  for i, r in enumerate(fan.rays)]
        strata.append(Stratum(Subspace.full(2), TDivisor.zero(3)))
        return "p2", WeilDecoration(2, sort_strata(strata))
    if name == "f1-example31":
        _, D = build_divisor("f1-nabla")
        _, D2 = build_divisor("f1-nabla-prime")
        return "f1", from_line_bundle_sum(build_fan("f1"), [D, D2])
    if name == "p1-remark":
        return "p1", from_line_bundle_sum(build_fan("p1"), [TDivisor((0, 0)), TDivisor((1, -1))])
    raise ValueError(name)
