"""Versioned JSON schemas for fans, divisors, polytopes, decorations and sheaves.

Every object carries `"schema": 1` and a `"kind"`. Rationals are written as
`[num, den]` pairs and read from ints, pairs or `"p/q"` strings.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from configs.toric import toric
from cohomology.sheaf import ToricSheafData
from decoration.filtration import KlyachkoFiltration, RayFiltration
from decoration.weil import Stratum, WeilDecoration, sort_strata
from divisors.divisor import TDivisor
from divisors.polytope import QPolytope
from lattice.errors import SchemaError
from lattice.exact import parse_rational, rational_json
from lattice.fan import Fan
from lattice.subspace import Subspace


def envelope(kind: str, payload: dict) -> dict:
    return {"schema": toric.SCHEMA_VERSION, "kind": kind, **payload}


def _expect(obj: Any, kind: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"expected a JSON object of kind {kind!r}")
    if obj.get("schema") != toric.SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {obj.get('schema')!r}")
    if obj.get("kind", kind) != kind:
        raise SchemaError(f"expected kind {kind!r}, got {obj.get('kind')!r}")
    return obj


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in value):
        raise SchemaError(f"{what} must be a list of integers, got {value!r}")
    return value


def _field(obj: dict, key: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object with field {key!r}, got {obj!r}")
    try:
        return obj[key]
    except KeyError:
        raise SchemaError(f"missing field {key!r}") from None


def load(path: str | Path) -> Any:
    """Reads a JSON document.

    Raises:
        SchemaError: If the file is missing or not valid JSON.
    """
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)


# --- fans -------------------------------------------------------------------

def fan_to_json(fan: Fan) -> dict:
    return envelope("fan", {"name": fan.name, "dim": fan.dim,
                            "rays": [list(r) for r in fan.rays],
                            "max_cones": [list(c) for c in fan.max_cones],
                            "projective": fan.projective})


def fan_from_json(obj: Any) -> Fan:
    """Parses a fan without validating its geometry (see `lattice.fan.validate_fan`)."""
    obj = _expect(obj, "fan")
    dim = _field(obj, "dim")
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"dim must be a positive integer, got {dim!r}")
    rays = [_int_list(r, "ray") for r in _field(obj, "rays")]
    for r in rays:
        if len(r) != dim:
            raise SchemaError(f"ray {r} does not live in Z^{dim}")
    cones = [_int_list(c, "cone") for c in _field(obj, "max_cones")]
    for c in cones:
        if any(not 0 <= i < len(rays) for i in c):
            raise SchemaError(f"cone {c} refers to a missing ray")
    projective = obj.get("projective", True)
    if not isinstance(projective, bool):
        raise SchemaError(f"projective must be a boolean, got {projective!r}")
    return Fan(dim, tuple(map(tuple, rays)), tuple(map(tuple, cones)),
               projective, str(obj.get("name", "")))


# --- divisors and polytopes -------------------------------------------------

def divisor_to_json(D: TDivisor) -> dict:
    return envelope("divisor", {"coeffs": list(D.coeffs)})


def divisor_from_json(obj: Any) -> TDivisor:
    """Accepts a divisor object or a bare list of coefficients."""
    if isinstance(obj, list):
        return TDivisor(tuple(_int_list(obj, "divisor")))
    obj = _expect(obj, "divisor")
    return TDivisor(tuple(_int_list(_field(obj, "coeffs"), "coeffs")))


def parse_divisor_arg(text: str) -> TDivisor:
    """Reads a comma-separated coefficient list such as "-4,0,0"."""
    try:
        return TDivisor(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise SchemaError(f"bad divisor {text!r}; expected comma-separated integers") from None


def polytope_to_json(P: QPolytope | None) -> dict:
    if P is None:
        return envelope("polytope", {"empty": True, "vertices": []})
    return envelope("polytope", {
        "empty": False, "dim": P.dim, "lattice": P.is_lattice,
        "vertices": [[x.numerator if x.denominator == 1 else rational_json(x) for x in v]
                     for v in P.vertices],
    })


def polytope_from_json(obj: Any) -> QPolytope | None:
    obj = _expect(obj, "polytope")
    verts = [[parse_rational(x) for x in v] for v in _field(obj, "vertices")]
    if not verts:
        return None
    return QPolytope(tuple(map(tuple, verts)), len(verts[0]))


# --- decorations and sheaves ------------------------------------------------

def _subspace_json(V: Subspace) -> list:
    return [[x.numerator if x.denominator == 1 else rational_json(x) for x in v] for v in V.basis]


def _subspace_from(rows: Any, rank: int) -> Subspace:
    if not isinstance(rows, list):
        raise SchemaError(f"basis must be a list of vectors, got {rows!r}")
    vectors = []
    for v in rows:
        if not isinstance(v, list) or len(v) != rank:
            raise SchemaError(f"basis vector {v!r} does not live in Q^{rank}")
        vectors.append([parse_rational(x) for x in v])
    return Subspace.span(vectors, rank)


def decoration_to_json(dec: WeilDecoration) -> dict:
    return envelope("decoration", {
        "ambient_dim": dec.ambient_dim,
        "strata": [{"basis": _subspace_json(s.closure), "divisor": list(s.divisor.coeffs)}
                   for s in dec.strata],
    })


def decoration_from_json(obj: Any) -> WeilDecoration:
    """Parses a decoration; the axioms are checked separately by `validate_decoration`."""
    obj = _expect(obj, "decoration")
    rank = _field(obj, "ambient_dim")
    if not isinstance(rank, int) or rank < 1:
        raise SchemaError(f"ambient_dim must be a positive integer, got {rank!r}")
    strata = []
    for entry in _field(obj, "strata"):
        if not isinstance(entry, dict):
            raise SchemaError(f"stratum must be an object, got {entry!r}")
        strata.append(Stratum(_subspace_from(_field(entry, "basis"), rank),
                              TDivisor(tuple(_int_list(_field(entry, "divisor"), "divisor")))))
    if not strata:
        raise SchemaError("decoration has no strata")
    return WeilDecoration(rank, sort_strata(strata))


def sheaf_to_json(sheaf: ToricSheafData) -> dict:
    return envelope("sheaf", {
        "rank": sheaf.rank,
        "filtrations": [{"ray": i,
                         "jumps": [{"level": l, "basis": _subspace_json(V)} for l, V in f.jumps]}
                        for i, f in enumerate(sheaf.filtration.rays)],
    })


def sheaf_from_json(obj: Any) -> ToricSheafData:
    """Parses Klyachko data; a decoration object is accepted and converted."""
    if isinstance(obj, dict) and obj.get("kind") == "decoration":
        return ToricSheafData.from_decoration(decoration_from_json(obj))
    obj = _expect(obj, "sheaf")
    rank = _field(obj, "rank")
    if not isinstance(rank, int) or rank < 1:
        raise SchemaError(f"rank must be a positive integer, got {rank!r}")
    entries = _field(obj, "filtrations")
    if not isinstance(entries, list):
        raise SchemaError("filtrations must be a list")
    if all(isinstance(e, dict) for e in entries):
        order = sorted(entries, key=lambda e: _field(e, "ray"))
        if [e["ray"] for e in order] != list(range(len(order))):
            raise SchemaError("filtrations must cover rays 0..n-1 exactly once")
        entries = [_field(e, "jumps") for e in order]
    rays = []
    for jumps in entries:
        if not isinstance(jumps, list):
            raise SchemaError(f"filtration must be a list of jumps, got {jumps!r}")
        pairs = []
        for j in jumps:
            level = _field(j, "level")
            if not isinstance(level, int) or isinstance(level, bool):
                raise SchemaError(f"level must be an integer, got {level!r}")
            pairs.append((level, _subspace_from(_field(j, "basis"), rank)))
        rays.append(RayFiltration.from_levels(pairs, rank))
    return ToricSheafData(rank, KlyachkoFiltration(rank, tuple(rays)))
