#!/usr/bin/env python3
"""
toric_cli.py – command-line front end of the toric acyclicity toolkit

Inputs are JSON files (schema 1) or fixture names; reports go to stdout as
JSON (or text tables with --format text), diagnostics to stderr.

Exit codes: 0 certified / ok, 1 not certified, 2 input or consistency error.

Example
-------
Check the extremal criterion for the rank-two example on F1:

    python toric_cli.py check extremal --fan f1 --decoration f1-example31

Cohomology of the twisted tangent bundle of the plane:

    python toric_cli.py cohomology --fan p2 --decoration p2-tangent --twist=-4,0,0
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

import pandas as pd

from cohomology.cech import cech_cohomology, graded_cohomology
from cohomology.sheaf import ToricSheafData
from cohomology.support import degree_evaluator, line_bundle_cohomology
from configs.toric import toric
from decoration.weil import WeilDecoration, klyachko_filtrations, summary, twist, validate_decoration
from divisors.divisor import TDivisor, cap, cup, is_ample, is_nef, local_vertices
from divisors.polytope import (cap_is_honest, divisor_of, intersection, scaled_cap_stabilizes,
                               section_polyhedron)
from fixtures.catalog import (DECORATION_NAMES, DIVISOR_NAMES, FAN_NAMES, PROVENANCE,
                              build_decoration, build_divisor, build_fan)
from lattice.errors import SchemaError, ToricError
from lattice.fan import Fan, validate_fan
from mori.primitive import collections, pair, wall_for_relation
from report import codec
from report.svg import render_polygons
from resolution.canonical import build_resolution, e1_vanishing_bound, verify_exactness
from vanishing.criteria import (check_extremal, check_perlman_smith, is_acyclicly_decorated,
                                is_immaculately_decorated, is_nefly_decorated, vanishing_bound)
from vanishing.geometry import geometric_report

logger = logging.getLogger("toric_cli")

Result = tuple[dict, int]


# --- input ------------------------------------------------------------------

def load_fan(arg: str) -> Fan:
    """A fan from a JSON file or a fixture name, validated."""
    if Path(arg).is_file():
        fan = codec.fan_from_json(codec.load(arg))
    elif arg in FAN_NAMES:
        return build_fan(arg)
    else:
        raise SchemaError(f"{arg!r} is neither a file nor a fixture fan")
    validate_fan(fan).raise_for_errors()
    return fan


def load_divisor(arg: str, fan: Fan) -> TDivisor:
    if Path(arg).is_file():
        D = codec.divisor_from_json(codec.load(arg))
    elif arg in DIVISOR_NAMES:
        _, D = build_divisor(arg)
    else:
        D = codec.parse_divisor_arg(arg)
    return D.check_fan(fan)


def load_decoration(arg: str, fan: Fan) -> WeilDecoration:
    if Path(arg).is_file():
        dec = codec.decoration_from_json(codec.load(arg))
    elif arg in DECORATION_NAMES:
        _, dec = build_decoration(arg)
    else:
        raise SchemaError(f"{arg!r} is neither a file nor a fixture decoration")
    return dec.check_fan(fan)


def load_sheaf(args, fan: Fan, apply_twist: bool = True) -> ToricSheafData:
    """Klyachko data from --sheaf, --decoration or --divisor, twisted by --twist."""
    if getattr(args, "sheaf", None):
        if Path(args.sheaf).is_file():
            sheaf = codec.sheaf_from_json(codec.load(args.sheaf))
        else:
            sheaf = ToricSheafData.from_decoration(load_decoration(args.sheaf, fan))
    elif getattr(args, "decoration", None):
        sheaf = ToricSheafData.from_decoration(load_decoration(args.decoration, fan))
    elif getattr(args, "divisor", None):
        sheaf = ToricSheafData.line_bundle(load_divisor(args.divisor, fan))
    else:
        raise SchemaError("one of --sheaf, --decoration or --divisor is required")
    sheaf.check_fan(fan)
    if apply_twist and getattr(args, "twist", None):
        sheaf = sheaf.twist(load_divisor(args.twist, fan))
    return sheaf


def _warn_if_not_projective(fan: Fan, command: str):
    if not fan.projective:
        logger.warning("%s: fan %s is flagged non-projective; vanishing results assume "
                       "a projective variety", command, fan.name or "<input>")


def _svg(args, polygons, title=""):
    if getattr(args, "svg", None):
        render_polygons(polygons, args.svg, title)


# --- commands ---------------------------------------------------------------

def cmd_fan_validate(args) -> Result:
    fan = load_fan(args.fan)
    diag = validate_fan(fan)
    out = diag.to_dict()
    out.update(codec.fan_to_json(fan))
    out["walls"] = [{"rays": list(w.ray_indices), "relation": list(w.relation)} for w in fan.walls]
    return out, 0


def cmd_divisor(args) -> Result:
    fan = load_fan(args.fan)
    D = load_divisor(args.divisor, fan)
    if args.action == "poly":
        P = section_polyhedron(fan, D)
        _svg(args, [(f"P{D.coeffs}", P)])
        return codec.polytope_to_json(P), 0
    if args.action == "nef":
        nef = is_nef(fan, D)
        return {"divisor": list(D.coeffs), "nef": nef, "ample": is_ample(fan, D),
                "local_vertices": [list(m) for m in local_vertices(fan, D)]}, 0 if nef else 1
    if args.other is None:
        raise SchemaError(f"divisor {args.action} needs --other")
    E = load_divisor(args.other, fan)
    if args.action == "cup":
        U = cup(D, E)
        return {"cup": list(U.coeffs), "polytope": codec.polytope_to_json(section_polyhedron(fan, U))}, 0
    M = cap(D, E)
    P, Q = section_polyhedron(fan, D), section_polyhedron(fan, E)
    honest = intersection(P, Q) if P is not None and Q is not None else None
    out = {"cap": list(M.coeffs),
           "virtual": codec.polytope_to_json(section_polyhedron(fan, M)),
           "intersection": codec.polytope_to_json(honest),
           "honest": cap_is_honest(fan, D, E)}
    if honest is not None and honest.is_lattice:
        out["intersection_divisor"] = list(divisor_of(fan, honest).coeffs)
    if is_nef(fan, D) and is_nef(fan, E):
        out["stabilizes_at"] = scaled_cap_stabilizes(fan, D, E)
    _svg(args, [("D", P), ("E", Q), ("cap", section_polyhedron(fan, M))])
    return out, 0


def cmd_mori(args) -> Result:
    fan = load_fan(args.fan)
    pcs = collections(fan)
    if args.action == "extremal":
        pcs = [pc for pc in pcs if pc.extremal]
    rows = []
    D = load_divisor(args.divisor, fan) if getattr(args, "divisor", None) else None
    for pc in pcs:
        wall = wall_for_relation(fan, pc.relation)
        row = {"rays": list(pc.rays), "focus": [list(p) for p in pc.focus_coeffs],
               "relation": list(pc.relation), "extremal": pc.extremal,
               "wall": None if wall is None else list(wall.ray_indices)}
        if D is not None:
            row["pairing"] = pair(D, pc.relation)
        rows.append(row)
    if args.action == "pair":
        if D is None:
            raise SchemaError("mori pair needs --divisor")
        return {"divisor": list(D.coeffs), "collections": rows,
                "nef": all(r["pairing"] >= 0 for r in rows)}, 0
    return {"collections": rows}, 0


def cmd_decoration(args) -> Result:
    fan = load_fan(args.fan)
    dec = load_decoration(args.decoration, fan)
    if args.action == "validate":
        diag = validate_decoration(dec)
        diag.raise_for_errors()
        return diag.to_dict(), 0
    validate_decoration(dec).raise_for_errors()
    if args.action == "summary":
        s = summary(dec)
        out = {"rank": dec.ambient_dim, "strata": len(dec.strata), "mu": list(s.mu),
               "lam": list(s.lam), "d_eta": list(s.d_eta.coeffs), "d_hat": list(s.d_hat.coeffs)}
        if fan.dim == 2:
            _svg(args, [(f"stratum {i}", section_polyhedron(fan, st.divisor))
                        for i, st in enumerate(dec.strata)])
        return out, 0
    if args.action == "klyachko":
        sheaf = ToricSheafData(dec.ambient_dim, klyachko_filtrations(dec))
        return codec.sheaf_to_json(sheaf), 0
    if args.twist is None:
        raise SchemaError("decoration twist needs --twist")
    return codec.decoration_to_json(twist(dec, load_divisor(args.twist, fan))), 0


def cmd_cohomology(args) -> Result:
    fan = load_fan(args.fan)
    _warn_if_not_projective(fan, "cohomology")
    sheaf = load_sheaf(args, fan)
    engine = args.engine or toric.DEFAULT_ENGINE
    if args.degree is not None:
        m = [int(x) for x in args.degree.split(",")]
        if len(m) != fan.dim:
            raise SchemaError(f"degree {m} does not live in Z^{fan.dim}")
        if engine == "cech":
            h = cech_cohomology(fan, sheaf, m)
        else:
            if sheaf.rank != 1:
                raise SchemaError(f"engine {engine!r} needs a line bundle")
            h = degree_evaluator(fan, TDivisor(sheaf.mu), engine)(m)
        return {"engine": engine, "degree": m, "h": list(h)}, 0
    if engine == "cech":
        result = graded_cohomology(fan, sheaf)
    else:
        if sheaf.rank != 1:
            raise SchemaError(f"engine {engine!r} needs a line bundle")
        result = line_bundle_cohomology(fan, TDivisor(sheaf.mu), engine)
    totals = result.totals()
    return {"engine": engine, "rank": sheaf.rank, "totals": list(totals),
            "acyclic": result.is_acyclic, "immaculate": result.is_immaculate,
            "region_size": len(result.region),
            "degrees": [{"m": list(m), "h": list(h)} for m, h in sorted(result.degrees.items())]}, 0


def cmd_check(args) -> Result:
    fan = load_fan(args.fan)
    _warn_if_not_projective(fan, "check")
    D = load_divisor(args.twist, fan) if args.twist else None
    if args.action in ("ps", "extremal"):
        if args.decoration:
            data = load_decoration(args.decoration, fan)
        else:
            data = load_sheaf(args, fan, apply_twist=False)
        fn = check_perlman_smith if args.action == "ps" else check_extremal
        report = fn(fan, data, D)
        return report.to_dict(), 0 if report.satisfied else 1
    if not args.decoration:
        raise SchemaError(f"check {args.action} needs --decoration")
    dec = load_decoration(args.decoration, fan)
    validate_decoration(dec).raise_for_errors()
    if D is not None:
        dec = twist(dec, D)
    if args.action == "nef-dec":
        v = is_nefly_decorated(fan, dec)
        return v.to_dict(), 0 if v else 1
    if args.action == "acyclic-dec":
        v = is_acyclicly_decorated(fan, dec)
        out = v.to_dict()
        out["immaculate"] = bool(is_immaculately_decorated(fan, dec))
        return out, 0 if v else 1
    if args.action == "bound":
        k0 = vanishing_bound(fan, dec)
        return {"k0": k0, "e1_forced": list(e1_vanishing_bound(fan, dec))}, 0
    report = geometric_report(fan, dec)
    return report.to_dict(), 0 if report.satisfied else 1


def cmd_resolve(args) -> Result:
    fan = load_fan(args.fan)
    _warn_if_not_projective(fan, "resolve")
    dec = load_decoration(args.decoration, fan)
    out = build_resolution(fan, dec).to_dict()
    code = 0
    if args.verify:
        validate_decoration(dec).raise_for_errors()
        report = verify_exactness(fan, dec)
        out["verification"] = report.to_dict()
        code = 0 if report else 1
    return out, code


def cmd_fixtures(args) -> Result:
    if args.action == "list":
        return {"fans": list(FAN_NAMES), "decorations": list(DECORATION_NAMES),
                "divisors": list(DIVISOR_NAMES), "provenance": PROVENANCE}, 0
    name = args.name
    if name in FAN_NAMES:
        return codec.fan_to_json(build_fan(name)), 0
    if name in DECORATION_NAMES:
        fan_name, dec = build_decoration(name)
        return {**codec.decoration_to_json(dec), "fan": fan_name}, 0
    if name in DIVISOR_NAMES:
        fan_name, D = build_divisor(name)
        return {**codec.divisor_to_json(D), "fan": fan_name}, 0
    raise SchemaError(f"unknown fixture {name!r}")


def cmd_sweep(args) -> Result:
    from sweep import run_sweep
    df = run_sweep(args.fixtures.split(","), args.samples, args.seed, progress=False)
    if args.csv:
        df.to_csv(args.csv, index=False)
    bad = int(df["counterexample"].sum()) if len(df) else 0
    return {"rows": len(df), "counterexamples": bad,
            "by_fixture": {k: int(v) for k, v in df.groupby("fixture")["ps"].count().items()}}, \
        0 if bad == 0 else 1


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with one subcommand per toolkit operation.

    Returns:
        An argparse.ArgumentParser whose subcommands set `func`.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--scan-cap", type=int, default=None, metavar="N",
                        help="Maximum scan shells (overrides TORIC_SCAN_CAP)")
    common.add_argument("--svg", type=Path, default=None, help="Render 2-D polygons to this file")
    common.add_argument("-o", "--output", type=Path, default=None,
                        help="Write the report to this file (stdout if omitted)")

    p = argparse.ArgumentParser(prog="toric_cli.py",
                                description="Acyclicity certificates for toric sheaves.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, actions=None, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        if actions:
            sp.add_argument("action", choices=actions)
        sp.set_defaults(func=func)
        return sp

    sp = add("fan", cmd_fan_validate, ["validate"])
    sp.add_argument("--fan", required=True)

    sp = add("divisor", cmd_divisor, ["poly", "nef", "cap", "cup"])
    sp.add_argument("--fan", required=True)
    sp.add_argument("--divisor", required=True, help="JSON file, fixture or 'a,b,...'")
    sp.add_argument("--other", default=None, help="Second divisor for cap/cup")

    sp = add("mori", cmd_mori, ["list", "extremal", "pair"])
    sp.add_argument("--fan", required=True)
    sp.add_argument("--divisor", default=None)

    sp = add("decoration", cmd_decoration, ["validate", "summary", "klyachko", "twist"])
    sp.add_argument("--fan", required=True)
    sp.add_argument("--decoration", required=True)
    sp.add_argument("--twist", default=None)

    sp = add("cohomology", cmd_cohomology)
    sp.add_argument("--fan", required=True)
    sp.add_argument("--sheaf", default=None)
    sp.add_argument("--decoration", default=None)
    sp.add_argument("--divisor", default=None)
    sp.add_argument("--twist", default=None)
    sp.add_argument("--engine", choices=["cech", "support", "polytope"], default=None)
    sp.add_argument("--degree", default=None, help="Single degree 'm1,m2,...'")

    sp = add("check", cmd_check, ["ps", "extremal", "nef-dec", "acyclic-dec", "bound", "geo"])
    sp.add_argument("--fan", required=True)
    sp.add_argument("--decoration", default=None)
    sp.add_argument("--sheaf", default=None)
    sp.add_argument("--twist", default=None, help="Twisting divisor D")

    sp = add("resolve", cmd_resolve)
    sp.add_argument("--fan", required=True)
    sp.add_argument("--decoration", required=True)
    sp.add_argument("--verify", action="store_true")

    sp = add("fixtures", cmd_fixtures, ["list", "dump"])
    sp.add_argument("name", nargs="?", default=None)

    sp = add("sweep", cmd_sweep)
    sp.add_argument("--fixtures", default=",".join(FAN_NAMES))
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--csv", type=Path, default=None)
    return p


# --- output -----------------------------------------------------------------

def render_text(report: dict) -> str:
    """Scalars as a two-column table, the first list of records as its own table."""
    scalars = {k: v for k, v in report.items() if not isinstance(v, (list, dict))}
    parts = []
    if scalars:
        parts.append(pd.DataFrame({"field": list(scalars), "value": list(scalars.values())})
                     .to_string(index=False))
    for key, value in report.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            parts.append(f"[{key}]\n" + pd.DataFrame(value).to_string(index=False))
            break
    return "\n\n".join(parts)


def _error_object(exc: Exception) -> str:
    return json.dumps({"error": type(exc).__name__, "message": str(exc)})


def main(argv: list[str] | None = None) -> int:
    """Runs one subcommand and returns its exit code.

    Toolkit errors and malformed input are reported on stderr as
    {"error": ..., "message": ...} with exit code 2.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=toric.LOG_LEVEL, format="%(levelname).1s %(name)s | %(message)s",
                        stream=sys.stderr)
    if args.scan_cap is not None:
        toric.SCAN_SHELL_CAP = args.scan_cap
    func: Callable[[Any], Result] = args.func
    try:
        report, code = func(args)
    except (ToricError, ValueError) as exc:
        sys.stderr.write(_error_object(exc) + "\n")
        return 2
    text = render_text(report) if args.format == "text" else codec.dumps(report)
    if args.output:
        args.output.write_text(text + "\n", encoding="utf-8")
        logger.info("report saved to %s", args.output)
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
