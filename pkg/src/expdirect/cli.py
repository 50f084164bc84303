"""Command-line interface: JSON in, deterministic reports out.

Exit codes: 0 on success, 2 for parse or validation failures (with a JSON
path in the message), 3 when the independent blow-up oracle disagrees with
the symbolic computation (which flags a bug, not a data problem).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .branch import Branch, DEFAULT_TRUNCATION, validate_all
from .cyclotomic import OrderLimitError, root_of_unity, set_order_limit
from .decomposition import FormalDecomposition, decompose
from .laurent import LaurentPoly, subst_root_power
from .newton import (
    NewtonPolygon,
    irregularity,
    polygon_from_branches,
    polygon_svg,
    slopes,
)
from .realization import NormalizationConflictError, realize, roundtrip_check
from .resolution import build_resolution, verify_corollary
from . import serialize
from .serialize import SchemaError

__all__ = ["main", "run_point", "run_file", "emit_svg", "PointReport", "Options"]


@dataclass(frozen=True)
class Options:
    truncation: int = DEFAULT_TRUNCATION
    max_order: int | None = None
    oracle: bool = True


@dataclass(frozen=True)
class PointReport:
    c: str
    k: int
    warnings: tuple[str, ...]
    polygon: NewtonPolygon
    decomposition: FormalDecomposition
    oracle: tuple | None
    consistent: bool


def _parse_problem(data, options: Options):
    obj = serialize._expect_dict(data, "$")
    raw_points = serialize._expect_list(obj.get("points", []), "$.points")
    file_opts = serialize._expect_dict(obj.get("options", {}), "$.options")
    truncation = file_opts.get("truncation", options.truncation)
    if not isinstance(truncation, int) or truncation < 0:
        raise SchemaError("$.options.truncation", "expected a nonnegative integer")
    max_order = file_opts.get("max_order", options.max_order)
    if max_order is not None:
        if not isinstance(max_order, int) or max_order < 1:
            raise SchemaError("$.options.max_order", "expected a positive integer")
        set_order_limit(max_order)  # applies to parsing as well
    merged = Options(truncation=truncation, max_order=max_order,
                     oracle=options.oracle)

    points = []
    seen = set()
    for i, pt in enumerate(raw_points):
        pobj = serialize._expect_dict(pt, f"$.points[{i}]")
        c = pobj.get("c")
        if not isinstance(c, str) or not c:
            raise SchemaError(f"$.points[{i}].c", "expected a nonempty string")
        k = serialize._expect_int(pobj.get("k", 0), f"$.points[{i}].k")
        if (c, k) in seen:
            raise SchemaError(f"$.points[{i}]", f"duplicate point (c={c!r}, k={k})")
        seen.add((c, k))
        branches = [
            serialize.branch_from_json(b, f"$.points[{i}].branches[{j}]")
            for j, b in enumerate(serialize._expect_list(
                pobj.get("branches", []), f"$.points[{i}].branches"))
        ]
        points.append((c, k, branches))
    return points, merged


def _validation_failures(branches, truncation):
    msgs = []
    for report in validate_all(branches, truncation):
        if not report.valid:
            msgs.extend(f"branch {report.label}: {e}" for e in report.errors)
    return msgs


def _unramified_oracle_branches(branches, p):
    """p = 1 branch copies with the holomorphic part substituted at depth."""
    out = []
    for b in branches:
        k = p // b.p
        for i in range(1, b.p + 1):
            xi = root_of_unity(b.p, i)
            alpha_sub = subst_root_power(b.alpha, xi, k)
            delta_sub = subst_root_power(b.delta, xi, k) if not b.delta.is_zero() \
                else LaurentPoly.zero()
            out.append(Branch(
                label=f"{b.label}#{i}",
                p=1,
                q=alpha_sub.pole_order(),
                alpha=alpha_sub,
                delta=delta_sub,
                m=b.m,
                zeta=b.zeta,
            ))
    return out


def run_point(c: str, k: int, branches, options: Options) -> PointReport:
    """Invariants, decomposition, and optional oracle checks for one germ."""
    warnings = []
    for report in validate_all(branches, options.truncation):
        warnings.extend(f"branch {report.label}: {w}" for w in report.warnings)
    polygon = polygon_from_branches(branches)
    dec = decompose(branches, truncation=options.truncation)

    oracle = None
    consistent = True
    if options.oracle and branches:
        flat = _unramified_oracle_branches(branches, dec.p)
        depth = (options.truncation + 1) * max(dec.p // b.p for b in branches) - 1
        reports = []
        for factor in dec.factors:
            rep = verify_corollary(flat, factor.alpha, truncation=depth)
            reports.append(rep)
            consistent = consistent and rep.consistent
        oracle = tuple(reports)

    return PointReport(
        c=c, k=k, warnings=tuple(warnings), polygon=polygon,
        decomposition=dec, oracle=oracle, consistent=consistent,
    )


def point_report_to_json(rep: PointReport) -> dict:
    out = {
        "c": rep.c,
        "k": rep.k,
        "warnings": list(rep.warnings),
        "newton_polygon": serialize.polygon_to_json(rep.polygon),
        "slopes": [serialize.rational_to_json(s) for s in sorted(slopes(rep.polygon))],
        "irregularity": serialize.rational_to_json(irregularity(rep.polygon)),
        "decomposition": serialize.decomposition_to_json(rep.decomposition),
        "consistent": rep.consistent,
    }
    if rep.oracle is not None:
        out["oracle"] = [serialize.corollary_to_json(r) for r in rep.oracle]
    return out


def run_file(path: str, options: Options):
    """Process a problem file; returns (document, exit_code)."""
    with open(path, "rb") as fh:
        data = json.load(fh)
    points, merged = _parse_problem(data, options)

    failures = []
    for c, k, branches in points:
        for msg in _validation_failures(branches, merged.truncation):
            failures.append(f"point (c={c!r}, k={k}): {msg}")
    if failures:
        raise SchemaError("$.points", "; ".join(failures))

    reports = [run_point(c, k, branches, merged)
               for c, k, branches in sorted(points, key=lambda t: (t[0], t[1]))]
    doc = {"points": [point_report_to_json(r) for r in reports]}
    code = 0 if all(r.consistent for r in reports) else 3
    return doc, code


def emit_svg(polygon: NewtonPolygon, path: str) -> None:
    Path(path).write_text(polygon_svg(polygon))


def _svg_path(base: str, c: str, k: int, many: bool) -> str:
    if not many:
        return base
    p = Path(base)
    safe_c = "".join(ch if ch.isalnum() else "_" for ch in c)
    return str(p.with_name(f"{p.stem}-{safe_c}-k{k}{p.suffix or '.svg'}"))


def _dump(doc, out_path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    with open(path, "rb") as fh:
        return json.load(fh)


def _cmd_validate(args, options: Options) -> int:
    points, merged = _parse_problem(_load_json(args.input), options)
    doc = {"points": []}
    ok = True
    for c, k, branches in sorted(points, key=lambda t: (t[0], t[1])):
        reports = validate_all(branches, merged.truncation)
        ok = ok and all(r.valid for r in reports)
        doc["points"].append({
            "c": c, "k": k,
            "branches": [
                {"label": r.label, "valid": r.valid,
                 "errors": list(r.errors), "warnings": list(r.warnings),
                 "support_divisor": r.support_divisor}
                for r in reports
            ],
        })
    _dump(doc, args.output)
    return 0 if ok else 2


def _cmd_invariants(args, options: Options) -> int:
    doc, _ = run_file(args.input, Options(
        truncation=options.truncation, max_order=options.max_order, oracle=False))
    slim = {"points": [
        {key: pt[key] for key in
         ("c", "k", "newton_polygon", "slopes", "irregularity", "warnings")}
        for pt in doc["points"]
    ]}
    _dump(slim, args.output)
    _write_svgs(args, doc)
    return 0


def _cmd_decompose(args, options: Options) -> int:
    doc, _ = run_file(args.input, Options(
        truncation=options.truncation, max_order=options.max_order, oracle=False))
    slim = {"points": [
        {key: pt[key] for key in ("c", "k", "decomposition", "warnings")}
        for pt in doc["points"]
    ]}
    _dump(slim, args.output)
    return 0


def _write_svgs(args, doc) -> None:
    if not getattr(args, "svg", None):
        return
    pts = doc["points"]
    for pt in pts:
        poly = serialize.polygon_from_json(pt["newton_polygon"], "$")
        emit_svg(poly, _svg_path(args.svg, pt["c"], pt["k"], len(pts) > 1))


def _cmd_report(args, options: Options) -> int:
    doc, code = run_file(args.input, options)
    _dump(doc, args.output)
    _write_svgs(args, doc)
    return code


def _cmd_verify(args, options: Options) -> int:
    doc, code = run_file(args.input, Options(
        truncation=options.truncation, max_order=options.max_order, oracle=True))
    slim = {"points": [
        {"c": pt["c"], "k": pt["k"], "oracle": pt.get("oracle", []),
         "consistent": pt["consistent"]}
        for pt in doc["points"]
    ]}
    _dump(slim, args.output)
    return code


def _cmd_resolve(args, options: Options) -> int:
    data = _load_json(args.input)
    obj = serialize._expect_dict(data, "$")
    alpha = serialize.laurent_from_json(obj.get("alpha", {}), "$.alpha")
    if alpha.is_zero() or alpha.polar_part() != alpha:
        raise SchemaError("$.alpha", "expected a nonzero purely polar part")
    tree = build_resolution(alpha)
    if args.text:
        text = serialize.tree_to_text(tree)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _dump(serialize.tree_to_json(tree), args.output)
    return 0


def _cmd_realize(args, options: Options) -> int:
    spec = serialize.spec_from_json(_load_json(args.input), "$")
    try:
        branches = realize(spec)
    except (NormalizationConflictError, ValueError) as err:
        raise SchemaError("$.summands", str(err)) from None
    _dump({"branches": [serialize.branch_to_json(b) for b in branches]},
          args.output)
    return 0


def _cmd_roundtrip(args, options: Options) -> int:
    spec = serialize.spec_from_json(_load_json(args.input), "$")
    try:
        from .realization import validate_spec

        validate_spec(spec)
    except ValueError as err:
        raise SchemaError("$", str(err)) from None
    rep = roundtrip_check(spec)
    _dump(serialize.roundtrip_to_json(rep), args.output)
    if rep.conflicts:
        return 2
    return 0 if rep.ok else 3


_COMMANDS = {
    "validate": _cmd_validate,
    "invariants": _cmd_invariants,
    "decompose": _cmd_decompose,
    "resolve": _cmd_resolve,
    "verify": _cmd_verify,
    "realize": _cmd_realize,
    "roundtrip": _cmd_roundtrip,
    "report": _cmd_report,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expdirect",
        description="Exact formal invariants of exponential-type direct "
                    "images from branch-germ data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("validate", "check branch data against the schema and invariants"),
        ("invariants", "Newton polygon, slopes, irregularity per point"),
        ("decompose", "exponential factors, ranks, monodromy per point"),
        ("resolve", "blow-up chain for a polar part ({\"alpha\": ...} input)"),
        ("verify", "cross-check the decomposition with the blow-up oracle"),
        ("realize", "branch data realizing a formal description"),
        ("roundtrip", "realize then decompose and compare"),
        ("report", "full pipeline: invariants, decomposition, oracle"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION,
                       help="declared exactness order of holomorphic parts")
        p.add_argument("--max-order", type=int, default=None,
                       help="cap on cyclotomic orders")
        if name in ("invariants", "report"):
            p.add_argument("--svg", help="write the Newton polygon(s) as SVG")
        if name in ("verify", "report"):
            p.add_argument("--oracle", choices=["on", "off"], default="on",
                           help="run the blow-up cross-check")
        if name == "resolve":
            p.add_argument("--text", action="store_true",
                           help="indented text instead of JSON")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    options = Options(
        truncation=args.truncation,
        max_order=args.max_order,
        oracle=getattr(args, "oracle", "on") == "on",
    )
    if args.max_order is not None:
        set_order_limit(args.max_order)
    try:
        return _COMMANDS[args.command](args, options)
    except (SchemaError, json.JSONDecodeError, FileNotFoundError,
            OrderLimitError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
