"""JSON encodings for every external data shape.

All numbers are exact: rationals travel as "num/den" strings, cyclotomic
numbers as order plus power-basis coordinates, polynomials as coefficient
lists.  Parsing rejects anything that is not an exact rational (the
coefficient domain is the union of the cyclotomic fields; floats or symbolic
strings are errors, not approximands).  Parse errors carry a JSON-path
location for the CLI's diagnostics.
"""

from __future__ import annotations

from fractions import Fraction

from .branch import Branch
from .cyclotomic import CycloNum, CycloPoly
from .decomposition import ExponentialFactor, FormalDecomposition
from .laurent import LaurentPoly
from .newton import NewtonPolygon
from .realization import FormalModuleSpec, FormalSummand, RoundTripReport
from .resolution import CorollaryReport, ResolutionTree

__all__ = [
    "SchemaError",
    "rational_to_json", "rational_from_json",
    "cyclo_to_json", "cyclo_from_json",
    "cyclopoly_to_json", "cyclopoly_from_json",
    "laurent_to_json", "laurent_from_json",
    "branch_to_json", "branch_from_json",
    "polygon_to_json", "polygon_from_json",
    "decomposition_to_json",
    "spec_to_json", "spec_from_json",
    "roundtrip_to_json",
    "tree_to_json",
    "corollary_to_json",
]


class SchemaError(ValueError):
    """Invalid JSON shape or value; carries the offending path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def rational_to_json(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(data, path: str) -> Fraction:
    if isinstance(data, bool):
        raise SchemaError(path, "expected an exact rational, got a boolean")
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, float):
        raise SchemaError(path, "floating-point values are not exact; "
                                "write rationals as \"num/den\"")
    if isinstance(data, str):
        try:
            return Fraction(data.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(path, f"not an exact rational: {data!r}") from None
    raise SchemaError(path, f"expected an exact rational, got {type(data).__name__}")


def _expect_dict(data, path: str) -> dict:
    if not isinstance(data, dict):
        raise SchemaError(path, f"expected an object, got {type(data).__name__}")
    return data


def _expect_int(data, path: str) -> int:
    if isinstance(data, bool) or not isinstance(data, int):
        raise SchemaError(path, f"expected an integer, got {data!r}")
    return data


def _expect_list(data, path: str) -> list:
    if not isinstance(data, list):
        raise SchemaError(path, f"expected an array, got {type(data).__name__}")
    return data


def _int_key(key: str, path: str) -> int:
    try:
        return int(key)
    except ValueError:
        raise SchemaError(path, f"expected an integer key, got {key!r}") from None


def cyclo_to_json(a: CycloNum) -> dict:
    return {
        "order": a.order,
        "coeffs": {str(e): rational_to_json(c) for e, c in sorted(a.coeffs.items())},
    }


def cyclo_from_json(data, path: str = "$") -> CycloNum:
    if isinstance(data, (int, str)):
        # Bare rationals are accepted as order-1 values.
        return CycloNum.from_rational(rational_from_json(data, path))
    obj = _expect_dict(data, path)
    order = _expect_int(obj.get("order"), f"{path}.order")
    coeffs = _expect_dict(obj.get("coeffs", {}), f"{path}.coeffs")
    terms = {}
    for key, val in coeffs.items():
        e = _int_key(key, f"{path}.coeffs.{key}")
        terms[e] = rational_from_json(val, f"{path}.coeffs.{key}")
    try:
        return CycloNum(order, terms)
    except ValueError as err:
        raise SchemaError(path, str(err)) from None


def cyclopoly_to_json(p: CycloPoly) -> list:
    return [cyclo_to_json(c) for c in p.coeffs]


def cyclopoly_from_json(data, path: str = "$") -> CycloPoly:
    items = _expect_list(data, path)
    return CycloPoly([cyclo_from_json(c, f"{path}[{i}]")
                      for i, c in enumerate(items)])


def laurent_to_json(f: LaurentPoly) -> dict:
    return {"terms": {str(e): cyclo_to_json(c) for e, c in sorted(f.terms.items())}}


def laurent_from_json(data, path: str = "$") -> LaurentPoly:
    obj = _expect_dict(data, path)
    terms_obj = _expect_dict(obj.get("terms", {}), f"{path}.terms")
    terms = {}
    for key, val in terms_obj.items():
        e = _int_key(key, f"{path}.terms.{key}")
        terms[e] = cyclo_from_json(val, f"{path}.terms.{key}")
    return LaurentPoly(terms)


def branch_to_json(b: Branch) -> dict:
    return {
        "label": b.label,
        "p": b.p,
        "q": b.q,
        "alpha": laurent_to_json(b.alpha),
        "delta": laurent_to_json(b.delta),
        "m": b.m,
        "zeta": cyclopoly_to_json(b.zeta),
    }


def branch_from_json(data, path: str = "$") -> Branch:
    obj = _expect_dict(data, path)
    label = obj.get("label")
    if not isinstance(label, str) or not label:
        raise SchemaError(f"{path}.label", "expected a nonempty string")
    return Branch(
        label=label,
        p=_expect_int(obj.get("p"), f"{path}.p"),
        q=_expect_int(obj.get("q"), f"{path}.q"),
        alpha=laurent_from_json(obj.get("alpha", {}), f"{path}.alpha"),
        delta=laurent_from_json(obj.get("delta", {}), f"{path}.delta"),
        m=_expect_int(obj.get("m"), f"{path}.m"),
        zeta=cyclopoly_from_json(obj.get("zeta", []), f"{path}.zeta"),
    )


def polygon_to_json(poly: NewtonPolygon) -> dict:
    return {"edges": [[w.numerator, w.denominator, h.numerator, h.denominator]
                      for w, h in poly.edges]}


def polygon_from_json(data, path: str = "$") -> NewtonPolygon:
    obj = _expect_dict(data, path)
    edges = []
    for i, edge in enumerate(_expect_list(obj.get("edges", []), f"{path}.edges")):
        nums = _expect_list(edge, f"{path}.edges[{i}]")
        if len(nums) != 4:
            raise SchemaError(f"{path}.edges[{i}]", "expected [w_num, w_den, h_num, h_den]")
        wn, wd, hn, hd = (_expect_int(x, f"{path}.edges[{i}][{j}]")
                          for j, x in enumerate(nums))
        edges.append((Fraction(wn, wd), Fraction(hn, hd)))
    return NewtonPolygon.from_edges(edges)


def factor_to_json(f: ExponentialFactor) -> dict:
    out = {
        "alpha": laurent_to_json(f.alpha),
        "members": [[label, i] for label, i in f.members],
        "rank_branchwise": f.rank_branchwise,
        "rank_distinct": f.rank_distinct,
        "rank_diverges": f.rank_diverges,
        "pole_order": f.pole_order,
    }
    if f.charpoly is not None:
        out["charpoly"] = cyclopoly_to_json(f.charpoly)
    if f.charpoly_distinct is not None:
        out["charpoly_distinct"] = cyclopoly_to_json(f.charpoly_distinct)
    return out


def decomposition_to_json(dec: FormalDecomposition) -> dict:
    out = {
        "p": dec.p,
        "star": dec.star_holds,
        "factors": [factor_to_json(f) for f in dec.factors],
    }
    if dec.star_witness is not None:
        out["star_witness"] = [list(dec.star_witness[0]), list(dec.star_witness[1])]
    return out


def spec_to_json(spec: FormalModuleSpec) -> dict:
    return {
        "p": spec.p,
        "summands": [
            {"alpha": laurent_to_json(s.alpha), "rank": s.rank,
             "charpoly": cyclopoly_to_json(s.charpoly)}
            for s in spec.summands
        ],
        "regular_rank": spec.regular_rank,
    }


def spec_from_json(data, path: str = "$") -> FormalModuleSpec:
    obj = _expect_dict(data, path)
    summands = []
    for i, s in enumerate(_expect_list(obj.get("summands", []), f"{path}.summands")):
        sobj = _expect_dict(s, f"{path}.summands[{i}]")
        summands.append(FormalSummand(
            alpha=laurent_from_json(sobj.get("alpha", {}),
                                    f"{path}.summands[{i}].alpha"),
            rank=_expect_int(sobj.get("rank"), f"{path}.summands[{i}].rank"),
            charpoly=cyclopoly_from_json(sobj.get("charpoly", []),
                                         f"{path}.summands[{i}].charpoly"),
        ))
    regular = obj.get("regular_rank", 0)
    return FormalModuleSpec(
        p=_expect_int(obj.get("p"), f"{path}.p"),
        summands=tuple(summands),
        regular_rank=_expect_int(regular, f"{path}.regular_rank"),
    )


def roundtrip_to_json(rep: RoundTripReport) -> dict:
    out = {
        "ok": rep.ok,
        "spec_ramification": rep.spec_ramification,
        "computed_ramification": rep.computed_ramification,
        "matched": list(rep.matched),
        "missing": list(rep.missing),
        "extra": list(rep.extra),
        "conflicts": list(rep.conflicts),
    }
    if rep.decomposition is not None:
        out["decomposition"] = decomposition_to_json(rep.decomposition)
    return out


def _tag_to_json(tag) -> dict:
    out = {"kind": tag.kind.value, "pole_u": tag.pole_u, "pole_v": tag.pole_v}
    if tag.value is not None:
        out["value"] = cyclo_to_json(tag.value)
    if tag.kind.value == "holomorphic-unit-plus-coordinate":
        out["transverse"] = tag.transverse
    if tag.detail:
        out["detail"] = tag.detail
    return out


def tree_to_json(tree: ResolutionTree) -> dict:
    return {
        "alpha": laurent_to_json(tree.alpha),
        "pole_order": tree.q,
        "blow_ups": len(tree.steps),
        "steps": [
            {
                "index": s.index,
                "chart": s.chart,
                "shift": cyclo_to_json(s.shift),
                "crossing": {
                    "components": [s.crossing.left, s.crossing.right],
                    "tag": _tag_to_json(s.crossing.tag),
                    "projection_orders": list(s.crossing.pi1_orders),
                },
            }
            for s in tree.steps
        ],
        "components": [
            {"index": c.index, "pole_order": c.pole_order,
             "projection_order": c.pi1_order,
             "distinguished": c.index == tree.distinguished}
            for c in tree.components
        ],
        "distinguished": tree.distinguished,
        "meeting_point": {
            "components": [tree.p_point.left, tree.p_point.right],
            "tag": _tag_to_json(tree.p_point.tag),
        },
        "axis_points": [
            {"component": ap.component, "tag": _tag_to_json(ap.tag)}
            for ap in tree.axis_points
        ],
        "value_chart": {
            "num0": cyclo_to_json(tree.ed_chart.num0),
            "numlin": cyclo_to_json(tree.ed_chart.numlin),
            "den0": cyclo_to_json(tree.ed_chart.den0),
        },
    }


def tree_to_text(tree: ResolutionTree) -> str:
    lines = [f"resolution of pole order {tree.q}: {len(tree.steps)} point blow-ups"]
    for s in tree.steps:
        tag = s.crossing.tag
        lines.append(
            f"  step {s.index}: chart {s.chart}, recenter v by {s.shift!r}; "
            f"crossing E{s.crossing.left}/E{s.crossing.right}: "
            f"{tag.kind.value} (u^{tag.pole_u} v^{tag.pole_v})"
        )
    for c in tree.components:
        mark = " [distinguished]" if c.index == tree.distinguished else ""
        lines.append(f"  component E{c.index}: pole order {c.pole_order}{mark}")
    for ap in tree.axis_points:
        lines.append(f"  axis crossing on E{ap.component}: {ap.tag.kind.value}")
    return "\n".join(lines) + "\n"


def corollary_to_json(rep: CorollaryReport) -> dict:
    return {
        "alpha": laurent_to_json(rep.alpha),
        "consistent": rep.consistent,
        "membership_agrees": rep.membership_agrees,
        "star_agrees": rep.star_agrees,
        "members_by_blowup": sorted(rep.members_by_blowup),
        "members_by_polar": sorted(rep.members_by_polar),
        "star_by_blowup": rep.star_by_blowup,
        "star_by_polar": rep.star_by_polar,
        "points": [
            {"label": label, "point": cyclo_to_json(point)}
            for label, point in rep.points
        ],
    }
