"""Blow-up resolution oracle for functions 1/y - alpha(x) at the origin.

For a purely polar alpha of pole order q, writing g = (x^q - y*beta(x)) /
(x^q y) with beta(0) != 0, a chain of exactly 2q point blow-ups brings g
into monomial-pole normal form everywhere except along the last exceptional
component, on which g extends holomorphically with a nonvanishing transverse
derivative.  That distinguished component meets the rest of the total
transform of the axes in a single point, where g has a first-order pole along
the neighbouring component.

The chain is completely mechanical: every center is the unique intersection
of the numerator curve's strict transform with the newest exceptional
component, found by solving a linear equation; every chart step is the map
x = u, y = u*v after a recentering translation of v.  Strict transforms of
branch parametrizations are replayed through the same chart script on
truncated power series with explicit known-prefix tracking, so a coefficient
beyond the declared truncation is an error, never a silent wrong value.

The stratified Euler-characteristic and monodromy-zeta assemblies over the
distinguished component live here too; they telescope to values depending
only on the branch multiplicities and monodromy polynomials, which the tests
verify against the direct formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .branch import Branch
from .cyclotomic import CycloNum, CycloPoly, PolyFraction
from .decomposition import StarConditionError
from .laurent import (
    BiPoly,
    BiRational,
    CHART_FIRST,
    CHART_SECOND,
    ClassificationError,
    LaurentPoly,
    NormalFormKind,
    NormalFormTag,
)

__all__ = [
    "ResolutionTree",
    "StrictTransformResult",
    "CorollaryReport",
    "PointKind",
    "TruncationError",
    "build_resolution",
    "strict_transform",
    "verify_corollary",
    "local_chi",
    "chi_psi",
    "zeta_psi",
]


class TruncationError(ValueError):
    """A decision needed series coefficients beyond the declared truncation."""

    def __init__(self, required_truncation: int, message: str = ""):
        self.required_truncation = required_truncation
        super().__init__(
            message or
            f"holomorphic part must be known to order {required_truncation}"
        )


@dataclass(frozen=True)
class CrossingRecord:
    """Intersection of the newest exceptional component with the previous
    part of the total transform (component index 0 is the strict transform of
    the first coordinate axis)."""

    left: int
    right: int
    tag: NormalFormTag
    pi1_orders: tuple[int, int]


@dataclass(frozen=True)
class BlowUpStep:
    index: int
    shift: CycloNum
    chart: str
    crossing: CrossingRecord


@dataclass(frozen=True)
class ComponentRecord:
    index: int
    pole_order: int
    pi1_order: int


@dataclass(frozen=True)
class AxisPointRecord:
    """Crossing of an exceptional component with the strict transform of the
    second coordinate axis that survives to the final surface."""

    component: int
    tag: NormalFormTag


@dataclass(frozen=True)
class EdChart:
    """Affine description of g on the distinguished component: the value at
    coordinate v0 is (num0 + numlin*v0)/den0, with numlin != 0."""

    num0: CycloNum
    numlin: CycloNum
    den0: CycloNum

    def value(self, v0: CycloNum) -> CycloNum:
        return (self.num0 + self.numlin * v0) / self.den0


@dataclass(frozen=True)
class ResolutionTree:
    alpha: LaurentPoly
    q: int
    steps: tuple[BlowUpStep, ...]
    components: tuple[ComponentRecord, ...]
    distinguished: int
    p_point: CrossingRecord
    axis_points: tuple[AxisPointRecord, ...]
    ed_chart: EdChart

    @property
    def shifts(self) -> list[CycloNum]:
        return [s.shift for s in self.steps]

    def normal_forms(self) -> dict:
        """Marked points and generic component tags of the final surface."""
        forms: dict = {}
        for comp in self.components:
            if comp.index == self.distinguished:
                forms[("generic", comp.index)] = NormalFormTag(
                    NormalFormKind.HOLOMORPHIC_COORD, 0, 0, None, True)
            else:
                forms[("generic", comp.index)] = NormalFormTag(
                    NormalFormKind.POLE_ONE_VAR, comp.pole_order, 0)
        for step in self.steps:
            key = ("P",) if step.index == self.distinguished \
                else ("crossing", step.crossing.left, step.crossing.right)
            forms[key] = step.crossing.tag
        for ap in self.axis_points:
            forms[("axis", ap.component)] = ap.tag
        return forms


def _structural(cond: bool, message: str):
    if not cond:
        raise ClassificationError(None, f"resolution structure violated: {message}")


def build_resolution(alpha: LaurentPoly) -> ResolutionTree:
    """Run the 2q-step blow-up chain for g = 1/y - alpha(x).

    alpha must be nonzero and purely polar.  Any failure of the expected
    normal forms raises ClassificationError: it signals a bug, not bad input.
    """
    if alpha.is_zero() or not alpha.polar_part() == alpha:
        raise ValueError("alpha must be nonzero and purely polar")
    q = alpha.pole_order()

    # beta(x) = x^q * alpha(x); g = (x^q - y beta) / (x^q y).
    beta = {e + q: c for e, c in alpha.terms.items()}
    num = BiPoly({(q, 0): 1}) - BiPoly({(e, 1): c for e, c in beta.items()})
    den = BiPoly.monomial(q, 1)
    g = BiRational(num, den)
    px = (1, 0)  # first-projection pullback stays the monomial u^1

    steps: list[BlowUpStep] = []
    components: list[ComponentRecord] = []
    axis_points: list[AxisPointRecord] = []
    shift = CycloNum.zero()
    index = 0

    while True:
        index += 1
        _structural(index <= 2 * q, f"chain exceeded {2 * q} blow-ups")

        # Crossing of the new component with the previous total transform,
        # seen in the complementary chart.
        g2 = g.compose_monomial_map(CHART_SECOND, (0, shift))
        tag2 = g2.classify_at_point((0, 0))
        crossing = CrossingRecord(
            left=index - 1, right=index, tag=tag2,
            pi1_orders=(px[0], px[0] + px[1]),
        )

        g = g.compose_monomial_map(CHART_FIRST, (0, shift))
        px = (px[0] + px[1], px[1])
        _structural(px == (1, 0), "first projection left the monomial form")

        cu, cv = g.den.content()
        num_cu, _ = g.num.content()
        _structural(num_cu == 0, "numerator vanishes along the new component")
        den_res_at0 = g.den.divide_monomial(cu, cv).eval_first(CycloNum.zero())
        _structural(den_res_at0.support() == [0],
                    "denominator has a non-axis zero on the new component")
        num_at0 = g.num.eval_first(CycloNum.zero())
        _structural(num_at0.support() in ([0, 1], [1]) and
                    not num_at0.coeff(1).is_zero(),
                    "numerator trace on the new component not affine")
        components.append(ComponentRecord(index=index, pole_order=cu, pi1_order=px[0]))
        steps.append(BlowUpStep(index=index, shift=shift, chart=CHART_FIRST,
                                crossing=crossing))

        if cu == 0:
            # Distinguished component: g extends with an affine value map.
            _structural(cv == 0, "distinguished component still meets an axis")
            _structural(index == 2 * q, f"chain closed after {index} != {2 * q} steps")
            ed = EdChart(num0=num_at0.const_term(), numlin=num_at0.coeff(1),
                         den0=den_res_at0.const_term())
            tree = ResolutionTree(
                alpha=alpha, q=q, steps=tuple(steps),
                components=tuple(components), distinguished=index,
                p_point=crossing, axis_points=tuple(axis_points), ed_chart=ed,
            )
            _check_final_tags(tree)
            return tree

        # Next center: the unique root of the numerator on the new component.
        shift = -num_at0.const_term() / num_at0.coeff(1)
        if cv >= 1 and not shift.is_zero():
            # The axis crossing at the origin survives; classify and keep it.
            axis_points.append(AxisPointRecord(
                component=index, tag=g.classify_at_point((0, 0))))


def _check_final_tags(tree: ResolutionTree) -> None:
    # Every recorded point must be one of the guaranteed normal forms, with
    # exactly one distinguished component and its single meeting point.
    for step in tree.steps[:-1]:
        _structural(
            step.crossing.tag.kind in (NormalFormKind.POLE_TWO_VAR,
                                       NormalFormKind.POLE_ONE_VAR),
            f"crossing at step {step.index} not a monomial pole",
        )
    p_tag = tree.p_point.tag
    _structural(p_tag.kind is NormalFormKind.POLE_ONE_VAR,
                "meeting point of the distinguished component not a "
                "first-order one-variable pole")
    _structural(p_tag.pole_u == 1 and p_tag.pole_v == 0,
                "pole at the meeting point has unexpected orders")
    for ap in tree.axis_points:
        _structural(ap.tag.kind is NormalFormKind.POLE_TWO_VAR,
                    "surviving axis crossing not a two-variable pole")
    poles = [c.pole_order for c in tree.components]
    _structural(poles.count(0) == 1 and poles[-1] == 0,
                "distinguished component not unique and last")


@dataclass(frozen=True)
class StrictTransformResult:
    label: str
    meets_ed: bool
    point_on_ed: CycloNum | None = None


class _Series:
    """Truncated power series with an explicit known-prefix bound.

    Coefficients at exponents < known_below are exact; beyond that they are
    unknown, and reading one raises TruncationError naming the truncation the
    caller would have needed.
    """

    __slots__ = ("terms", "known_below", "_depth_offset")

    def __init__(self, terms: dict[int, CycloNum], known_below: int,
                 depth_offset: int = 0):
        self.terms = {e: c for e, c in terms.items()
                      if e < known_below and not c.is_zero()}
        self.known_below = known_below
        self._depth_offset = depth_offset

    def const(self) -> CycloNum:
        if self.known_below < 1:
            raise TruncationError(self._depth_offset + (1 - self.known_below))
        return self.terms.get(0, CycloNum.zero())

    def minus_const(self, c: CycloNum) -> "_Series":
        terms = dict(self.terms)
        new = self.const() - c
        if new.is_zero():
            terms.pop(0, None)
        else:
            terms[0] = new
        return _Series(terms, self.known_below, self._depth_offset)

    def divide_by_var(self) -> "_Series":
        return _Series({e - 1: c for e, c in self.terms.items()},
                       self.known_below - 1, self._depth_offset)


def _initial_y_series(b: Branch, truncation: int) -> _Series:
    """y(t) = t^q / (B(t) + t^q delta(t)) as a truncated series.

    B is the polynomial t^q * alpha(t); delta coefficients are exact up to
    the declared truncation, which bounds the known prefix.
    """
    qb = b.q
    denom: dict[int, CycloNum] = {e + qb: c for e, c in b.alpha.terms.items()}
    for e, c in b.delta.terms.items():
        k = e + qb
        denom[k] = denom.get(k, CycloNum.zero()) + c
    known = qb + truncation + 1
    c0 = denom.get(0)
    if c0 is None or c0.is_zero():
        raise ValueError(f"branch {b.label}: alpha has no pole of order q")
    inv: dict[int, CycloNum] = {0: c0.inv()}
    for k in range(1, known):
        acc = CycloNum.zero()
        for i in range(1, k + 1):
            di = denom.get(i)
            if di is not None and (k - i) in inv:
                acc = acc + di * inv[k - i]
        if not acc.is_zero():
            inv[k] = -acc * inv[0]
    terms = {e + qb: c for e, c in inv.items()}
    return _Series(terms, known + qb, depth_offset=truncation)


def strict_transform(b: Branch, tree: ResolutionTree,
                     truncation: int = 8) -> StrictTransformResult:
    """Replay an unramified branch parametrization through the blow-up chain.

    The branch must have p = 1 (pass ramified data through unramification
    first).  It meets the distinguished component exactly when its limit
    point tracks every blow-up center; the intersection coordinate is then
    the constant term of the transformed second coordinate.
    """
    if b.p != 1:
        raise ValueError("strict transforms are defined for branches with p = 1")
    v = _initial_y_series(b, truncation)
    for step in tree.steps:
        v = v.minus_const(step.shift)
        if not v.const().is_zero():
            return StrictTransformResult(b.label, False, None)
        v = v.divide_by_var()
    return StrictTransformResult(b.label, True, v.const())


@dataclass(frozen=True)
class CorollaryReport:
    alpha: LaurentPoly
    membership_agrees: bool
    star_agrees: bool
    members_by_blowup: tuple[str, ...]
    members_by_polar: tuple[str, ...]
    star_by_blowup: bool
    star_by_polar: bool
    points: tuple[tuple[str, CycloNum], ...]

    @property
    def consistent(self) -> bool:
        return self.membership_agrees and self.star_agrees


def verify_corollary(branches: list[Branch], alpha: LaurentPoly,
                     truncation: int = 8) -> CorollaryReport:
    """Check the blow-up oracle against polar-part grouping.

    Membership of a branch in the factor of ``alpha`` must coincide with its
    strict transform meeting the distinguished component, and the separation
    condition restricted to those members must coincide with the meeting
    points being pairwise distinct.  Disagreement flags a bug, not bad input.
    """
    tree = build_resolution(alpha)
    results = [strict_transform(b, tree, truncation) for b in branches]
    by_blowup = tuple(r.label for r in results if r.meets_ed)
    by_polar = tuple(b.label for b in branches if b.alpha == alpha)

    members = [b for b in branches if b.label in by_polar]
    shifted = []
    for b in members:
        shifted.append(b.alpha + LaurentPoly({0: b.delta.const_term()}))
    star_polar = True
    for i in range(len(shifted)):
        for j in range(i + 1, len(shifted)):
            if shifted[i] == shifted[j]:
                star_polar = False
    points = [(r.label, r.point_on_ed) for r in results if r.meets_ed]
    star_blowup = True
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i][1] == points[j][1]:
                star_blowup = False

    return CorollaryReport(
        alpha=alpha,
        membership_agrees=set(by_blowup) == set(by_polar),
        star_agrees=star_blowup == star_polar,
        members_by_blowup=by_blowup,
        members_by_polar=by_polar,
        star_by_blowup=star_blowup,
        star_by_polar=star_polar,
        points=tuple(points),
    )


class PointKind(Enum):
    """Stratum types entering the nearby-cycle bookkeeping."""

    SMOOTH_POLE = "smooth point, monomial pole along the projection divisor"
    CROSSING_POLE = "normal crossing, monomial pole in both variables"
    DISTINGUISHED_MEET = "meeting point of the distinguished component"
    CHART_POINT = "point of the distinguished component"


def local_chi(kind: PointKind, r: int, local_m=()) -> int:
    """Euler characteristic of the local nearby-cycle complex at one point.

    Pole strata kill the complex; the meeting point contributes -r; a point
    of the distinguished component contributes the generic rank minus the
    multiplicities of the strict transforms through it.
    """
    if kind is PointKind.SMOOTH_POLE or kind is PointKind.CROSSING_POLE:
        return 0
    if kind is PointKind.DISTINGUISHED_MEET:
        return -r
    if kind is PointKind.CHART_POINT:
        return r - sum(local_m)
    raise ValueError(f"unknown point kind {kind!r}")


def _point_clusters(transforms) -> list[list[StrictTransformResult]]:
    clusters: list[list[StrictTransformResult]] = []
    for res in transforms:
        if not res.meets_ed:
            continue
        for cl in clusters:
            if cl[0].point_on_ed == res.point_on_ed:
                cl.append(res)
                break
        else:
            clusters.append([res])
    return clusters


def chi_psi(tree: ResolutionTree, transforms, multiplicities, r: int) -> int:
    """Stratified Euler characteristic over the distinguished component.

    ``transforms`` are StrictTransformResult records; ``multiplicities`` maps
    branch labels to conormal multiplicities.  Off-component strata are
    checked to vanish via the tree's tags; the component itself contributes
    its meeting point, the strict-transform points, and the open stratum of
    a rational curve minus k+1 points.
    """
    for key, tag in tree.normal_forms().items():
        if key[0] in ("crossing", "axis") or \
                (key[0] == "generic" and key[1] != tree.distinguished):
            kind = PointKind.CROSSING_POLE if tag.pole_v else PointKind.SMOOTH_POLE
            assert local_chi(kind, r) == 0
    clusters = _point_clusters(transforms)
    k = len(clusters)
    total = local_chi(PointKind.DISTINGUISHED_MEET, r)
    for cl in clusters:
        total += local_chi(PointKind.CHART_POINT, r,
                           [multiplicities[res.label] for res in cl])
    total += (1 - k) * r  # chi of the component minus k+1 points, times rank
    return total


def zeta_psi(tree: ResolutionTree, transforms, zetas,
             zeta_r: CycloPoly) -> PolyFraction:
    """Monodromy zeta assembled over the distinguished component.

    Requires pairwise-distinct meeting points among the transforms (the
    separation condition); ``zetas`` maps labels to the branch monodromy
    polynomials and ``zeta_r`` is the generic-stratum polynomial, whose
    contributions must cancel exactly in the reduced fraction.
    """
    clusters = _point_clusters(transforms)
    if any(len(cl) > 1 for cl in clusters):
        bad = next(cl for cl in clusters if len(cl) > 1)
        raise StarConditionError(
            "separation condition fails: "
            + " and ".join(res.label for res in bad)
            + " meet the distinguished component at one point"
        )
    k = len(clusters)
    ratio = PolyFraction(CycloPoly.one(), zeta_r)
    for cl in clusters:
        ratio = ratio * PolyFraction(zeta_r, zetas[cl[0].label])
    ratio = ratio * PolyFraction(zeta_r) ** (1 - k)
    return ratio
