"""Acceptance gate: every criterion at its stated size and tolerance.

All checks are exact (zero tolerance) except the numeric agreement check,
whose threshold is 1e-30 at 45 working digits with an interval-safety margin.
Each test prints one PASS line; run with `pytest tests/test_acceptance.py -v`.
"""

import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from expdirect.branch import ramification_order, unramify
from expdirect.cyclotomic import CycloNum, CycloPoly, PolyFraction, root_of_unity
from expdirect.decomposition import decompose, exponential_factors, star_condition
from expdirect.laurent import LaurentPoly, NormalFormKind
from expdirect.newton import (
    NewtonPolygon,
    irregularity,
    minkowski_sum,
    polygon_from_branches,
    slopes,
)
from expdirect.realization import FormalModuleSpec, FormalSummand, realize, \
    roundtrip_check
from expdirect.resolution import (
    build_resolution,
    chi_psi,
    strict_transform,
    verify_corollary,
    zeta_psi,
)
from tests.helpers import (
    mk,
    numeric,
    rand_branch,
    rand_cyclo,
    rand_monic,
    rand_polar,
    worked_example_branches,
)
from tests.test_newton import grid_minkowski_vertices
from tests.test_realization import rand_spec


def _report(n: int, name: str):
    print(f"ACCEPTANCE {n} ({name}): PASS")


def _branch_corpus(rng, count):
    for _ in range(count):
        yield [rand_branch(rng, f"l{i}", max_p=4, max_q=6, max_m=3)
               for i in range(rng.randint(1, 6))]


def test_criterion_1_polygon_bookkeeping():
    rng = random.Random(11_001)
    checked = 0
    for branches in _branch_corpus(rng, 500):
        poly = polygon_from_branches(branches)
        assert slopes(poly) == {Fraction(b.q, b.p) for b in branches}
        assert irregularity(poly) == sum(b.m * b.q for b in branches)
        checked += 1
    assert checked == 500
    _report(1, "slope set and irregularity on 500 random branch sets")


def test_criterion_2_minkowski_grid_oracle():
    checked = 0
    # Exhaustive small family.
    candidates = [(w, h) for w in range(1, 6) for h in range(1, 6)]
    for n in (1, 2):
        for combo in itertools.combinations_with_replacement(candidates, n):
            if sum(w + h for w, h in combo) <= 14:
                got = minkowski_sum([NewtonPolygon.from_edges([e]) for e in combo])
                expect = grid_minkowski_vertices(list(combo))
                assert [(int(x), int(y)) for x, y in got.vertices()] == expect
                checked += 1
    # Random corpus up to the full size bound.
    rng = random.Random(11_002)
    done = 0
    while done < 60:
        edges = []
        for _ in range(rng.randint(1, 6)):
            m, p, q = rng.randint(1, 3), rng.randint(1, 4), rng.randint(1, 6)
            edges.append((m * p, m * q))
        if sum(w + h for w, h in edges) > 40:
            continue
        got = minkowski_sum([NewtonPolygon.from_edges([e]) for e in edges])
        expect = grid_minkowski_vertices(edges)
        assert [(int(x), int(y)) for x, y in got.vertices()] == expect
        done += 1
        checked += 1
    _report(2, f"grid Minkowski oracle on {checked} inputs of size <= 40")


def test_criterion_3_rank_pole_vs_irregularity():
    rng = random.Random(11_003)
    checked = 0
    for branches in _branch_corpus(rng, 500):
        dec = decompose(branches)
        poly = polygon_from_branches(branches)
        assert sum(f.rank_branchwise * f.pole_order for f in dec.factors) \
            == dec.p * irregularity(poly)
        checked += 1
    assert checked == 500
    _report(3, "factor ranks vs polygon irregularity on 500 random branch sets")


def _unramified_instance(rng):
    """<= 5 branches with p = 1, pole <= 4, truncation 8, engineered overlaps."""
    n_alphas = rng.randint(1, 3)
    alphas = []
    while len(alphas) < n_alphas:
        a = rand_polar(rng, rng.randint(1, 4), cyclo_coeffs=True)
        if all(not (a == b) for b in alphas):
            alphas.append(a)
    branches = []
    for i in range(rng.randint(1, 5)):
        alpha = alphas[rng.randint(0, n_alphas - 1)]
        delta = {}
        if rng.random() < 0.7:
            delta[0] = Fraction(rng.randint(-3, 3))
        for e in range(1, 9):
            if rng.random() < 0.15:
                delta[e] = Fraction(rng.randint(-2, 2))
        m = rng.randint(1, 3)
        branches.append(mk(f"b{i}", p=1, q=alpha.pole_order(), alpha=alpha,
                           delta=LaurentPoly(delta), m=m,
                           zeta=rand_monic(rng, m)))
    target = alphas[0] if rng.random() < 0.8 \
        else rand_polar(rng, rng.randint(1, 4), cyclo_coeffs=True)
    return branches, target


def test_criterion_4_strict_transform_oracle():
    rng = random.Random(11_004)
    checked = 0
    for _ in range(100):
        branches, alpha = _unramified_instance(rng)
        rep = verify_corollary(branches, alpha, truncation=8)
        assert rep.membership_agrees, rep
        assert rep.star_agrees, rep
        checked += 1
    assert checked == 100
    _report(4, "blow-up membership and separation oracle on 100 instances")


def test_criterion_5_stratified_totals_telescope():
    rng = random.Random(11_005)
    chi_checked = zeta_checked = 0
    while chi_checked < 100 or zeta_checked < 100:
        branches, alpha = _unramified_instance(rng)
        tree = build_resolution(alpha)
        transforms = [strict_transform(b, tree, truncation=8) for b in branches]
        mults = {b.label: b.m for b in branches}
        members = [b for b in branches if b.alpha == alpha]
        expected_chi = -sum(b.m for b in members)
        for r in range(1, 7):
            assert chi_psi(tree, transforms, mults, r) == expected_chi
        chi_checked += 1

        points = [t.point_on_ed for t in transforms if t.meets_ed]
        separated = all(
            not (points[i] == points[j])
            for i in range(len(points)) for j in range(i + 1, len(points))
        )
        if separated:
            zetas = {b.label: b.zeta for b in branches}
            zeta_r = rand_monic(rng, rng.randint(1, 4))
            got = zeta_psi(tree, transforms, zetas, zeta_r)
            want = PolyFraction.one()
            for b in members:
                want = want * PolyFraction(CycloPoly.one(), b.zeta)
            assert got == want
            zeta_checked += 1
    _report(5, f"Euler/zeta telescoping on {chi_checked} chi and "
               f"{zeta_checked} zeta instances, r in 1..6")


def test_criterion_6_resolution_structure():
    rng = random.Random(11_006)
    checked = 0
    for q in range(1, 6):
        for _ in range(4):
            alpha = rand_polar(rng, q, cyclo_coeffs=True)
            tree = build_resolution(alpha)
            assert len(tree.steps) == 2 * q
            poles = [c.pole_order for c in tree.components]
            assert poles.count(0) == 1 and tree.distinguished == 2 * q
            forms = tree.normal_forms()
            for key, tag in forms.items():
                if key == ("generic", tree.distinguished):
                    assert tag.kind is NormalFormKind.HOLOMORPHIC_COORD
                else:
                    assert tag.kind in (NormalFormKind.POLE_ONE_VAR,
                                        NormalFormKind.POLE_TWO_VAR)
            checked += 1
    assert checked == 20
    _report(6, "2q blow-ups and full normal-form classification, q in 1..5")


def test_criterion_7_realization_round_trip():
    rng = random.Random(11_007)
    checked = 0
    for _ in range(200):
        spec = rand_spec(rng)
        rep = roundtrip_check(spec)
        assert rep.ok, (spec, rep)
        checked += 1
    assert checked == 200
    _report(7, "realize/decompose round trip on 200 orbit-closed descriptions")


def test_criterion_8_cyclotomic_soundness():
    rng = random.Random(11_008)
    pairs = 0
    for _ in range(1000):
        a = rand_cyclo(rng)
        if rng.random() < 0.25:
            b = a.lift(a.order * rng.randint(1, 4))
        elif rng.random() < 0.5:
            b = a + rand_cyclo(rng, max_order=6)
        else:
            b = rand_cyclo(rng)
        diff = abs(numeric(a, 45) - numeric(b, 45))
        assert diff < mpmath.mpf("1e-35") or diff > mpmath.mpf("1e-25")
        assert (a == b) == (diff < mpmath.mpf("1e-30"))
        pairs += 1
    assert pairs == 1000

    for _ in range(200):
        a, b, c = (rand_cyclo(rng, max_order=10) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inv() == 1
    _report(8, "symbolic equality vs 30+ digit numerics on 1000 pairs; axioms")


def test_criterion_9_worked_instance_golden():
    branches = worked_example_branches()
    assert ramification_order(branches) == 2

    poly = polygon_from_branches(branches)
    assert slopes(poly) == {Fraction(1), Fraction(3, 2)}
    assert irregularity(poly) == 5

    dec = decompose(branches)
    assert dec.p == 2 and dec.star_holds
    assert [f.alpha for f in dec.factors] == [
        LaurentPoly({-2: 1}), LaurentPoly({-3: -1}), LaurentPoly({-3: 1})]
    assert [f.rank_branchwise for f in dec.factors] == [2, 1, 1]
    lam, one = CycloPoly.variable(), CycloPoly.one()
    assert dec.factors[0].charpoly == (lam - one) ** 2
    assert dec.factors[1].charpoly == lam + one
    assert dec.factors[2].charpoly == lam + one

    # Independent confirmations before freezing: the grid oracle from
    # criterion 2 on the polygon, and the blow-up oracle from criterion 4.
    expect = grid_minkowski_vertices([(2, 2), (2, 3)])
    assert [(int(x), int(y)) for x, y in poly.vertices()] == expect
    flat = [
        mk("u1", p=1, q=2, alpha=LaurentPoly({-2: 1}), m=2,
           zeta=(lam - one) ** 2),
        mk("u2", p=1, q=3, alpha=LaurentPoly({-3: -1}), m=1, zeta=lam + one),
        mk("u3", p=1, q=3, alpha=LaurentPoly({-3: 1}), m=1, zeta=lam + one),
    ]
    for factor in dec.factors:
        rep = verify_corollary(flat, factor.alpha, truncation=8)
        assert rep.consistent
    _report(9, "golden two-branch instance reproduces all frozen values")
