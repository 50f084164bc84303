"""Exponential factor grouping, ranks, separation condition, monodromy."""

import random
from fractions import Fraction

import mpmath
import pytest

from expdirect.branch import ramification_order, unramify
from expdirect.cyclotomic import CycloNum, CycloPoly
from expdirect.decomposition import (
    StarConditionError,
    char_polys,
    decompose,
    exponential_factors,
    star_condition,
)
from expdirect.laurent import LaurentPoly
from expdirect.newton import irregularity, polygon_from_branches, slopes
from tests.helpers import mk, numeric_laurent, rand_branch, worked_example_branches


def test_worked_example_full():
    dec = decompose(worked_example_branches())
    assert dec.p == 2
    assert dec.star_holds
    alphas = [f.alpha for f in dec.factors]
    assert alphas == [LaurentPoly({-2: 1}), LaurentPoly({-3: -1}), LaurentPoly({-3: 1})]
    assert [f.rank_branchwise for f in dec.factors] == [2, 1, 1]
    assert [f.rank_distinct for f in dec.factors] == [2, 1, 1]
    lam = CycloPoly.variable()
    one = CycloPoly.one()
    assert dec.factors[0].charpoly == (lam - one) ** 2
    assert dec.factors[1].charpoly == lam + one
    assert dec.factors[2].charpoly == lam + one
    assert all(f.charpoly_distinct is None for f in dec.factors)


def test_single_branch_and_empty():
    dec = decompose([mk("a", p=1, q=1, m=1)])
    assert dec.p == 1 and len(dec.factors) == 1
    assert dec.factors[0].rank_branchwise == 1
    empty = decompose([])
    assert empty.p == 1 and empty.factors == () and empty.star_holds


def test_rank_convention_divergence():
    # p=2, q=2, alpha = t^-2: both square roots of unity produce the same
    # rewritten polar part, so one factor collects two copies of the branch.
    b = mk("d", p=2, q=2, alpha=LaurentPoly({-2: 1}), m=1, zeta=CycloPoly([-1, 1]))
    dec = decompose([b])
    assert len(dec.factors) == 1
    f = dec.factors[0]
    assert f.rank_branchwise == 2
    assert f.rank_distinct == 1
    assert f.rank_diverges
    # Separation fails here (two identical shifted factors), so no charpoly.
    assert not dec.star_holds
    assert f.charpoly is None


def test_rank_divergence_with_distinct_delta0():
    # Same alpha collision, but distinct constant terms keep separation alive;
    # the two monodromy conventions then genuinely differ.
    b = mk("d", p=2, q=2, alpha=LaurentPoly({-2: 1}),
           delta=LaurentPoly({1: 1}), m=1, zeta=CycloPoly([1, 1]))
    dec = decompose([b])
    # delta(0) = 0 for both copies: separation still fails.
    assert not dec.star_holds

    ub = unramify([b])
    factors = exponential_factors(ub)
    with pytest.raises(StarConditionError):
        char_polys(factors, ub)


def test_star_condition_examples():
    ub = unramify(worked_example_branches())
    holds, witness = star_condition(ub)
    assert holds and witness is None

    twins = [mk("a", p=1, q=1), mk("b", p=1, q=1)]
    ub = unramify(twins)
    holds, witness = star_condition(ub)
    assert not holds and witness == (("a", 1), ("b", 1))

    separated = [
        mk("a", p=1, q=1),
        mk("b", p=1, q=1, delta=LaurentPoly({0: 1})),
    ]
    holds, _ = star_condition(unramify(separated))
    assert holds


def test_char_poly_product():
    branches = [
        mk("a", p=1, q=1, m=1, zeta=CycloPoly([-1, 1])),
        mk("b", p=1, q=1, m=1, zeta=CycloPoly([1, 1]),
           delta=LaurentPoly({0: 1})),
    ]
    # Distinct delta(0) but identical alpha: one factor? No: the factor key is
    # the polar part alone, so both land in one factor with charpoly product.
    dec = decompose(branches)
    assert len(dec.factors) == 1
    f = dec.factors[0]
    assert f.rank_branchwise == 2
    lam = CycloPoly.variable()
    assert f.charpoly == (lam - CycloPoly.one()) * (lam + CycloPoly.one())


def test_char_polys_requires_star():
    twins = [mk("a", p=1, q=1), mk("b", p=1, q=1)]
    ub = unramify(twins)
    factors = exponential_factors(ub)
    with pytest.raises(StarConditionError):
        char_polys(factors, ub)


def _corpus(rng, n_sets=120):
    for _ in range(n_sets):
        yield [rand_branch(rng, f"l{i}") for i in range(rng.randint(1, 6))]


def test_rank_bookkeeping_random():
    rng = random.Random(4242)
    for branches in _corpus(rng):
        dec = decompose(branches)
        assert sum(f.rank_branchwise for f in dec.factors) \
            == sum(b.p * b.m for b in branches)
        for f in dec.factors:
            labels = [lbl for lbl, _ in f.members]
            if len(set(labels)) == len(labels):
                assert f.rank_branchwise == f.rank_distinct
            if f.charpoly is not None:
                assert f.charpoly.degree == f.rank_branchwise
                assert f.charpoly.is_monic()


def test_irregularity_cross_consistency_random():
    rng = random.Random(31337)
    for branches in _corpus(rng):
        dec = decompose(branches)
        poly = polygon_from_branches(branches)
        lhs = sum(f.rank_branchwise * f.pole_order for f in dec.factors)
        assert lhs == dec.p * irregularity(poly)
        assert {Fraction(f.pole_order, dec.p) for f in dec.factors} == slopes(poly)


def test_decompose_permutation_and_relabel_invariance():
    rng = random.Random(5150)
    for branches in _corpus(rng, 25):
        dec = decompose(branches)
        shuffled = branches[:]
        rng.shuffle(shuffled)
        relabeled = [
            type(b)(f"renamed{i}", b.p, b.q, b.alpha, b.delta, b.m, b.zeta)
            for i, b in enumerate(shuffled)
        ]
        for other in (decompose(shuffled), decompose(relabeled)):
            assert dec.p == other.p and dec.star_holds == other.star_holds
            assert [f.alpha for f in dec.factors] == [f.alpha for f in other.factors]
            assert [f.rank_branchwise for f in dec.factors] \
                == [f.rank_branchwise for f in other.factors]


def _numeric_partition(items, sample_ts):
    """Cluster (origin, LaurentPoly) pairs by 30+-digit values at 3 points."""
    clusters: list[list] = []
    for origin, f in items:
        v = tuple(numeric_laurent(f, t) for t in sample_ts)
        for cl in clusters:
            ref = cl[0][1]
            if all(abs(a - b) < mpmath.mpf("1e-25") for a, b in zip(v, ref)):
                cl.append((origin, v))
                break
        else:
            clusters.append([(origin, v)])
    return {frozenset(origin for origin, _ in cl) for cl in clusters}


def test_grouping_agrees_with_numeric_clustering():
    rng = random.Random(2718)
    sample_ts = [complex(0.83, 0.21), complex(0.31, -0.63), complex(-0.52, 0.44)]
    for branches in _corpus(rng, 40):
        ub = unramify(branches)

        # Factor grouping keys off the rewritten polar part alone.
        factors = exponential_factors(ub)
        symbolic = {frozenset(f.members) for f in factors}
        numeric = _numeric_partition([(u.origin, u.alpha_sub) for u in ub],
                                     sample_ts)
        assert symbolic == numeric

        # The separation data refines by the constant term as well.
        shifted = [(u.origin, u.alpha_sub + LaurentPoly({0: u.delta0}))
                   for u in ub]
        holds, _ = star_condition(ub)
        refined = _numeric_partition(shifted, sample_ts)
        assert holds == all(len(cl) == 1 for cl in refined)
