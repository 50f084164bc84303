"""Shared generators and independent numeric oracles for the test suite."""

import random
from fractions import Fraction

import mpmath

from expdirect.branch import Branch
from expdirect.cyclotomic import CycloNum, CycloPoly, root_of_unity, totient
from expdirect.laurent import LaurentPoly


def numeric(a: CycloNum, dps: int = 40) -> mpmath.mpc:
    """Numeric value of a cyclotomic number, independent of the package."""
    with mpmath.workdps(dps):
        if not a.coeffs:
            return mpmath.mpc(0)
        zeta = mpmath.exp(2j * mpmath.pi / a.order)
        return mpmath.fsum(
            [mpmath.mpf(c.numerator) / c.denominator * zeta**e
             for e, c in sorted(a.coeffs.items())],
            absolute=False,
        )


def numeric_laurent(f: LaurentPoly, t: complex, dps: int = 40):
    with mpmath.workdps(dps):
        tt = mpmath.mpc(t)
        return mpmath.fsum([numeric(c, dps) * tt**e
                            for e, c in sorted(f.terms.items())]) \
            if f.terms else mpmath.mpc(0)


def rand_cyclo(rng: random.Random, max_order: int = 12, max_num: int = 9) -> CycloNum:
    order = rng.randint(1, max_order)
    coeffs = {}
    for e in range(totient(order)):
        if rng.random() < 0.5:
            coeffs[e] = Fraction(rng.randint(-max_num, max_num),
                                 rng.randint(1, max_num))
    return CycloNum(order, coeffs)


def rand_root(rng: random.Random, max_order: int = 8) -> CycloNum:
    n = rng.randint(1, max_order)
    return root_of_unity(n, rng.randint(0, n - 1))


def rand_laurent(rng: random.Random, lo=-6, hi=4) -> LaurentPoly:
    terms = {}
    for e in range(lo, hi + 1):
        if rng.random() < 0.4:
            terms[e] = Fraction(rng.randint(-5, 5))
    return LaurentPoly(terms)


def rand_monic(rng: random.Random, degree: int, max_order: int = 6) -> CycloPoly:
    """Random monic polynomial with small cyclotomic coefficients."""
    coeffs = []
    for _ in range(degree):
        if rng.random() < 0.5:
            n = rng.randint(1, max_order)
            coeffs.append(root_of_unity(n, rng.randint(0, n - 1))
                          * Fraction(rng.randint(-2, 2)))
        else:
            coeffs.append(CycloNum.from_rational(rng.randint(-3, 3)))
    return CycloPoly(coeffs + [1])


def mk(label="l", p=1, q=1, alpha=None, delta=None, m=1, zeta=None):
    """Small hand-built branch with sane defaults."""
    alpha = alpha if alpha is not None else LaurentPoly({-q: 1})
    delta = delta if delta is not None else LaurentPoly.zero()
    zeta = zeta if zeta is not None else CycloPoly([-1, 1]) ** m
    return Branch(label, p, q, alpha, delta, m, zeta)


def rand_polar(rng: random.Random, q: int, max_order: int = 8,
               cyclo_coeffs: bool = False) -> LaurentPoly:
    """Random purely polar part with pole order exactly q."""
    def coeff(nonzero=False):
        if cyclo_coeffs and rng.random() < 0.5:
            c = rand_root(rng, max_order) * Fraction(rng.randint(1, 3))
            return c
        lo = 1 if nonzero else -4
        n = rng.randint(lo, 4) if not nonzero else rng.randint(1, 4)
        return Fraction(n)

    terms = {-q: coeff(nonzero=True)}
    for e in range(-q + 1, 0):
        if rng.random() < 0.35:
            c = coeff()
            if not (isinstance(c, Fraction) and c == 0):
                terms[e] = c
    return LaurentPoly(terms)


def rand_branch(rng: random.Random, label: str, max_p=4, max_q=6, max_m=3,
                trunc=8, cyclo_coeffs=False) -> Branch:
    p = rng.randint(1, max_p)
    q = rng.randint(1, max_q)
    m = rng.randint(1, max_m)
    alpha = rand_polar(rng, q, cyclo_coeffs=cyclo_coeffs)
    delta = {}
    for e in range(0, trunc + 1):
        if rng.random() < 0.2:
            delta[e] = Fraction(rng.randint(-3, 3))
    zeta = rand_monic(rng, m)
    return Branch(label, p, q, alpha, LaurentPoly(delta), m, zeta)


def worked_example_branches():
    """The frozen two-branch golden instance used across the suite."""
    return [
        Branch("l1", 1, 1, LaurentPoly({-1: 1}), LaurentPoly.zero(), 2,
               CycloPoly([-1, 1]) ** 2),
        Branch("l2", 2, 3, LaurentPoly({-3: 1}), LaurentPoly.zero(), 1,
               CycloPoly([1, 1])),
    ]
