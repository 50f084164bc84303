"""Field arithmetic in Q(zeta_N): examples, axioms, numeric agreement."""

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from expdirect.cyclotomic import (
    CycloNum,
    CycloPoly,
    IncompatibleOrderError,
    PolyFraction,
    cyclotomic_polynomial,
    eq,
    lift,
    root_of_unity,
    totient,
)


def numeric(a: CycloNum, dps: int = 40) -> mpmath.mpc:
    """Independent numeric value of a cyclotomic number."""
    with mpmath.workdps(dps):
        zeta = mpmath.exp(2j * mpmath.pi / a.order)
        return mpmath.fsum(
            [mpmath.mpf(c.numerator) / c.denominator * zeta**e
             for e, c in sorted(a.coeffs.items())],
            absolute=False,
        ) if a.coeffs else mpmath.mpc(0)


def rand_cyclo(rng: random.Random, max_order: int = 12, max_num: int = 9) -> CycloNum:
    order = rng.randint(1, max_order)
    coeffs = {}
    for e in range(totient(order)):
        if rng.random() < 0.5:
            coeffs[e] = Fraction(rng.randint(-max_num, max_num),
                                 rng.randint(1, max_num))
    return CycloNum(order, coeffs)


def test_cyclotomic_polynomial_small():
    x = CycloPoly.variable()
    assert cyclotomic_polynomial(1) == x - CycloPoly.one()
    assert cyclotomic_polynomial(2) == x + CycloPoly.one()


def test_cyclotomic_polynomial_6_by_division():
    # Independent derivation: divide x^6 - 1 by the product of the proper
    # divisors' cyclotomic polynomials using exact polynomial division.
    x6_minus_1 = CycloPoly([-1, 0, 0, 0, 0, 0, 1])
    prod = CycloPoly.one()
    for d in (1, 2, 3):
        prod = prod * cyclotomic_polynomial(d)
    quot, rem = divmod(x6_minus_1, prod)
    assert rem.is_zero()
    assert cyclotomic_polynomial(6) == quot == CycloPoly([1, -1, 1])


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_polynomial_divides_xn_minus_1(n):
    xn = [0] * (n + 1)
    xn[0], xn[n] = -1, 1
    rem = divmod(CycloPoly(xn), cyclotomic_polynomial(n))[1]
    assert rem.is_zero()
    assert cyclotomic_polynomial(n).degree == totient(n)
    assert cyclotomic_polynomial(n).is_monic()


def test_root_of_unity_examples():
    assert root_of_unity(4, 2) == -1
    assert root_of_unity(6, 3) == -1
    assert root_of_unity(5, 7) == root_of_unity(5, 2)


@pytest.mark.parametrize("n", range(1, 25))
def test_root_powers(n):
    for k in range(n):
        assert root_of_unity(n, k) ** n == 1


def test_lift_examples():
    minus1 = CycloNum(2, {1: 1})
    assert minus1 == -1
    lifted = lift(minus1, 4)
    assert lifted.order == 4 and lifted == -1

    z3 = root_of_unity(3, 1)
    z6 = root_of_unity(6, 1)
    assert lift(z3, 6) == z6 * z6
    # 6th-order representation of zeta_3 cubes to 1.
    assert lift(z3, 6) ** 3 == 1

    zero = CycloNum.zero(1)
    assert lift(zero, 12).is_zero()

    with pytest.raises(IncompatibleOrderError):
        lift(root_of_unity(4, 1), 6)


def test_arithmetic_examples():
    z4 = root_of_unity(4, 1)
    assert z4 * z4 == -1
    z6 = root_of_unity(6, 1)
    assert (z6 + (-z6)).is_zero()
    z8 = root_of_unity(8, 1)
    assert z8.inv() == root_of_unity(8, 7)
    assert z8 * root_of_unity(8, 7) == 1
    with pytest.raises(ZeroDivisionError):
        CycloNum.zero(3).inv()


def test_eq_examples():
    assert eq(root_of_unity(6, 3), CycloNum.from_rational(-1))
    assert not eq(root_of_unity(3, 1), root_of_unity(6, 1))
    assert eq(CycloNum.zero(3), CycloNum.zero(8))


@settings(deadline=None)
@given(st.integers(1, 16), st.integers(1, 16))
def test_lift_is_ring_homomorphism(seed, m):
    rng = random.Random(seed * 1000 + m)
    a = rand_cyclo(rng, max_order=8)
    b = rand_cyclo(rng, max_order=8)
    target = a.order * b.order * m
    if target > 2000:
        target = a.order * b.order
    assert lift(a * b, target) == lift(a, target) * lift(b, target)
    assert lift(a + b, target) == lift(a, target) + lift(b, target)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_field_axioms(seed):
    rng = random.Random(seed)
    a, b, c = (rand_cyclo(rng) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + CycloNum.zero() == a
    assert a * CycloNum.one() == a
    if not a.is_zero():
        assert a * a.inv() == 1


def test_eq_matches_numeric_on_random_pairs():
    rng = random.Random(20240817)
    agree = 0
    for _ in range(250):
        a = rand_cyclo(rng)
        if rng.random() < 0.3:
            b = a.lift(a.order * rng.randint(1, 4))
        else:
            b = rand_cyclo(rng)
        symbolic = a == b
        diff = abs(numeric(a, 45) - numeric(b, 45))
        numeric_eq = diff < mpmath.mpf("1e-30")
        # Interval safety: nothing may sit near the threshold.
        assert diff < mpmath.mpf("1e-35") or diff > mpmath.mpf("1e-25")
        assert symbolic == numeric_eq
        agree += 1
    assert agree == 250


def test_order_cap():
    from expdirect.cyclotomic import OrderLimitError, get_order_limit, set_order_limit

    old = get_order_limit()
    try:
        set_order_limit(10)
        with pytest.raises(OrderLimitError):
            root_of_unity(11, 1)
        # lcm lifting beyond the cap is an explicit error, not silent work.
        a = root_of_unity(7, 1)
        b = root_of_unity(5, 1)
        with pytest.raises(OrderLimitError):
            _ = a + b
    finally:
        set_order_limit(old)


def test_cyclopoly_division_and_gcd():
    x = CycloPoly.variable()
    one = CycloPoly.one()
    p = (x + one) * (x - one)
    q, r = divmod(p, x + one)
    assert r.is_zero() and q == x - one
    assert p.gcd((x + one) ** 2) == x + one


def test_polyfraction_reduction():
    x = CycloPoly.variable()
    one = CycloPoly.one()
    f = PolyFraction((x + one) * (x - one), (x + one) ** 2)
    assert f == PolyFraction(x - one, x + one)
    assert f * f.inv() == PolyFraction.one()
