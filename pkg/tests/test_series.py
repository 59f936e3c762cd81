import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from strfunc.errors import OrderExceeded, ZeroLeadingTerm
from strfunc.series import (INF, PuiseuxSeries, div, ensure_order, eq_to_order, eta, euler_infinite,
                            invert, mul, pochhammer, q)
from strfunc.theta import QPower

ORDER = 50


@st.composite
def series(draw, nonzero_constant=False):
    D = draw(st.sampled_from([1, 2, 3]))
    idx = draw(st.lists(st.integers(0, ORDER * D), max_size=12))
    terms = {k: draw(st.integers(-5, 5)) for k in idx}
    if nonzero_constant:
        terms[0] = draw(st.sampled_from([-2, -1, 1, 3]))
    return PuiseuxSeries(terms, D, ORDER)


RING = settings(max_examples=100, deadline=None)


@RING
@given(series(), series(), series())
def test_addition_associative_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


@RING
@given(series(), series(), series())
def test_multiplication_associative(a, b, c):
    assert mul(mul(a, b, ORDER), c, ORDER) == mul(a, mul(b, c, ORDER), ORDER)


@RING
@given(series(), series())
def test_multiplication_commutative(a, b):
    assert mul(a, b, ORDER) == mul(b, a, ORDER)


@RING
@given(series(), series(), series())
def test_distributive(a, b, c):
    assert mul(a, b + c, ORDER) == mul(a, b, ORDER) + mul(a, c, ORDER)


@RING
@given(series(), series(nonzero_constant=True))
def test_division_inverts_multiplication(a, b):
    assert div(mul(a, b, ORDER), b, ORDER) == a


@RING
@given(series())
def test_json_round_trip(a):
    assert PuiseuxSeries.from_json(json.loads(a.dumps())) == a


def test_pentagonal_number_theorem():
    # independent oracle: Euler's pentagonal expansion
    T = 200
    expected = {}
    k = 0
    while True:
        done = True
        for e in {k * (3 * k - 1) // 2, k * (3 * k + 1) // 2}:
            if e <= T:
                expected[e] = (-1) ** k
                done = False
        if done:
            break
        k += 1
    assert euler_infinite(1, T) == PuiseuxSeries(expected, 1, T)


def test_partition_numbers_by_recurrence():
    # independent oracle: p(n) via the sum-of-divisors recurrence
    T = 60
    sigma = [0] + [sum(d for d in range(1, n + 1) if n % d == 0) for n in range(1, T + 1)]
    p = [1] + [0] * T
    for n in range(1, T + 1):
        p[n] = sum(sigma[k] * p[n - k] for k in range(1, n + 1)) // n
    inv = invert(euler_infinite(1, T), T)
    assert inv.coefficients(0, T) == p


def test_eta_has_fractional_prefactor():
    e = eta(2, 10)
    assert e.valuation() == Fraction(1, 12)
    assert e.scale % 12 == 0


def test_pochhammer_finite_product():
    # (q;q)_3 = (1-q)(1-q^2)(1-q^3)
    direct = (1 - q()) * (1 - q() ** 2) * (1 - q() ** 3)
    assert pochhammer(QPower(1, 1), 1, 3, 20) == direct.truncate(20)


def test_eq_to_order_reports_first_mismatch():
    a = PuiseuxSeries({0: 1, 3: 2, 5: 7}, 2, 10)
    b = PuiseuxSeries({0: 1, 3: 2, 5: 8}, 2, 10)
    v = eq_to_order(a, b, 10)
    assert not v.equal
    assert v.exponent == Fraction(5, 2) and v.lhs == 7 and v.rhs == 8


def test_eq_to_order_rejects_unknown_coefficients():
    a = PuiseuxSeries({0: 1}, 1, 5)
    with pytest.raises(OrderExceeded):
        eq_to_order(a, a, 6)


def test_division_by_zero_series():
    with pytest.raises(ZeroLeadingTerm):
        div(PuiseuxSeries.constant(1), PuiseuxSeries.zero(10), 10)


def test_ensure_order_raises_internal_order():
    calls = []

    def build(T):
        calls.append(T)
        # quotient by q^3 loses three units of order
        return div(euler_infinite(1, T), PuiseuxSeries.monomial(3), T).truncate(T - 3)

    s = ensure_order(build, 20)
    assert s.order == 20 and len(calls) >= 2


def test_subs_and_shift():
    s = (1 + q()).subs(Fraction(1, 2)).shift(Fraction(1, 3))
    assert s.coeff(Fraction(1, 3)) == 1 and s.coeff(Fraction(5, 6)) == 1


def test_exact_series_have_infinite_order():
    assert PuiseuxSeries.constant(3).order == INF
