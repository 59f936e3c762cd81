from fractions import Fraction

import pytest

from strfunc.errors import InvalidSpec, ZeroLevel
from strfunc.hecke import (HeckeParams, StringSpec, hecke_f, hecke_f_reference, pf_character, string_C,
                           string_direct_oracle, string_integer_compact, string_script_C)
from strfunc.series import PuiseuxSeries, div, eq_to_order, euler_infinite
from strfunc.theta import qp

GRID = [(1, 3), (1, 4), (2, 3), (2, 5), (3, 4), (3, 5)]


@pytest.mark.parametrize("a,b,c,x,y", [
    (1, 2, 1, qp("1/7"), qp("2/7")),
    (1, 5, 20, qp("3/7"), qp("83/7", -1)),
    (1, 3, 12, qp("1/7"), qp("2/7", -1)),
    (2, 3, 5, qp("1/7", -1), qp("4/7")),
    (5, 5, 1, qp(4), qp(1)),
])
def test_hecke_sum_matches_naive_double_loop(a, b, c, x, y):
    T = 40
    p = HeckeParams(a, b, c, x, y)
    assert eq_to_order(hecke_f(p, T), hecke_f_reference(p, T, 80), T)


@pytest.mark.parametrize("p,pp", GRID)
def test_hecke_form_equals_direct_form(p, pp):
    for ell in range(pp - 1):
        for m in (ell - 2, ell, ell + 2):
            s = StringSpec(p, pp, ell, m)
            assert eq_to_order(string_script_C(s, 60), string_direct_oracle(s, 60), 60)


@pytest.mark.parametrize("m,ell", [(0, 0), (2, 0), (4, 0), (1, 1), (3, 1)])
def test_level_one_closed_form(m, ell):
    e = Fraction(m * m - ell * ell, 4)
    closed = div(PuiseuxSeries.constant(1), euler_infinite(1, 200 - e)).shift(e)
    assert eq_to_order(string_script_C(StringSpec(1, 3, ell, m), 200), closed, 200)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_integer_compact_form(N):
    for ell in range(N + 1):
        for m in range(-N, N + 1, 1):
            if (m - ell) % 2 == 0:
                a = string_integer_compact(N, m, ell, 60)
                assert eq_to_order(a, string_script_C(StringSpec(1, N + 2, ell, m), 60), 60)


def test_anomaly_values():
    assert StringSpec(1, 3, 1, 1).anomaly == Fraction(-1, 24)
    assert StringSpec(2, 5, 0, 0).anomaly == Fraction(-1, 8) + Fraction(1, 10)


def test_full_normalisation_carries_anomaly():
    s = StringSpec(1, 3, 1, 1)
    c = string_C(s, 20)
    assert c.valuation() == Fraction(-1, 24)
    assert c.coeff(Fraction(-1, 24)) == 1


def test_parafermion_character_level_one():
    # eta * C^1_{1,1} = q^(-1/24)/(q)_inf * q^(1/24)(q)_inf = 1
    e = pf_character(StringSpec(1, 3, 1, 1), 30)
    assert eq_to_order(e, PuiseuxSeries.constant(1, 30), 30)


@pytest.mark.parametrize("args,msg", [
    ((2, 4, 0, 0), "coprime"),
    ((0, 3, 0, 0), "p >= 1"),
    ((1, 3, 2, 0), "ell"),
    ((1, 3, 0, 1), "parity"),
])
def test_invalid_specs(args, msg):
    with pytest.raises(InvalidSpec, match=msg):
        StringSpec(*args)


def test_level_zero_has_no_anomaly():
    with pytest.raises(ZeroLevel):
        StringSpec(1, 2, 0, 0).anomaly


def test_hecke_params_validate():
    with pytest.raises(InvalidSpec):
        HeckeParams(0, 1, 1, qp(1), qp(1))
