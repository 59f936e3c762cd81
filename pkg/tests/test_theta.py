from fractions import Fraction

import pytest

from strfunc.errors import NonGeneric
from strfunc.series import PuiseuxSeries, eq_to_order
from strfunc.theta import (QPower, ah6_check, j_elliptic_sides, j_flip_sides, jacobi_j, jacobi_j_product,
                           jsplit, product_split_sides, qp, quintuple_check, theta_is_zero)

T = 100


def naive_j(x: QPower, rho, order):
    """Independent oracle: sum_n (-1)^n q^(rho binom(n,2)) x^n by brute force over |n| <= 60."""
    rho = Fraction(rho)
    out = {}
    for n in range(-60, 61):
        e = rho * Fraction(n * (n - 1), 2) + n * x.exponent
        if e <= order:
            out[e] = out.get(e, 0) + (-1) ** (n % 2) * x.sign ** (n % 2)
    return PuiseuxSeries.from_exponents(out, order)


@pytest.mark.parametrize("x,rho", [(qp("1/2"), 1), (qp("1/3", -1), 1), (qp("2/7"), 2), (QPower(-1, 0), 1),
                                   (qp("5/3"), 1), (qp("-4/5", -1), 3)])
def test_theta_sum_matches_brute_force(x, rho):
    assert eq_to_order(jacobi_j(x, rho, T), naive_j(x, rho, T), T)


@pytest.mark.parametrize("x,rho", [(qp("1/2"), 1), (qp("1/3", -1), 1), (qp("2/7"), 2)])
def test_triple_product(x, rho):
    assert eq_to_order(jacobi_j(x, rho, T), jacobi_j_product(x, rho, T), T)


@pytest.mark.parametrize("n", range(-3, 4))
def test_quasi_periodicity(n):
    lhs, rhs = j_elliptic_sides(qp("2/7"), 1, n, T)
    assert eq_to_order(lhs, rhs, T)


@pytest.mark.parametrize("which", [1, 2])
def test_inversion(which):
    lhs, rhs = j_flip_sides(qp("3/7", -1), 2, which, T)
    assert eq_to_order(lhs, rhs, T)


@pytest.mark.parametrize("n", [2, 3])
def test_product_split(n):
    lhs, rhs = product_split_sides(qp("1/7", -1), 1, n, T)
    assert eq_to_order(lhs, rhs, T)


@pytest.mark.parametrize("m,x", [(2, qp("1/3")), (3, qp("2/5", -1)), (4, qp("1/9"))])
def test_dissection(m, x):
    assert eq_to_order(jacobi_j(x, 1, T), jsplit(x, 1, m, T), T)


@pytest.mark.parametrize("x", [qp("1/7"), qp("1/2", -1)])
def test_quintuple(x):
    assert quintuple_check(x, 1, T)


@pytest.mark.parametrize("n,x,y,order", [(1, qp("1/3"), qp("1/4"), 100), (2, qp("1/5"), qp("2/7", -1), 80),
                                         (4, qp("3/7", -1), qp("8/7", -1), 100)])
def test_two_theta_expansion(n, x, y, order):
    assert ah6_check(x, y, 1, n, order)


def test_theta_zeros():
    assert theta_is_zero(QPower(1, 0), 1)
    assert theta_is_zero(QPower(1, 3), 1)
    assert not theta_is_zero(QPower(-1, 0), 1)
    assert not theta_is_zero(qp("1/2"), 1)
    assert jacobi_j(QPower(1, 2), 1, 50).is_zero()


def test_quintuple_rejects_theta_zero():
    with pytest.raises(NonGeneric):
        quintuple_check(QPower(1, 1), 1, 20)
