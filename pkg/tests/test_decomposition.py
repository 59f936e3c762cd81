import pytest

from strfunc.decomposition import (FalseThetaSum, bilateral_minus_half, cor_helper_sides, false_theta,
                                   half_level_lhs, minus_half_rhs, minus_twothirds_rhs, neg_level_rhs,
                                   residual_R, strfunc25_cor_rhs, strfunc25_short_rhs, technical_theta_sides,
                                   unilateral_minus_half, verify_main_expansion, verify_neg_disc,
                                   verify_pos_disc)
from strfunc.errors import NonGeneric
from strfunc.hecke import StringSpec, string_C, string_script_C
from strfunc.series import PuiseuxSeries, eq_to_order, euler_infinite, mul
from strfunc.theta import QPower, qp


@pytest.mark.parametrize("abc,x,y", [
    ((1, 2, 1), qp("1/7"), qp("2/7")),
    ((2, 3, 4), qp("1/5", -1), qp("2/5", -1)),
    ((1, 4, 8), qp("1/7"), qp("3/7", -1)),
])
def test_positive_discriminant(abc, x, y):
    assert verify_pos_disc(*abc, x, y, 40)


@pytest.mark.parametrize("abc,x,y", [
    ((1, 3, 12), qp("1/7"), qp("2/7", -1)),
    ((2, 3, 5), qp("1/7", -1), qp("4/7")),
    ((1, 2, 5), qp("1/7"), qp("3/7")),
])
def test_negative_discriminant(abc, x, y):
    assert verify_neg_disc(*abc, x, y, 40)


def test_positive_discriminant_requires_generic_arguments():
    with pytest.raises(NonGeneric):
        verify_pos_disc(2, 3, 4, qp("5/7", -1), qp("4/7"), 20)


def test_false_theta_brute_force():
    # sum_r sg(r) X^r q^(kappa binom(r+1,2)) with sg(r) = 1 for r >= 0 and -1 otherwise, X = -q^2
    X, kappa, T = QPower(-1, 2), 3, 60
    out = {}
    for r in range(-30, 31):
        e = kappa * r * (r + 1) // 2 + 2 * r
        if e <= T:
            out[e] = out.get(e, 0) + (1 if r >= 0 else -1) * (-1) ** (r % 2)
    assert eq_to_order(false_theta(FalseThetaSum(X, kappa), T), PuiseuxSeries.from_exponents(out, T), T)


@pytest.mark.parametrize("m,ell", [(0, 0), (2, 0), (-2, 0), (1, 1), (5, 1)])
def test_level_minus_half(m, ell):
    assert eq_to_order(string_script_C(StringSpec(2, 3, ell, m), 150), minus_half_rhs(m, ell, 150), 150)


@pytest.mark.parametrize("m", range(-3, 6))
def test_bilateral_reduces_to_unilateral(m):
    assert eq_to_order(bilateral_minus_half(m, 100), unilateral_minus_half(m, 100), 100)


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_level_minus_two_thirds(ell):
    for m in (ell - 2, ell, ell + 2, ell + 4):
        assert eq_to_order(string_script_C(StringSpec(3, 4, ell, m), 100), minus_twothirds_rhs(m, ell, 100), 100)


def _lhs(spec, T):
    return mul(string_script_C(spec, T), euler_infinite(1, T) ** 3, T)


@pytest.mark.parametrize("p,pp", [(2, 3), (3, 4), (3, 5), (5, 7)])
def test_negative_level_expansion(p, pp):
    for ell in range(pp - 1):
        for m in (ell - 2, ell, ell + 2):
            s = StringSpec(p, pp, ell, m)
            assert eq_to_order(_lhs(s, 60), neg_level_rhs(s, 60), 60)


def test_negative_level_printed_form_fails():
    # the expansion exactly as typeset (theta exponent 1 + l t, minus sign, factor 1/2) is not an identity
    s = StringSpec(3, 4, 1, 1)
    v = eq_to_order(_lhs(s, 40), neg_level_rhs(s, 40, printed=True), 40)
    assert not v.equal


def test_negative_level_full_normalisation_reading_fails():
    # multiplying C (with its fractional anomaly) rather than the integer-normalised form cannot match
    s = StringSpec(2, 3, 0, 0)
    lhs = mul(string_C(s, 40), euler_infinite(1, 40) ** 3, 40)
    rhs = neg_level_rhs(s, 40)
    assert lhs.valuation() != rhs.valuation()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_residual_scaling(k):
    base = residual_R(0, 0, 60 - 2 * k * k).shift(2 * k * k)
    assert eq_to_order(residual_R(2 * k, 0, 60), base.truncate(60), 60)


@pytest.mark.parametrize("m,ell", [(0, 0), (2, 0), (1, 1), (3, 1)])
def test_main_expansion(m, ell):
    assert verify_main_expansion(m, ell, 60)


@pytest.mark.parametrize("ell", [0, 2])
def test_half_level_identities(ell):
    lhs = half_level_lhs(ell, 120)
    assert eq_to_order(lhs, strfunc25_short_rhs(ell, 120), 120)
    assert eq_to_order(lhs, strfunc25_cor_rhs(ell, 120), 120)


@pytest.mark.parametrize("which", [1, 2])
def test_theta_quotient_identities(which):
    a, b = technical_theta_sides(which, 100)
    assert eq_to_order(a, b, 100)
    a, b = cor_helper_sides(which, 100)
    assert eq_to_order(a, b, 100)
