
import mpmath
import numpy as np
import pytest

from strfunc.errors import InsufficientPrecision
from strfunc.numeric import (LEFT_CHARS, Q_L, SINE_MATRIX, TAU_GRID, QuadForm2, Tau, R_nonhol, beta_fn,
                             beta_quadrature, eta_num, eval_series, indefinite_theta, indefinite_theta_parts,
                             mordell_F, residual_propL, residual_S, residual_T, residuals_mordell,
                             residuals_propH, run_check)
from strfunc.series import eta


@pytest.mark.parametrize("text,value", [
    ("0+1i", 1j), ("i", 1j), ("2i", 2j), ("1/4+i", 0.25 + 1j), ("-1/3+2i", -1 / 3 + 2j),
    ("1.5i", 1.5j), ("1/10+6/5i", 0.1 + 1.2j), ("1e-1+2i", 0.1 + 2j),
])
def test_tau_parser(text, value):
    assert abs(Tau.parse(text).value - value) < 1e-15


@pytest.mark.parametrize("text", ["1+0i", "abc", "1-2i", "2"])
def test_tau_parser_rejects(text):
    with pytest.raises(ValueError):
        Tau.parse(text)


def test_beta_against_quadrature_and_mpmath():
    for x in (0.1, 0.5, 1.0, 2.0):
        assert abs(beta_fn(x) - beta_quadrature(x)) < 1e-13
        assert abs(beta_fn(x) - float(mpmath.erfc(mpmath.sqrt(mpmath.pi * x)))) < 1e-15


def test_eta_product_matches_exact_series():
    t = Tau(0.25 + 1j)
    value, tail = eval_series(eta(1, 200), t)
    assert abs(value - eta_num(t)) < 1e-14 + tail
    # independent oracle
    assert abs(eta_num(t) - complex(mpmath.eta(t.value))) < 1e-14


def test_sine_matrix_is_an_involution():
    assert np.abs(SINE_MATRIX @ SINE_MATRIX - np.eye(2)).max() < 1e-14


def test_quadratic_form_validation():
    with pytest.raises(ValueError):
        QuadForm2(((1, 2), (3, 1)), (1, 0), (0, 1))
    with pytest.raises(ValueError):
        QuadForm2(((1, 5), (5, 20)), (1, 0), (-5, 1))


@pytest.mark.parametrize("form,ch", [(Q_L, LEFT_CHARS[0]), (Q_L, LEFT_CHARS[1])])
def test_theta_parts_sum_to_total(form, ch):
    for t in TAU_GRID[:3]:
        v = indefinite_theta_parts(form, ch, t)
        assert abs(v.hol + v.nhol - indefinite_theta(form, ch, t)) <= 1e-14 + v.tail


def test_lattice_sum_budget():
    with pytest.raises(InsufficientPrecision):
        indefinite_theta_parts(Q_L, LEFT_CHARS[0], Tau(1j), tol=1e-300, max_radius=32)


@pytest.mark.parametrize("t", TAU_GRID)
def test_R_examples(t):
    t4 = t.scaled(4)
    assert abs(R_nonhol(0, 2, t4) - 1) < 1e-10
    assert abs(R_nonhol(0.5, 2, t4)) < 1e-10
    assert abs(R_nonhol(0.25, 0, t4) + R_nonhol(0.75, 0, t4)) < 1e-10
    assert abs(R_nonhol(0.25, 2, t4) + R_nonhol(0.25, 0, t4)) < 1e-10


def test_R_printed_equality_fails():
    # the equality R_{1/4,2} = +R_{1/4,0} does not hold; the sign is reversed
    t4 = Tau(1j).scaled(4)
    assert abs(R_nonhol(0.25, 2, t4) - R_nonhol(0.25, 0, t4)) > 0.1


@pytest.mark.parametrize("t", TAU_GRID[:3])
def test_R_series_and_integral_agree(t):
    assert abs(R_nonhol(0.25, 0, t, "integral") - R_nonhol(0.25, 0, t)) < 1e-10


@pytest.mark.parametrize("t", TAU_GRID)
def test_mordell(t):
    r = residuals_mordell(t)
    assert r["routes"] < 1e-9 and r["period"] < 1e-9


def test_mordell_routes_direct():
    t = Tau(1.5j)
    assert abs(mordell_F(t) - mordell_F(t, "eta")) < 1e-9


@pytest.mark.parametrize("t", [Tau(1j), Tau(0.1 + 1.2j)])
def test_transformation_laws(t):
    assert residual_T(t) <= 1e-8
    assert residual_S(t) <= 1e-5


@pytest.mark.parametrize("t", [Tau(1j), Tau(1.5j)])
def test_holomorphic_part_decomposition(t):
    assert residual_propL(t) <= 1e-6
    assert max(residuals_propH(t).values()) <= 1e-6


def test_decomposition_with_printed_sign_fails():
    assert residual_propL(Tau(1j), sign=+1) > 0.1


def test_check_report_json():
    rep = run_check("T", Tau(1j))
    js = rep.to_json()
    assert js["check"] == "T" and js["tau"] == [0.0, 1.0] and js["pass"] is True
