from fractions import Fraction

import pytest

from strfunc import registry as rg
from strfunc.errors import UnknownCase
from strfunc.series import PuiseuxSeries


def test_names_unique_and_sorted():
    names = rg.case_names()
    assert names == sorted(set(names))
    assert len(names) > 300


def test_catalogue_covers_every_family():
    names = rg.case_names()
    for prefix in ("theta/jtp", "theta/j-elliptic", "theta/j-flip", "theta/product-split", "theta/jsplit",
                   "theta/quintuple", "theta/ah6", "appell/functional", "appell/unwind", "appell/msplit/",
                   "appell/msplit-n2-mu", "appell/msplit-n10-mu", "appell/psi", "mock/", "decomposition/posdisc",
                   "decomposition/negdisc", "strings/oracle", "strings/level1", "strings/compact",
                   "strings/symmetry", "strings/periodicity", "strfunc-25-short-00", "strfunc-25-short-02",
                   "strfunc-25-cor-00", "strfunc-25-cor-02", "technical-theta-1", "technical-theta-2",
                   "neglevel/", "minus12/", "minus23/", "residual/scaling", "main-expansion/", "cor-helper-"):
        assert any(n.startswith(prefix) for n in names), prefix


def test_default_orders():
    cat = rg.catalogue()
    assert cat["technical-theta-1"].default_order >= 40
    assert cat["strfunc-25-short-00"].default_order == 300
    assert cat["decomposition/posdisc/1-2-1/0"].default_order == 60


def test_posdisc_grid_shape():
    for grid in (rg.POS_DISC_GRID, rg.NEG_DISC_GRID):
        assert len(grid) == 4 and all(len(v) == 5 for v in grid.values())


def test_mock_filter_passes():
    report = rg.run_suite("mock/*")
    assert [r.name for r in report.results] == ["mock/A-appell", "mock/f0", "mock/mu-appell", "mock/muA-id"]
    assert report.passed and report.exit_code == 0


def test_unknown_case():
    with pytest.raises(UnknownCase):
        rg.run_suite("no-such-case*")


def test_corrupted_case_reports_witness():
    good = rg.catalogue()["theta/jsplit/m2"]
    bad = rg.IdentityCase("corrupt", good.builder_lhs,
                          lambda T: good.builder_rhs(T) + PuiseuxSeries.monomial(Fraction(7, 3), 1),
                          Fraction(20))
    report = rg.run_suite("all", cases={"corrupt": bad})
    r = report.results[0]
    assert r.verdict == "fail" and report.exit_code == 1
    assert r.witness["exponent"] == "7/3"


def test_error_verdict_carries_kind():
    def boom(T):
        from strfunc.errors import NonGeneric
        raise NonGeneric("theta vanishes")

    case = rg.IdentityCase("err", boom, boom, Fraction(10))
    r = rg.run_suite("all", cases={"err": case}).results[0]
    assert r.verdict == "error" and r.witness["kind"] == "NonGeneric"


def test_report_is_deterministic():
    a = rg.run_suite("theta/*").dumps(timing=False)
    b = rg.run_suite("theta/*", workers=2).dumps(timing=False)
    assert a == b


@pytest.mark.parametrize("pattern", ["theta/ah6/*", "appell/unwind/*", "strings/level1/*"])
def test_higher_order_never_flips(pattern):
    low = rg.run_suite(pattern, 40)
    high = rg.run_suite(pattern, 80)
    assert low.passed and high.passed


def test_table_lists_every_case():
    report = rg.run_suite("technical-theta-*")
    text = report.table()
    assert "technical-theta-1" in text and "2 cases: 2 pass" in text


def test_eta_quotient_leading_exponent():
    s = rg.eta_quotient({1: -2, 6: 1, 12: 2}, 10)
    assert s.valuation() == Fraction(7, 6)


def test_kp_level_one():
    found = rg.kp_scan(1, {1: -1}, 40)
    assert any((x.m, x.ell, x.sigma, x.shift) == (1, 1, 1, 0) for x in found)


def test_kp_level_two():
    found = rg.kp_scan(2, {1: -2, 2: 1}, 40)
    assert any((x.m, x.ell) == (1, 1) for x in found)


def test_kp_level_four_results_are_reported():
    # no combination at sigma in {1/2, 1, 2} reproduces either level-4 eta quotient; the empty list is the result
    assert rg.kp_scan(4, {1: -2, 6: 1, 12: 2}, 30) == []
    assert rg.kp_scan(4, {2: -2}, 30, differences=True) == []
