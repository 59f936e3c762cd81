"""One test per acceptance criterion; each records a PASS/FAIL line shown in the terminal summary."""

import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from strfunc import numeric as nm
from strfunc import registry as rg

WORKERS = 4


def record(number, title, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def suite(pattern, order=None):
    start = time.perf_counter()
    report = rg.run_suite(pattern, order, workers=WORKERS)
    return report, time.perf_counter() - start


def summary(report, seconds):
    c = report.counts()
    bad = [f"{r.name}: {r.verdict} {r.witness}" for r in report.results if r.verdict != "pass"]
    return f"{c['pass']}/{len(report.results)} cases, {seconds:.1f}s" + (f"; {bad[0]}" if bad else "")


def test_01_level_one_closed_form():
    report, s = suite("strings/level1/*", 200)
    record(1, "level-1 closed form to order 200 in < 5 s", report.passed and len(report.results) == 5 and s < 5,
           summary(report, s))


def test_02_half_level_short_identities():
    times = []
    ok = True
    for name in ("strfunc-25-short-00", "strfunc-25-short-02"):
        report, s = suite(name, 300)
        ok &= report.passed and s < 60
        times.append(f"{name} {s:.1f}s")
    record(2, "half-level mu identities to order 300, < 60 s each", ok, ", ".join(times))


def test_03_half_level_f0_identities():
    report, s = suite("strfunc-25-cor-*", 300)
    record(3, "half-level f0 identities to order 300", report.passed and len(report.results) == 2,
           summary(report, s))


def test_04_level_minus_half():
    report, s = suite("minus12/m*", 300)
    record(4, "level -1/2 closed form to order 300", report.passed and len(report.results) == 5, summary(report, s))


def test_05_level_minus_two_thirds():
    report, s = suite("minus23/*", 150)
    record(5, "(p,p')=(3,4) closed form to order 150", report.passed and len(report.results) == 12,
           summary(report, s))


def test_06_negative_level_expansion():
    report, s = suite("neglevel/*", 100)
    levels = {r.name.split("/")[1] for r in report.results}
    record(6, "negative-level false-theta expansion vs oracle to order 100",
           report.passed and levels == {"2-3", "3-4", "3-5", "5-7"}, summary(report, s))


def test_07_discriminant_decompositions():
    pos, s1 = suite("decomposition/posdisc/*", 60)
    neg, s2 = suite("decomposition/negdisc/*", 60)
    ok = pos.passed and neg.passed and len(pos.results) == 20 and len(neg.results) == 20
    record(7, "positive and negative discriminant grids (4 x 5) to order 60", ok,
           f"pos {summary(pos, s1)}; neg {summary(neg, s2)}")


def test_08_oracle_equivalence():
    report, s = suite("strings/oracle/*", 100)
    record(8, "Hecke form equals direct form on the full grid to order 100", report.passed, summary(report, s))


def test_09_appell_layer():
    report, s = suite("appell/*", 100)
    mock, s2 = suite("mock/*", 100)
    record(9, "Appell layer and mock theta identities to order 100", report.passed and mock.passed,
           f"{summary(report, s)}; mock {summary(mock, s2)}")


def test_10_technical_thetas():
    report, s = suite("technical-theta-*", 100)
    record(10, "technical theta identities to order 100 > valence bound 40",
           report.passed and len(report.results) == 2, summary(report, s))


def test_11_residual_and_main_expansion():
    res, s1 = suite("residual/scaling-*", 80)
    main, s2 = suite("main-expansion/*", 80)
    ok = res.passed and main.passed and len(res.results) == 3 and len(main.results) == 4
    record(11, "residual scaling and main expansion to order 80", ok,
           f"{summary(res, s1)}; {summary(main, s2)}")


def test_12_numeric_laws():
    start = time.perf_counter()
    worst = {}
    ok = True
    reports = nm.verify_transforms(nm.TAU_GRID, ("T", "S", "mordell"), order=400)
    for r in reports:
        worst[r.check] = max(worst.get(r.check, 0.0), r.residual)
        ok &= r.passed
    for t in (nm.Tau(1j), nm.Tau(1.5j)):
        for check in ("propL", "propH"):
            r = nm.run_check(check, t, 1e-6)
            worst[check] = max(worst.get(check, 0.0), r.residual)
            ok &= r.passed
    r_err = 0.0
    for t in nm.TAU_GRID:
        t4 = t.scaled(4)
        r_err = max(r_err, abs(nm.R_nonhol(0, 2, t4) - 1), abs(nm.R_nonhol(0.5, 2, t4)),
                    abs(nm.R_nonhol(0.25, 0, t4) + nm.R_nonhol(0.75, 0, t4)),
                    abs(nm.R_nonhol(0.25, 2, t4) + nm.R_nonhol(0.25, 0, t4)))
    worst["R"] = r_err
    ok &= r_err <= 1e-10
    seconds = time.perf_counter() - start
    ok &= seconds < 120
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {seconds:.1f}s"
    record(12, "T/S laws, R examples, holomorphic-part decomposition, Mordell routes", ok, detail)


def test_13_kac_peterson_scan():
    out = {}
    for name, (N, descriptor, diff) in rg.KP_TARGETS.items():
        out[name] = rg.kp_scan(N, descriptor, 40, diff)
    ok = bool(out["c01_01"]) and bool(out["c11_11"])
    detail = "; ".join(f"{k}: " + (", ".join(f"(m={x.m},l={x.ell},sigma={x.sigma})" for x in v) or "empty")
                       for k, v in out.items())
    record(13, "Kac-Peterson scan: levels 1 and 2 matched, level 4 reported", ok, detail)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
