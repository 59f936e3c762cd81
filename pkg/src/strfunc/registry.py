"""Named catalogue of verifiable identities, suite runner and Kac-Peterson scanner."""

from __future__ import annotations

import fnmatch
import json
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from . import appell as ap
from . import decomposition as dc
from . import hecke as hk
from . import theta as th
from .errors import StrfuncError, UnknownCase
from .series import (PuiseuxSeries, as_order, div, eq_to_order, euler_infinite, mul, rat)
from .theta import QPower, qp

Builder = Callable[[Fraction], PuiseuxSeries]
Sides = Callable[[Fraction], Tuple[PuiseuxSeries, PuiseuxSeries]]


@dataclass(frozen=True)
class IdentityCase:
    """One identity lhs = rhs, checked coefficient by coefficient up to an order."""

    name: str
    builder_lhs: Builder
    builder_rhs: Builder
    default_order: Fraction
    provenance: Tuple[str, str] = ("", "")
    normalization_note: Optional[str] = None

    def sides(self, order) -> Tuple[PuiseuxSeries, PuiseuxSeries]:
        return self.builder_lhs(order), self.builder_rhs(order)


def _from_sides(sides: Sides) -> Tuple[Builder, Builder]:
    # both builders share one evaluation of the pair
    cache: Dict[Fraction, tuple] = {}

    def get(T):
        if T not in cache:
            cache.clear()
            cache[T] = sides(T)
        return cache[T]

    return (lambda T: get(T)[0]), (lambda T: get(T)[1])


@dataclass
class CaseResult:
    name: str
    verdict: str  # pass | fail | error
    order: Fraction
    millis: float
    witness: Optional[dict] = None

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "verdict": self.verdict, "order": str(self.order)}
        if timing:
            out["millis"] = round(self.millis, 1)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SuiteReport:
    results: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.verdict == "pass" for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> Dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0}
        for r in self.results:
            out[r.verdict] += 1
        return out

    def to_json(self, timing: bool = True) -> list:
        return [r.to_json(timing) for r in self.results]

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=1)

    def table(self) -> str:
        width = max([len(r.name) for r in self.results] + [4])
        lines = [f"{'case':<{width}}  verdict  order  millis  detail"]
        for r in self.results:
            detail = ""
            if r.witness:
                detail = ", ".join(f"{k}={v}" for k, v in r.witness.items())
            lines.append(f"{r.name:<{width}}  {r.verdict:<7}  {str(r.order):>5}  {r.millis:>6.0f}  {detail}")
        c = self.counts()
        lines.append(f"{len(self.results)} cases: {c['pass']} pass, {c['fail']} fail, {c['error']} error")
        return "\n".join(lines)


# -- catalogue -----------------------------------------------------------------

STRUCTURAL, HEADLINE, GRID = Fraction(100), Fraction(300), Fraction(60)

POS_DISC_GRID = {
    (1, 2, 1): [("1/7", 1, "2/7", 1), ("1/7", -1, "3/7", 1), ("2/7", 1, "1/7", -1),
                ("3/7", -1, "5/7", -1), ("4/7", 1, "2/7", -1)],
    (1, 5, 20): [("3/7", 1, "83/7", -1), ("1/7", 1, "40/7", -1), ("2/7", -1, "71/7", 1),
                 ("4/7", 1, "60/7", 1), ("5/7", -1, "88/7", -1)],
    (2, 3, 4): [("1/5", -1, "2/5", -1), ("1/7", 1, "3/7", 1), ("2/7", -1, "1/7", 1),
                ("3/7", 1, "6/7", -1), ("5/7", -1, "3/7", 1)],
    (1, 4, 8): [("1/7", 1, "3/7", -1), ("2/7", -1, "5/7", 1), ("3/7", 1, "1/7", 1),
                ("4/7", -1, "9/7", -1), ("6/7", 1, "11/7", -1)],
}

NEG_DISC_GRID = {
    (1, 3, 12): [("1/7", 1, "2/7", -1), ("2/7", -1, "3/7", 1), ("3/7", 1, "5/7", 1),
                 ("4/7", -1, "1/7", -1), ("5/7", 1, "9/7", -1)],
    (1, 4, 24): [("3/7", 1, "5/7", -1), ("1/7", -1, "2/7", 1), ("2/7", 1, "9/7", 1),
                 ("5/7", -1, "4/7", -1), ("6/7", 1, "3/7", 1)],
    (2, 3, 5): [("1/7", -1, "4/7", 1), ("2/7", 1, "1/7", -1), ("3/7", -1, "5/7", -1),
                ("5/7", 1, "2/7", 1), ("6/7", -1, "8/7", 1)],
    (1, 2, 5): [("1/7", 1, "3/7", 1), ("2/7", -1, "1/7", 1), ("3/7", 1, "4/7", -1),
                ("4/7", -1, "6/7", -1), ("5/7", 1, "2/7", -1)],
}

ORACLE_LEVELS = [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 5), (3, 4), (3, 5)]
NEG_LEVELS = [(2, 3), (3, 4), (3, 5), (5, 7)]


def _m_window(ell: int) -> List[int]:
    return [ell - 4, ell - 2, ell, ell + 2, ell + 4]


def _level1_closed(m: int, ell: int, order) -> PuiseuxSeries:
    e = Fraction(m * m - ell * ell, 4)
    return div(PuiseuxSeries.constant(1), euler_infinite(1, as_order(order) - e)).shift(e)


def _script_C_times_euler_cubed(spec: hk.StringSpec, order) -> PuiseuxSeries:
    T = as_order(order)
    return mul(hk.string_script_C(spec, T), euler_infinite(1, T) ** 3, T)


def _residual_scaling_sides(k: int, order):
    T = as_order(order)
    base = dc.residual_R(0, 0, T - 2 * k * k).shift(2 * k * k)
    return dc.residual_R(2 * k, 0, T), base.truncate(T)


class _Catalogue:
    def __init__(self):
        self.cases: Dict[str, IdentityCase] = {}

    def add(self, name, lhs, rhs, order, label, anchor="", note=None):
        if name in self.cases:
            raise ValueError(f"duplicate case name {name}")
        self.cases[name] = IdentityCase(name, lhs, rhs, Fraction(order), (label, anchor), note)

    def add_sides(self, name, sides: Sides, order, label, anchor="", note=None):
        lhs, rhs = _from_sides(sides)
        self.add(name, lhs, rhs, order, label, anchor, note)


def _theta_cases(c: _Catalogue):
    for tag, x, rho in [("q1_2", qp("1/2"), 1), ("neg_q1_3", qp("1/3", -1), 1),
                        ("q2_7-rho2", qp("2/7"), 2), ("minus1", QPower(-1, 0), 1)]:
        c.add_sides(f"theta/jtp/{tag}", lambda T, x=x, rho=rho: th.jtp_sides(x, rho, T),
                    STRUCTURAL, "Jacobi triple product", "sum side equals product side")
    for n in range(-3, 4):
        c.add_sides(f"theta/j-elliptic/n{n}", lambda T, n=n: th.j_elliptic_sides(qp("2/7"), 1, n, T),
                    STRUCTURAL, "theta quasi-periodicity")
    for w in (1, 2):
        c.add_sides(f"theta/j-flip/{w}", lambda T, w=w: th.j_flip_sides(qp("3/7", -1), 2, w, T),
                    STRUCTURAL, "theta inversion")
    for n in (2, 3):
        c.add_sides(f"theta/product-split/n{n}", lambda T, n=n: th.product_split_sides(qp("1/7", -1), 1, n, T),
                    STRUCTURAL, "theta product splitting")
    for m, x in [(2, qp("1/3")), (3, qp("2/5", -1))]:
        c.add(f"theta/jsplit/m{m}", lambda T, x=x: th.jacobi_j(x, 1, T),
              lambda T, x=x, m=m: th.jsplit(x, 1, m, T), STRUCTURAL, "theta m-dissection")
    for tag, x in [("q1_7", qp("1/7")), ("neg_q1_2", qp("1/2", -1))]:
        c.add_sides(f"theta/quintuple/{tag}", lambda T, x=x: th.quintuple_sides(x, 1, T),
                    STRUCTURAL, "quintuple product")
    for n, x, y in [(1, qp("1/3"), qp("1/4")), (2, qp("1/5"), qp("2/7", -1)), (4, qp("3/7", -1), qp("8/7", -1))]:
        c.add_sides(f"theta/ah6/n{n}", lambda T, x=x, y=y, n=n: th.ah6_sides(x, y, 1, n, T),
                    STRUCTURAL, "product of two thetas as a sum of products")


def _appell_cases(c: _Catalogue):
    x, z = qp("1/7"), qp("3/7", -1)
    for tag, fn in [("shift-z", ap.appell_shift_z_sides), ("flip", ap.appell_flip_sides),
                    ("shift-x", ap.appell_shift_x_sides)]:
        c.add_sides(f"appell/functional/{tag}", lambda T, fn=fn: fn(x, z, 1, T),
                    STRUCTURAL, "Appell functional equation")
    for m in range(-2, 5):
        c.add_sides(f"appell/unwind/m{m}", lambda T, m=m: ap.appell_unwind_sides(m, T),
                    STRUCTURAL, "Appell unwinding at x = q^m")
    for n, args in [(2, (qp("1/7"), qp("2/7", -1), qp("3/7", -1))),
                    (3, (qp("1/7"), qp("2/7", -1), qp("4/7"))),
                    (10, (qp("1/7"), qp("3/7", -1), qp("2/7", -1)))]:
        c.add_sides(f"appell/msplit/n{n}", lambda T, a=args, n=n: ap.msplit_sides(*a, 1, n, T),
                    STRUCTURAL, "n-way Appell splitting")
    c.add("appell/msplit-n2-mu", lambda T: ap.appell_m(QPower(1, 0), ap.MINUS_ONE, 1, T),
          ap.msplit_n2_mu_rhs, STRUCTURAL, "two-way splitting of m(1,-1;q)")
    c.add_sides("appell/msplit-n10-mu",
                lambda T: ap.msplit_sides(qp("1/7"), ap.MINUS_ONE, ap.MINUS_ONE, 1, 10, T),
                STRUCTURAL, "ten-way splitting of m(x,-1;q)")
    for m in (-1, 0, 1, 2):
        c.add_sides(f"appell/psi/m{m}", lambda T, m=m: ap.psi_relation_sides(m, T),
                    STRUCTURAL, "ten-way splitting at x = q^m")
    c.add("mock/mu-appell", ap.mu_eulerian, ap.mu_appell, STRUCTURAL, "mu as an Appell function")
    c.add("mock/A-appell", ap.A_eulerian, ap.A_appell, STRUCTURAL, "A as an Appell function")
    c.add("mock/muA-id", lambda T: ap.mu_eulerian(T) + 4 * ap.A_eulerian(T).signed(),
          ap.muA_rhs, STRUCTURAL, "mu(q) + 4A(-q) as an eta quotient")
    c.add("mock/f0", ap.f0_eulerian, ap.f0_rhs, STRUCTURAL, "fifth-order f0 via a level-10 sum")


def _decomposition_cases(c: _Catalogue):
    for grid, fn, tag in [(POS_DISC_GRID, dc.pos_disc_sides, "posdisc"),
                          (NEG_DISC_GRID, dc.neg_disc_sides, "negdisc")]:
        for (a, b, cc), pairs in grid.items():
            for i, (xe, xs, ye, ys) in enumerate(pairs):
                x, y = qp(xe, xs), qp(ye, ys)
                c.add_sides(f"decomposition/{tag}/{a}-{b}-{cc}/{i}",
                            lambda T, a=a, b=b, cc=cc, x=x, y=y, fn=fn: fn(a, b, cc, x, y, T),
                            GRID, f"{tag} Hecke-sum decomposition")


def _string_cases(c: _Catalogue):
    for p, pp in ORACLE_LEVELS:
        for ell in range(pp - 1):
            for m in _m_window(ell):
                spec = hk.StringSpec(p, pp, ell, m)
                c.add(f"strings/oracle/{p}-{pp}/l{ell}-m{m}",
                      lambda T, s=spec: hk.string_script_C(s, T),
                      lambda T, s=spec: hk.string_direct_oracle(s, T),
                      STRUCTURAL, "Hecke form equals the direct four-region sum")
    for m, ell in [(0, 0), (2, 0), (4, 0), (1, 1), (3, 1)]:
        spec = hk.StringSpec(1, 3, ell, m)
        c.add(f"strings/level1/m{m}-l{ell}", lambda T, s=spec: hk.string_script_C(s, T),
              lambda T, m=m, ell=ell: _level1_closed(m, ell, T), Fraction(200), "level-1 closed form")
    for N in range(1, 5):
        for ell in range(N + 1):
            for m in range(-N, N + 1):
                if (m - ell) % 2:
                    continue
                spec = hk.StringSpec(1, N + 2, ell, m)
                c.add(f"strings/compact/N{N}/l{ell}-m{m}",
                      lambda T, N=N, m=m, ell=ell: hk.string_integer_compact(N, m, ell, T),
                      lambda T, s=spec: hk.string_script_C(s, T), STRUCTURAL, "integer-level compact form")
    for p, pp in ORACLE_LEVELS:
        for ell in range(pp - 1):
            m = ell + 2
            c.add(f"strings/symmetry/{p}-{pp}/l{ell}-m{m}",
                  lambda T, s=hk.StringSpec(p, pp, ell, m): hk.string_script_C(s, T),
                  lambda T, s=hk.StringSpec(p, pp, ell, -m): hk.string_script_C(s, T),
                  STRUCTURAL, "charge reflection m -> -m")
    for N in range(1, 5):
        for ell in range(N + 1):
            m = ell
            c.add(f"strings/periodicity/N{N}/l{ell}-m{m}",
                  lambda T, s=hk.StringSpec(1, N + 2, ell, m): hk.string_C(s, T),
                  lambda T, s=hk.StringSpec(1, N + 2, ell, m + 2 * N): hk.string_C(s, T),
                  STRUCTURAL, "charge periodicity m -> m + 2N")
            c.add(f"strings/reflection/N{N}/l{ell}-m{m}",
                  lambda T, s=hk.StringSpec(1, N + 2, ell, m): hk.string_C(s, T),
                  lambda T, s=hk.StringSpec(1, N + 2, N - ell, N - m): hk.string_C(s, T),
                  STRUCTURAL, "spin reflection (m, l) -> (N - m, N - l)")


def _fractional_cases(c: _Catalogue):
    for ell in (0, 2):
        c.add(f"strfunc-25-short-{ell:02d}", lambda T, ell=ell: dc.half_level_lhs(ell, T),
              lambda T, ell=ell: dc.strfunc25_short_rhs(ell, T), HEADLINE,
              "level 1/2 string functions via the second-order mu function")
        c.add(f"strfunc-25-cor-{ell:02d}", lambda T, ell=ell: dc.half_level_lhs(ell, T),
              lambda T, ell=ell: dc.strfunc25_cor_rhs(ell, T), HEADLINE,
              "level 1/2 string functions via the fifth-order f0 function")
    for w in (1, 2):
        c.add_sides(f"technical-theta-{w}", lambda T, w=w: dc.technical_theta_sides(w, T),
                    STRUCTURAL, "theta-quotient identity", "valence bound B = -40")
        c.add_sides(f"cor-helper-{w}", lambda T, w=w: dc.cor_helper_sides(w, T),
                    STRUCTURAL, "helper theta identity")
    for p, pp in NEG_LEVELS:
        for ell in range(pp - 1):
            for m in (ell - 2, ell, ell + 2):
                spec = hk.StringSpec(p, pp, ell, m)
                c.add(f"neglevel/{p}-{pp}/l{ell}-m{m}",
                      lambda T, s=spec: _script_C_times_euler_cubed(s, T),
                      lambda T, s=spec: dc.neg_level_rhs(s, T), STRUCTURAL,
                      "negative-level string functions via false thetas",
                      note="compares (q)_inf^3 times the integer-normalized string function")
    for m, ell in [(0, 0), (2, 0), (-2, 0), (1, 1), (5, 1)]:
        c.add(f"minus12/m{m}-l{ell}", lambda T, s=hk.StringSpec(2, 3, ell, m): hk.string_script_C(s, T),
              lambda T, m=m, ell=ell: dc.minus_half_rhs(m, ell, T), HEADLINE,
              "level -1/2 closed form")
    for m in range(-3, 6):
        c.add(f"minus12/bilateral/m{m}", lambda T, m=m: dc.bilateral_minus_half(m, T),
              lambda T, m=m: dc.unilateral_minus_half(m, T), STRUCTURAL,
              "false theta reduced to a unilateral sum")
    for ell in range(3):
        for m in (ell - 2, ell, ell + 2, ell + 4):
            c.add(f"minus23/l{ell}-m{m}", lambda T, s=hk.StringSpec(3, 4, ell, m): hk.string_script_C(s, T),
                  lambda T, m=m, ell=ell: dc.minus_twothirds_rhs(m, ell, T), Fraction(150),
                  "level -2/3 closed form")
    for k in (1, 2, 3):
        c.add_sides(f"residual/scaling-k{k}", lambda T, k=k: _residual_scaling_sides(k, T),
                    Fraction(80), "residual scaling R_(2k,0) = q^(2k^2) R_(0,0)")
    for m, ell in [(0, 0), (2, 0), (1, 1), (3, 1)]:
        c.add_sides(f"main-expansion/m{m}-l{ell}", lambda T, m=m, ell=ell: dc.main_expansion_sides(m, ell, T),
                    Fraction(80), "level 1/2 string function as Appell sum plus residual")


@lru_cache(maxsize=1)
def catalogue() -> Dict[str, IdentityCase]:
    c = _Catalogue()
    for part in (_theta_cases, _appell_cases, _decomposition_cases, _string_cases, _fractional_cases):
        part(c)
    return dict(sorted(c.cases.items()))


def case_names() -> List[str]:
    return list(catalogue())


def select(pattern: str) -> List[str]:
    names = case_names() if pattern in ("all", "*") else fnmatch.filter(case_names(), pattern)
    if not names:
        raise UnknownCase(f"no registered case matches {pattern!r}")
    return names


def run_case(case: IdentityCase, order=None) -> CaseResult:
    T = as_order(case.default_order if order is None else order)
    start = time.perf_counter()
    try:
        lhs, rhs = case.sides(T)
        v = eq_to_order(lhs, rhs, T)
        verdict, witness = ("pass", None) if v.equal else (
            "fail", {"exponent": str(v.exponent), "lhs": str(v.lhs), "rhs": str(v.rhs)})
    except StrfuncError as exc:
        verdict, witness = "error", {"kind": type(exc).__name__, "message": str(exc)}
    return CaseResult(case.name, verdict, T, (time.perf_counter() - start) * 1000, witness)


def _run_named(args) -> CaseResult:
    name, order = args
    return run_case(catalogue()[name], order)


def run_suite(pattern: str = "all", order_override=None, workers: int = 1,
              cases: Optional[Dict[str, IdentityCase]] = None) -> SuiteReport:
    """Run every case whose name matches the glob; results are ordered by name."""
    if cases is None:
        names = select(pattern)
        jobs = [(n, None if order_override is None else rat(order_override)) for n in names]
        if workers > 1 and len(jobs) > 1:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                results = list(pool.map(_run_named, jobs, chunksize=1))
        else:
            results = [_run_named(j) for j in jobs]
    else:
        names = sorted(fnmatch.filter(cases, pattern) if pattern not in ("all", "*") else cases)
        if not names:
            raise UnknownCase(f"no case matches {pattern!r}")
        results = [run_case(cases[n], order_override) for n in names]
    return SuiteReport(sorted(results, key=lambda r: r.name))


# -- Kac-Peterson convention scan -----------------------------------------------

def eta_quotient(descriptor: Dict[int, int], order) -> PuiseuxSeries:
    """prod_k eta(k tau)^(e_k) for a descriptor {k: e_k}."""
    T = as_order(order)
    lead = sum(Fraction(k * e, 24) for k, e in descriptor.items())
    R = T - lead
    num, den = PuiseuxSeries.constant(1), PuiseuxSeries.constant(1)
    for k, e in descriptor.items():
        if e > 0:
            num = mul(num, euler_infinite(k, R) ** e, R)
        elif e < 0:
            den = mul(den, euler_infinite(k, R) ** (-e), R)
    return div(num, den, R).shift(lead)


KP_TARGETS = {
    "c01_01": (1, {1: -1}, False),
    "c11_11": (2, {1: -2, 2: 1}, False),
    "c40_22": (4, {1: -2, 6: 1, 12: 2}, False),
    "c40_40-c40_04": (4, {2: -2}, True),
}

SIGMAS = (Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass(frozen=True)
class KPMatch:
    m: int
    ell: int
    sigma: Fraction
    shift: Fraction
    minus: Optional[Tuple[int, int]] = None

    def describe(self) -> str:
        head = f"C_(m={self.m},l={self.ell})"
        if self.minus is not None:
            head += f" - C_(m={self.minus[0]},l={self.minus[1]})"
        return f"{head} at q -> q^{self.sigma}, exponent shift {self.shift}"


def _admissible(N: int):
    return [(m, ell) for ell in range(N + 1) for m in range(2 * N) if (m - ell) % 2 == 0]


def _matches_up_to_shift(cand: PuiseuxSeries, target: PuiseuxSeries, T) -> Optional[Fraction]:
    if cand.is_zero() or target.is_zero():
        return None
    shift = target.valuation() - cand.valuation()
    moved = cand.shift(shift)
    top = min(T, moved.order, target.order)
    return shift if eq_to_order(moved, target, top).equal else None


def kp_scan(N: int, target: Dict[int, int], order=40, differences: Optional[bool] = None) -> List[KPMatch]:
    """Find (m, l, sigma) with C^N_(m,l)(q^sigma) equal to the eta quotient up to a monomial q^shift.

    With differences (the default for N = 4) pairs C_a - C_b are scanned too.
    """
    if N not in (1, 2, 3, 4):
        raise ValueError("kp_scan supports N in {1, 2, 3, 4}")
    T = as_order(order)
    if differences is None:
        differences = N == 4
    tgt = eta_quotient(target, T + 4)
    pairs = _admissible(N)
    base_order = 2 * T + 8
    series = {key: hk.string_C(hk.StringSpec(1, N + 2, key[1], key[0]), base_order) for key in pairs}
    found = []
    for sigma in SIGMAS:
        scaled = {key: s.subs(sigma) for key, s in series.items()}
        for key, s in scaled.items():
            sh = _matches_up_to_shift(s, tgt, T)
            if sh is not None:
                found.append(KPMatch(key[0], key[1], sigma, sh))
        if differences:
            for a in pairs:
                for b in pairs:
                    if a == b:
                        continue
                    sh = _matches_up_to_shift(scaled[a] - scaled[b], tgt, T)
                    if sh is not None:
                        found.append(KPMatch(a[0], a[1], sigma, sh, b))
    return found
