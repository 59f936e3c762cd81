"""Appell/theta decomposition of f_{a,b,c} for D > 0, false-theta expansion for D < 0,
and the string-function closed forms built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .appell import MINUS_ONE, appell_m, mu_eulerian, msplit_n2_theta_bracket, psi_m
from .errors import AppellPole, InvalidSpec, NonGenericArgument, ZeroThetaDenominator
from .hecke import HeckeParams, StringSpec, hecke_f, string_script_C
from .series import (PuiseuxSeries, Verdict, as_order, div, ensure_order, eq_to_order,
                     euler_infinite, mul, rat)
from .theta import QPower, jacobi_j, theta_is_zero

HALF = Fraction(1, 2)


def _b2(n) -> int:
    n = _int(n)
    return n * (n - 1) // 2


def _int(n) -> int:
    n = Fraction(n)
    if n.denominator != 1:
        raise ValueError(f"expected an integer power, got {n}")
    return n.numerator


def _scaled(x: QPower, s: PuiseuxSeries) -> PuiseuxSeries:
    """The monomial x times the series s."""
    return s.shift(x.exponent) * x.sign


def _theta(x: QPower, rho, T, label="theta") -> PuiseuxSeries:
    if theta_is_zero(x, rho):
        raise NonGenericArgument(f"denominator {label} = j({x}; q^{rho}) vanishes")
    return jacobi_j(x, rho, T)


# -- positive discriminant ----------------------------------------------------

def m_abc(a, b, c, x: QPower, y: QPower, z1: QPower, z0: QPower, order) -> PuiseuxSeries:
    """The two t-sums of theta times Appell terms.

    Terms whose theta factor j(q^(bt) x; q^a) vanishes identically are
    dropped without evaluating their Appell function.
    """
    D = b * b - a * c
    if D <= 0:
        raise InvalidSpec("m_abc needs a positive discriminant")

    def part(T, a, c, x, y, z, which):
        total = PuiseuxSeries.zero(T)
        for t in range(a):
            th_arg = x.shift(b * t)
            if theta_is_zero(th_arg, a):
                continue
            pre = ((-y) ** t).shift(c * _b2(t))
            arg = -(((-y) ** a) / ((-x) ** b)).shift(a * _b2(b + 1) - c * _b2(a + 1) - t * D)
            try:
                mm = appell_m(arg, z, a * D, T)
            except (AppellPole, ZeroThetaDenominator) as exc:
                raise type(exc)(f"{which} t-sum, t={t}: {exc}") from exc
            th = jacobi_j(th_arg, a, T)
            total = total + _scaled(pre, mul(th, mm, T))
        return total

    def build(T):
        return part(T, a, c, x, y, z0, "first") + part(T, c, a, y, x, z1, "second")

    return ensure_order(build, as_order(order))


def vartheta_abc(a, b, c, x: QPower, y: QPower, order) -> PuiseuxSeries:
    """Triple (d*, e*, f) sum of theta quotients completing the posDisc decomposition."""
    D = b * b - a * c
    if D <= 0:
        raise InvalidSpec("vartheta_abc needs a positive discriminant")
    fc = Fraction(c % 2, 2)
    fa = Fraction(a % 2, 2)
    mx, my = -x, -y

    def build(T):
        total = PuiseuxSeries.zero(T)
        cube = euler_infinite(b * D, T) ** 3
        for ds in range(b):
            for es in range(b):
                d, e = ds + fc, es + fa
                u, v = _int(d - Fraction(c, 2)), _int(e + Fraction(a, 2))
                pre = ((mx ** u) * (my ** v)).shift(a * _b2(u) + b * u * v + c * _b2(v))
                num3 = _theta(((mx ** (b - c)) * (my ** (b - a))).shift(D * (d + e) + a * c - Fraction(b * (a + c), 2)),
                              b * D, T, "numerator")
                den1 = _theta(((mx ** b) * (my ** -a)).shift(D * e + Fraction(a * (c - b), 2)), b * D, T, "j(q^(De+a(c-b)/2)(-x)^b(-y)^-a; q^bD)")
                den2 = _theta(((my ** b) * (mx ** -c)).shift(D * d + Fraction(c * (a - b), 2)), b * D, T, "j(q^(Dd+c(a-b)/2)(-y)^b(-x)^-c; q^bD)")
                quot = div(mul(cube, num3, T), mul(den1, den2, T), T)
                inner = PuiseuxSeries.zero(T)
                for f in range(b):
                    fpre = (my ** (a * f)).shift(a * b * b * _b2(f) + (a * (b * d + b * b + c * e) - Fraction(a * c * (b + 1), 2)) * f)
                    j1 = jacobi_j(-((mx ** c).shift(c * (a * d + b * e + Fraction(a * (b - 1), 2) + a * b * f))), c * b * b, T)
                    j2 = jacobi_j(-(((mx ** (-a * c)) * (my ** (a * b))).shift(a * ((d + Fraction(b * (b + 1), 2) + b * f) * D + Fraction(c * (a - b), 2)))),
                                  a * b * b * D, T)
                    inner = inner + _scaled(fpre, mul(j1, j2, T))
                total = total + _scaled(pre, mul(inner, quot, T))
        return total

    return ensure_order(build, as_order(order))


def pos_disc_sides(a, b, c, x: QPower, y: QPower, order):
    D = b * b - a * c
    T = as_order(order)
    lhs = hecke_f(HeckeParams(a, b, c, x, y), T)

    def rhs(T):
        theta_part = div(vartheta_abc(a, b, c, x, y, T),
                         mul(jacobi_j(MINUS_ONE, a * D, T), jacobi_j(MINUS_ONE, c * D, T), T), T)
        return m_abc(a, b, c, x, y, MINUS_ONE, MINUS_ONE, T) + theta_part

    return lhs, ensure_order(rhs, T)


def verify_pos_disc(a, b, c, x: QPower, y: QPower, order) -> Verdict:
    lhs, rhs = pos_disc_sides(a, b, c, x, y, order)
    return eq_to_order(lhs, rhs, as_order(order))


# -- false thetas and negative discriminant ---------------------------------------

@dataclass(frozen=True)
class FalseThetaSum:
    """sum_r sg(r) X^r q^(kappa binom(r+1,2)) with sg(r) = 1 for r >= 0 and -1 otherwise."""

    base: QPower
    kappa: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", rat(self.kappa))
        if self.kappa <= 0:
            raise InvalidSpec("false theta needs kappa > 0")


def false_theta(s: FalseThetaSum, order) -> PuiseuxSeries:
    """Both tails cut at the first exponent beyond order, walking out from the vertex."""
    T = as_order(order)
    e, k, sign = s.base.exponent, s.kappa, s.base.sign
    scale = math.lcm(e.denominator, k.denominator, 2)
    terms = {}

    def E(r):
        return r * e + k * Fraction(r * (r + 1), 2)

    vertex = -e / k - HALF
    r0 = math.floor(vertex)
    for step, start in ((1, r0), (-1, r0 - 1)):
        r = start
        while True:
            if E(r) > T:
                if (r - vertex) * step > 0:
                    break
            else:
                c = (1 if r >= 0 else -1) * (sign if r & 1 else 1)
                idx = int(E(r) * scale)
                terms[idx] = terms.get(idx, 0) + c
            r += step
    return PuiseuxSeries(terms, scale, T)


def neg_disc_sides(a, b, c, x: QPower, y: QPower, order):
    D = b * b - a * c
    if D >= 0:
        raise InvalidSpec("negDisc needs a negative discriminant")
    T = as_order(order)
    lhs = hecke_f(HeckeParams(a, b, c, x, y), T)

    def part(T, a, c, x, y):
        total = PuiseuxSeries.zero(T)
        for t in range(a):
            th_arg = x.shift(b * t)
            if theta_is_zero(th_arg, a):
                continue
            pre = ((-y) ** t).shift(c * _b2(t))
            X = (((-y) ** a) / ((-x) ** b)).shift(a * _b2(b + 1) - c * _b2(a + 1) - t * D)
            ft = false_theta(FalseThetaSum(X, -a * D), T)
            total = total + _scaled(pre, mul(jacobi_j(th_arg, a, T), ft, T))
        return total

    def rhs(T):
        return (part(T, a, c, x, y) + part(T, c, a, y, x)) * HALF

    return lhs, ensure_order(rhs, T)


def verify_neg_disc(a, b, c, x: QPower, y: QPower, order) -> Verdict:
    lhs, rhs = neg_disc_sides(a, b, c, x, y, order)
    return eq_to_order(lhs, rhs, as_order(order))


def neg_level_rhs(spec: StringSpec, order, printed: bool = False) -> PuiseuxSeries:
    """t-sum over 0 <= t < 2pp' of theta pairs times false thetas.

    The default form is the one negDisc actually yields for f_{1,p',2pp'}:
    (1/2) [q^((1+ell) t) j(-q^(p't + p(p'+ell+1)); q^(2pp')) - j(-q^(p't + p(p'-ell-1)); q^(2pp'))].
    ``printed=True`` evaluates the bracket exactly as displayed in the source
    (q^(1 + ell t) and a plus sign, no 1/2) so the two readings can be compared.
    """
    p, pp, ell, m = spec.p, spec.pp, spec.ell, spec.m
    if not pp < 2 * p:
        raise InvalidSpec("negative level needs p' < 2p")
    c = 2 * p * pp
    N = spec.N
    kappa = -2 * (p * pp) ** 2 * N

    def build(T):
        total = PuiseuxSeries.zero(T)
        for t in range(c):
            pre_e = Fraction((m - ell) * t, 2) + _b2(t)
            j1 = jacobi_j(QPower(-1, pp * t + p * (pp + ell + 1)), c, T)
            j2 = jacobi_j(QPower(-1, pp * t + p * (pp - ell - 1)), c, T)
            if printed:
                pair = j1.shift(1 + ell * t) + j2
            else:
                pair = (j1.shift((1 + ell) * t) - j2) * HALF
            X = QPower(1, (p * pp) ** 2 * N + p * pp * m - t * p * pp * N)
            ft = false_theta(FalseThetaSum(X, kappa), T)
            total = total + mul(pair, ft, T).shift(pre_e) * (-1) ** t
        return total

    return ensure_order(build, as_order(order))


def _over_euler(num_builder, power, order):
    def build(T):
        return div(num_builder(T), euler_infinite(1, T) ** power, T)

    return ensure_order(build, as_order(order))


def minus_half_rhs(m: int, ell: int, order) -> PuiseuxSeries:
    """q^((m-ell)/2) / (q)_inf^2 * sum_{i>=0} (-1)^i q^(i(i+2m+1)/2)."""
    if ell not in (0, 1) or (m - ell) % 2:
        raise InvalidSpec("need ell in {0,1} and m = ell mod 2")
    pre = Fraction(m - ell, 2)

    def num(T):
        terms = {}
        i = 0
        # exponent i(i+2m+1)/2 is convex in i; below the vertex it may still be <= T
        vertex = max(0, -m)
        while True:
            E = Fraction(i * (i + 2 * m + 1), 2) + pre
            if E > T and i > vertex:
                break
            if E <= T:
                terms[E] = terms.get(E, 0) + (-1) ** i
            i += 1
        return PuiseuxSeries.from_exponents(terms, T)

    return _over_euler(num, 2, order)


def bilateral_minus_half(m: int, order) -> PuiseuxSeries:
    """sum_{i in Z} sg(i) (-1)^i q^(i(i+2m+1)/2)."""
    return false_theta(FalseThetaSum(QPower(-1, m), 1), order)


def unilateral_minus_half(m: int, order) -> PuiseuxSeries:
    T = as_order(order)
    terms = {}
    i = 0
    while True:
        E = Fraction(i * (i + 2 * m + 1), 2)
        if E > T and i > max(0, -m):
            break
        if E <= T:
            terms[E] = terms.get(E, 0) + 2 * (-1) ** i
        i += 1
    return PuiseuxSeries.from_exponents(terms, T)


def sg_sum(lin: int, order) -> PuiseuxSeries:
    """sum_r sg(r) q^(r(6r + lin)) as a false theta with X = q^(lin - 6), kappa = 12."""
    return false_theta(FalseThetaSum(QPower(1, lin - 6), 12), order)


def minus_twothirds_rhs(m: int, ell: int, order) -> PuiseuxSeries:
    """Four-term false-theta closed form of the (p, p') = (3, 4) string functions."""
    if not 0 <= ell <= 2 or (m - ell) % 2:
        raise InvalidSpec("need 0 <= ell <= 2 and m = ell mod 2")

    def build(T):
        A = mul(jacobi_j(QPower(1, 1 + ell), 8, T), jacobi_j(QPower(1, 10 + 2 * ell), 16, T), T)
        B = mul(jacobi_j(QPower(1, 5 + ell), 8, T), jacobi_j(QPower(1, 2 + 2 * ell), 16, T), T)
        pieces = [
            (A, Fraction(m - ell, 2), 3 * m + 2, 1),
            (B, Fraction(2 * m - ell + 3), 3 * m + 8, 1),
            (B, Fraction(m - ell + 1), 3 * m + 4, -1),
            (A, Fraction(5 * m - ell, 2) + 4, 3 * m + 10, -1),
        ]
        total = PuiseuxSeries.zero(T)
        for th, e, lin, sgn in pieces:
            total = total + mul(th, sg_sum(lin, T - e), T).shift(e) * sgn
        den = mul(euler_infinite(1, T) ** 3, euler_infinite(16, T), T) * 2
        return div(total, den, T)

    return ensure_order(build, as_order(order))


# -- the 1/2 level ----------------------------------------------------------------

def _half_level_spec(m, ell) -> StringSpec:
    if not 0 <= ell <= 3:
        raise InvalidSpec("need 0 <= ell <= 3 at level 1/2")
    return StringSpec(2, 5, ell, m)


def appell_sum_half_level(m: int, ell: int, order) -> PuiseuxSeries:
    """j(q^(1+ell); q^5) q^((m-ell)/2) sum_{t=0}^{9} (-1)^t q^(-binom(t+1,2)+tm) m(-q^(45+10m-10t), -1; q^100)."""
    pre = Fraction(m - ell, 2)

    def build(T):
        s = PuiseuxSeries.zero(T)
        for t in range(10):
            e = -t * (t + 1) // 2 + t * m
            s = s + appell_m(QPower(-1, 45 + 10 * m - 10 * t), MINUS_ONE, 100, T - e - pre).shift(e) * (-1) ** t
        return mul(jacobi_j(QPower(1, 1 + ell), 5, T), s, T).shift(pre)

    return ensure_order(build, as_order(order))


def residual_R(m: int, ell: int, order) -> PuiseuxSeries:
    """(q)_inf^3 C^{1/2}_{m,ell} minus its Appell-sum part: the theta-limit remainder."""
    spec = _half_level_spec(m, ell)

    def build(T):
        full = mul(string_script_C(spec, T), euler_infinite(1, T) ** 3, T)
        return full - appell_sum_half_level(m, ell, T)

    return ensure_order(build, as_order(order))


def _unwind_poly(m: int) -> PuiseuxSeries:
    from .appell import conv_sum
    return conv_sum(0, m - 1, lambda k: PuiseuxSeries.monomial(m * k - k * (k + 1) // 2, (-1) ** (k % 2)))


def main_expansion_sides(m: int, ell: int, order):
    """LHS: (q)^3 C - j q^((m-ell)/2)(mu-part) minus the two explicit theta lines.
    RHS: residual_R(m, ell). Uses q^binom(m,2) in the first theta line."""
    spec = _half_level_spec(m, ell)
    T = as_order(order)
    pre = Fraction(m - ell, 2)
    bm = _b2(m)

    def lhs(T):
        j5 = jacobi_j(QPower(1, 1 + ell), 5, T)
        full = mul(string_script_C(spec, T), euler_infinite(1, T) ** 3, T)
        mu = mu_eulerian(T)
        mock = mu.shift(bm) * (HALF * (-1) ** (m % 2)) + _unwind_poly(m)
        left = full - mul(j5, mock, T).shift(pre)
        j24 = jacobi_j(QPower(1, 2), 4, T)
        theta1 = div(j24 ** 4, euler_infinite(1, T) ** 3, T) * HALF - msplit_n2_theta_bracket(T)
        line1 = mul(j5, theta1, T).shift(pre + bm) * (-1) ** (m % 2)
        line2 = mul(j5, psi_m(m, T), T).shift(pre)
        return left - line1 - line2

    return ensure_order(lhs, T), residual_R(m, ell, T)


def verify_main_expansion(m: int, ell: int, order) -> Verdict:
    lhs, rhs = main_expansion_sides(m, ell, order)
    return eq_to_order(lhs, rhs, as_order(order))


def J_(a, b, T):
    return jacobi_j(QPower(1, a), b, T)


def _eta_block(T) -> PuiseuxSeries:
    """J_1^3 J_10^3 / (J_4 J_5)."""
    num = mul(euler_infinite(1, T) ** 3, euler_infinite(10, T) ** 3, T)
    return div(num, mul(euler_infinite(4, T), euler_infinite(5, T), T), T)


def strfunc25_short_rhs(ell: int, order) -> PuiseuxSeries:
    """Single-theta-quotient right sides for (q)^3 C^{1/2}_{0,0} (ell=0) and C^{1/2}_{0,2} (ell=2), via mu."""
    if ell not in (0, 2):
        raise InvalidSpec("ell must be 0 or 2")

    def build(T):
        mu = mu_eulerian(T)
        if ell == 0:
            q1 = div(_eta_block(T), mul(J_(1, 10, T), J_(8, 20, T), T), T)
            return (mul(J_(1, 5, T), mu, T) + q1) * HALF
        q2 = div(_eta_block(T), mul(J_(3, 10, T), J_(4, 20, T), T), T)
        return ((mul(J_(2, 5, T), mu, T) - q2) * HALF).shift(-1)

    return ensure_order(build, as_order(order))


def strfunc25_cor_rhs(ell: int, order) -> PuiseuxSeries:
    """The same string functions via A(-q) and one eta quotient."""
    from .appell import A_eulerian
    if ell not in (0, 2):
        raise InvalidSpec("ell must be 0 or 2")

    def build(T):
        Aneg = A_eulerian(T).signed()
        quot = div(mul(euler_infinite(1, T) ** 4, euler_infinite(4, T), T), euler_infinite(2, T) ** 4, T)
        if ell == 0:
            return -2 * mul(J_(1, 5, T), Aneg, T) + mul(quot, J_(8, 20, T), T)
        return (-2 * mul(J_(2, 5, T), Aneg, T)).shift(-1) - mul(quot, J_(4, 20, T), T)

    return ensure_order(build, as_order(order))


def half_level_lhs(ell: int, order) -> PuiseuxSeries:
    T = as_order(order)

    def build(T):
        return mul(string_script_C(StringSpec(2, 5, ell, 0), T), euler_infinite(1, T) ** 3, T)

    return ensure_order(build, T)


def cor_helper_sides(which: int, order):
    """The two eta-quotient identities that carry the mu form of the half-level identities to the f0 form."""
    def lhs(T):
        q5 = div(euler_infinite(1, T) ** 5, euler_infinite(2, T) ** 4, T)
        if which == 1:
            a = mul(J_(1, 5, T), q5, T) * HALF
            b = div(_eta_block(T), mul(J_(1, 10, T), J_(8, 20, T), T), T) * HALF
            return a + b
        a = (mul(J_(2, 5, T), q5, T) * HALF).shift(-1)
        b = (div(_eta_block(T), mul(J_(3, 10, T), J_(4, 20, T), T), T) * HALF).shift(-1)
        return a - b

    def rhs(T):
        quot = div(mul(euler_infinite(1, T) ** 4, euler_infinite(4, T), T), euler_infinite(2, T) ** 4, T)
        if which == 1:
            return mul(quot, J_(8, 20, T), T)
        return -mul(quot, J_(4, 20, T), T)

    T = as_order(order)
    return ensure_order(lhs, T), ensure_order(rhs, T)


def technical_theta_sides(which: int, order):
    """Both sides of the two theta-quotient identities behind the 1/2-level mu formulas."""
    T0 = as_order(order)

    def lhs(T):
        def q(num, den, shift=0, sign=1):
            n = PuiseuxSeries.constant(1)
            for a, b in num:
                n = mul(n, J_(a, b, T), T)
            d = PuiseuxSeries.constant(1)
            for a, b in den:
                d = mul(d, J_(a, b, T), T)
            return div(n, d, T).shift(shift) * sign

        if which == 1:
            br = (q([(1, 5), (6, 20), (8, 40), (18, 40)], [(9, 20), (3, 20), (5, 20)])
                  - q([(2, 5), (2, 20), (16, 40), (18, 40)], [(9, 20), (7, 20), (9, 20)], 1)
                  - q([(2, 5), (2, 20), (2, 40), (16, 40)], [(1, 20), (1, 20), (3, 20)])
                  + q([(1, 5), (6, 20), (2, 40), (8, 40)], [(1, 20), (5, 20), (7, 20)], 3))
        else:
            br = (-q([(1, 5), (6, 20), (8, 40), (14, 40)], [(7, 20), (1, 20), (7, 20)], -1)
                  + q([(2, 5), (2, 20), (14, 40), (16, 40)], [(7, 20), (5, 20), (9, 20)])
                  - q([(2, 5), (2, 20), (6, 40), (16, 40)], [(3, 20), (1, 20), (5, 20)], -1)
                  - q([(1, 5), (6, 20), (6, 40), (8, 40)], [(3, 20), (3, 20), (9, 20)], 1))
        pre = div(euler_infinite(20, T) ** 3,
                  mul(jacobi_j(MINUS_ONE, 4, T), jacobi_j(MINUS_ONE, 20, T), T), T)
        return 2 * mul(pre, br, T)

    def rhs(T):
        j24 = div(J_(2, 4, T) ** 4, euler_infinite(1, T) ** 3, T)
        if which == 1:
            return (-mul(J_(1, 5, T), j24, T) + div(_eta_block(T), mul(J_(1, 10, T), J_(8, 20, T), T), T)) * HALF
        return ((-mul(J_(2, 5, T), j24, T) - div(_eta_block(T), mul(J_(3, 10, T), J_(4, 20, T), T), T)) * HALF).shift(-1)

    return ensure_order(lhs, T0), ensure_order(rhs, T0)
