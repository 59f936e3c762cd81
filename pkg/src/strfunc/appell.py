"""Appell functions m(x, z; q^rho), Eulerian mock theta series and Appell splittings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import AppellPole, NonGeneric, ZeroThetaDenominator
from .series import (PuiseuxSeries, Verdict, as_order, div, ensure_order, eq_to_order,
                     euler_infinite, mul, pochhammer, rat)
from .theta import QPower, jacobi_j, theta_is_zero

HALF = Fraction(1, 2)
MINUS_ONE = QPower(-1, Fraction(0))


@dataclass(frozen=True)
class AppellArgs:
    x: QPower
    z: QPower
    rho: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "rho", rat(self.rho))
        if theta_is_zero(self.z, self.rho):
            raise ZeroThetaDenominator(f"j({self.z}; q^{self.rho}) vanishes")


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def _lerch_sum(x: QPower, z: QPower, rho: Fraction, T) -> PuiseuxSeries:
    """sum_r (-1)^r q^(rho binom(r,2)) z^r / (1 - q^(rho(r-1)) x z), truncated at T."""
    ez = z.exponent
    ew = x.exponent + z.exponent - rho
    sw = x.sign * z.sign
    # a pole 1 - q^0 occurs at r = 1 - (ex+ez)/rho when sw = +1
    r_pole = -ew / rho
    if sw == 1 and r_pole.denominator == 1:
        raise AppellPole(f"m({x}, {z}; q^{rho}) has a vanishing denominator at r = {r_pole}")
    D = math.lcm(rho.denominator, ez.denominator, ew.denominator)

    def num_exp(r):
        return rho * _binom2(r) + r * ez

    def lead(r):
        # least exponent of term r; convex in r (quadratic plus max(0, linear))
        E = rho * r + ew
        return num_exp(r) + max(Fraction(0), -E)

    r = math.floor(HALF - ez / rho)
    while lead(r - 1) < lead(r):
        r -= 1
    while lead(r + 1) < lead(r):
        r += 1
    terms = {}

    def add_term(r):
        N = num_exp(r)
        coef = (-z.sign) ** (r & 1)
        E = rho * r + ew
        if E > 0:
            k, e, c = 0, N, coef
            while e <= T:
                idx = int(e * D)
                terms[idx] = terms.get(idx, 0) + c
                e += E
                c *= sw
        elif E < 0:
            e, c = N - E, -coef * sw
            while e <= T:
                idx = int(e * D)
                terms[idx] = terms.get(idx, 0) + c
                e -= E
                c *= sw
        else:
            idx = int(N * D)
            terms[idx] = terms.get(idx, 0) + Fraction(coef, 2)

    for direction, start in ((1, r), (-1, r - 1)):
        n = start
        while lead(n) <= T:
            add_term(n)
            n += direction
    return PuiseuxSeries(terms, D, T)


def appell_m(x: QPower, z: QPower, rho=1, order=100) -> PuiseuxSeries:
    """m(x, z; q^rho) = (1/j(z; q^rho)) sum_r (-1)^r q^(rho binom(r,2)) z^r / (1 - q^(rho(r-1)) x z)."""
    args = AppellArgs(x, z, rho)
    rho = args.rho

    def build(T):
        return div(_lerch_sum(x, z, rho, T), jacobi_j(z, rho, T), T)

    return ensure_order(build, as_order(order))


def appell(args: AppellArgs, order) -> PuiseuxSeries:
    return appell_m(args.x, args.z, args.rho, order)


# -- Eulerian forms --------------------------------------------------------

def mu_eulerian(order) -> PuiseuxSeries:
    """mu(q) = sum_n (-1)^n q^(n^2) (q;q^2)_n / (-q^2;q^2)_n^2, summands with n^2 <= order."""
    T = as_order(order)
    total = PuiseuxSeries.zero(T)
    n = 0
    while n * n <= T:
        R = T - n * n
        num = pochhammer(QPower(1, 1), 2, n, R)
        den = pochhammer(QPower(-1, 2), 2, n, R)
        term = div(num, mul(den, den, R), R).shift(n * n)
        total = total + (term if n % 2 == 0 else -term)
        n += 1
    return total


def A_eulerian(order) -> PuiseuxSeries:
    """A(q) = sum_n q^((n+1)^2) (-q;q^2)_n / (q;q^2)_{n+1}^2, summands with (n+1)^2 <= order."""
    T = as_order(order)
    total = PuiseuxSeries.zero(T)
    n = 0
    while (n + 1) ** 2 <= T:
        R = T - (n + 1) ** 2
        num = pochhammer(QPower(-1, 1), 2, n, R)
        den = pochhammer(QPower(1, 1), 2, n + 1, R)
        total = total + div(num, mul(den, den, R), R).shift((n + 1) ** 2)
        n += 1
    return total


def f0_eulerian(order) -> PuiseuxSeries:
    """Fifth-order f0(q) = sum_n q^(n^2) / (-q)_n."""
    T = as_order(order)
    total = PuiseuxSeries.zero(T)
    n = 0
    while n * n <= T:
        R = T - n * n
        total = total + div(PuiseuxSeries.constant(1), pochhammer(QPower(-1, 1), 1, n, R), R).shift(n * n)
        n += 1
    return total


def f0_rhs(order) -> PuiseuxSeries:
    """2 - 2 sum_n q^(10n^2) / ((q^2;q^10)_{n+1} (q^8;q^10)_n) + J_5 J_{5,10} / J_{1,5}."""
    T = as_order(order)
    s = PuiseuxSeries.zero(T)
    n = 0
    while 10 * n * n <= T:
        R = T - 10 * n * n
        den = mul(pochhammer(QPower(1, 2), 10, n + 1, R), pochhammer(QPower(1, 8), 10, n, R), R)
        s = s + div(PuiseuxSeries.constant(1), den, R).shift(10 * n * n)
        n += 1
    theta = div(mul(euler_infinite(5, T), jacobi_j(QPower(1, 5), 10, T), T),
                jacobi_j(QPower(1, 1), 5, T), T)
    return 2 - 2 * s + theta


def f0_check(order) -> Verdict:
    T = as_order(order)
    return eq_to_order(f0_eulerian(T), f0_rhs(T), T)


def mu_appell(order) -> PuiseuxSeries:
    """4 m(-q, -1; q^4) - J_{2,4}^4 / J_1^3."""
    T = as_order(order)
    j24 = jacobi_j(QPower(1, 2), 4, T)
    quot = div(j24 ** 4, euler_infinite(1, T) ** 3, T)
    return 4 * appell_m(QPower(-1, 1), MINUS_ONE, 4, T) - quot


def A_appell(order) -> PuiseuxSeries:
    """-m(q, q^2; q^4)."""
    return -appell_m(QPower(1, 1), QPower(1, 2), 4, order)


def muA_rhs(order) -> PuiseuxSeries:
    """J_1^5 / J_2^4."""
    T = as_order(order)
    return div(euler_infinite(1, T) ** 5, euler_infinite(2, T) ** 4, T)


# -- summation convention ---------------------------------------------------

def conv_sum(a: int, b: int, f) -> PuiseuxSeries:
    """sum_{k=a}^{b} f(k) with the standard convention for reversed ranges:
    empty when b = a - 1 and -sum_{k=b+1}^{a-1} f(k) when b < a - 1."""
    total = PuiseuxSeries.zero()
    if b >= a:
        for k in range(a, b + 1):
            total = total + f(k)
    elif b < a - 1:
        for k in range(b + 1, a):
            total = total - f(k)
    return total


def appell_unwind_sides(m: int, order):
    """m(q^m, -1; q) and sum_{k<m} (-1)^k q^(mk - binom(k+1,2)) + (-1)^m q^(binom(m,2)) m(1, -1; q)."""
    T = as_order(order)
    lhs = appell_m(QPower(1, m), MINUS_ONE, 1, T)
    poly = conv_sum(0, m - 1, lambda k: PuiseuxSeries.monomial(m * k - k * (k + 1) // 2, (-1) ** (k % 2)))
    e = m * m - m * (m + 1) // 2
    base = appell_m(QPower(1, 0), MINUS_ONE, 1, T - e)
    rhs = poly + base.shift(e) * (-1) ** (m % 2)
    return lhs, rhs.truncate(T)


def appell_unwind_check(m: int, order) -> Verdict:
    lhs, rhs = appell_unwind_sides(m, order)
    return eq_to_order(lhs, rhs, as_order(order))


# -- general n-splitting ------------------------------------------------------

def _theta_checked(x: QPower, rho, T, label: str) -> PuiseuxSeries:
    if theta_is_zero(x, rho):
        raise NonGeneric(f"{label}: j({x}; q^{rho}) vanishes")
    return jacobi_j(x, rho, T)


def msplit_sides(x: QPower, z: QPower, zp: QPower, rho, n: int, order):
    """Both sides of the n-way splitting of m(x, z; q^rho) with auxiliary z'."""
    rho, T = rat(rho), as_order(order)
    if n < 1:
        raise ValueError("n must be a positive integer")
    b2n = _binom2(n)
    mx_n = (-x) ** n

    def rhs(T):
        total = PuiseuxSeries.zero(T)
        for r in range(n):
            pre = ((-x) ** r).shift(-rho * (r * (r + 1) // 2))
            arg = (-mx_n).shift(rho * (b2n - n * r))
            mm = appell_m(arg, zp, rho * n * n, T - pre.exponent)
            total = total + mm.shift(pre.exponent) * pre.sign
        outer = zp * 1
        den0 = mul(_theta_checked(x * z, rho, T, "j(xz;q)"),
                   _theta_checked(zp, rho * n * n, T, "j(z';q^n^2)"), T)
        inner = PuiseuxSeries.zero(T)
        for r in range(n):
            pre = ((-(x * z)) ** r).shift(rho * _binom2(r))
            t1 = jacobi_j((-(mx_n * z * zp)).shift(rho * (b2n + r)), rho * n, T)
            t2 = jacobi_j(((z ** n) / zp).shift(rho * n * r), rho * n * n, T)
            d1 = _theta_checked((-(mx_n * zp)).shift(rho * b2n), rho * n, T, "j(-q^binom(n,2)(-x)^n z';q^n)")
            d2 = _theta_checked(z.shift(rho * r), rho * n, T, "j(q^r z;q^n)")
            piece = div(mul(t1, t2, T), mul(d1, d2, T), T)
            inner = inner + piece.shift(pre.exponent) * pre.sign
        num = mul(euler_infinite(rho * n, T) ** 3, inner, T)
        corr = div(num, den0, T).shift(outer.exponent) * outer.sign
        return total + corr

    lhs = appell_m(x, z, rho, T)
    return lhs, ensure_order(rhs, T)


def msplit_check(x: QPower, z: QPower, zp: QPower, rho, n: int, order) -> Verdict:
    lhs, rhs = msplit_sides(x, z, zp, rho, n, order)
    return eq_to_order(lhs, rhs, as_order(order))


def msplit_n2_mu_rhs(order) -> PuiseuxSeries:
    """2 m(-q,-1;q^4) - J_2^3/(Jb_{0,1} Jb_{0,4} J_{1,2}) [Jb_{1,2} Jb_{0,4}/Jb_{0,2} + Jb_{0,2} Jb_{2,4}/Jb_{1,2}]."""
    T = as_order(order)
    return 2 * appell_m(QPower(-1, 1), MINUS_ONE, 4, T) - msplit_n2_theta_bracket(T)


def msplit_n2_theta_bracket(order) -> PuiseuxSeries:
    T = as_order(order)

    def jb(a, b):
        return jacobi_j(QPower(-1, a), b, T)

    br = div(mul(jb(1, 2), jb(0, 4), T), jb(0, 2), T) + div(mul(jb(0, 2), jb(2, 4), T), jb(1, 2), T)
    den = mul(mul(jb(0, 1), jb(0, 4), T), jacobi_j(QPower(1, 1), 2, T), T)
    return div(mul(euler_infinite(2, T) ** 3, br, T), den, T)


def msplit_n10_appell_part(m: int, order) -> PuiseuxSeries:
    """sum_{r=0}^{9} (-1)^r q^(-binom(r+1,2) + mr) m(-q^(45 - 10r + 10m), -1; q^100)."""
    T = as_order(order)

    def build(T):
        total = PuiseuxSeries.zero(T)
        for r in range(10):
            e = -r * (r + 1) // 2 + m * r
            mm = appell_m(QPower(-1, 45 - 10 * r + 10 * m), MINUS_ONE, 100, T - e)
            total = total + mm.shift(e) * (-1) ** r
        return total

    return ensure_order(build, T)


def psi_m(m: int, order) -> PuiseuxSeries:
    """Psi_m = J_10^3 / (j(-q^m;q) j(-1;q^100)) sum_r q^(r(r-9)/2 + mr) j(-q^(r+5+10m);q^10) j(-q^(10r);q^100)
    / (j(q^(5+10m);q^10) j(-q^r;q^10))."""
    T = as_order(order)

    def build(T):
        inner = PuiseuxSeries.zero(T)
        den_common = _theta_checked(QPower(1, 5 + 10 * m), 10, T, "j(q^(5+10m);q^10)")
        for r in range(10):
            e = Fraction(r * (r - 9), 2) + m * r
            num = mul(jacobi_j(QPower(-1, r + 5 + 10 * m), 10, T), jacobi_j(QPower(-1, 10 * r), 100, T), T)
            den = mul(den_common, _theta_checked(QPower(-1, r), 10, T, "j(-q^r;q^10)"), T)
            inner = inner + div(num, den, T).shift(e)
        den0 = mul(_theta_checked(QPower(-1, m), 1, T, "j(-q^m;q)"),
                   _theta_checked(MINUS_ONE, 100, T, "j(-1;q^100)"), T)
        return div(mul(euler_infinite(10, T) ** 3, inner, T), den0, T)

    return ensure_order(build, T)


def psi_relation_sides(m: int, order):
    """m(q^m,-1;q) against the ten-term Appell split minus Psi_m."""
    T = as_order(order)
    lhs = appell_m(QPower(1, m), MINUS_ONE, 1, T)
    rhs = msplit_n10_appell_part(m, T) - psi_m(m, T)
    return lhs, rhs


# -- functional equations ------------------------------------------------------

def appell_shift_z_sides(x: QPower, z: QPower, rho, order):
    """m(x, z; q^rho) and m(x, q^rho z; q^rho)."""
    rho, T = rat(rho), as_order(order)
    return appell_m(x, z, rho, T), appell_m(x, z.shift(rho), rho, T)


def appell_flip_sides(x: QPower, z: QPower, rho, order):
    """m(x, z; q^rho) and x^-1 m(x^-1, z^-1; q^rho)."""
    rho, T = rat(rho), as_order(order)
    pre = x.inverse()
    rhs = appell_m(x.inverse(), z.inverse(), rho, T - pre.exponent).shift(pre.exponent) * pre.sign
    return appell_m(x, z, rho, T), rhs.truncate(T)


def appell_shift_x_sides(x: QPower, z: QPower, rho, order):
    """m(q^rho x, z; q^rho) and 1 - x m(x, z; q^rho).

    With modulus q^rho the shift is by q^rho, and the x factor is x itself.
    """
    rho, T = rat(rho), as_order(order)
    inner = appell_m(x, z, rho, T - x.exponent).shift(x.exponent) * x.sign
    return appell_m(x.shift(rho), z, rho, T), (1 - inner).truncate(T)
