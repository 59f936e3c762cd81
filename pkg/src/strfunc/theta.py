"""Theta functions j(x; q^rho) at signed q-power arguments and classical identities.

j(x; q) = (x)_inf (q/x)_inf (q)_inf = sum_n (-1)^n q^binom(n,2) x^n.
A multi-argument shorthand j(a, b, ...; q) means the product of the single
thetas; ``theta_product`` implements it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NonGeneric
from .series import (INF, PuiseuxSeries, as_order, div, ensure_order, eq_to_order,
                     euler_infinite, mul, pochhammer, rat, Verdict)


@dataclass(frozen=True)
class QPower:
    """The argument sign * q^exponent."""

    sign: int
    exponent: Fraction

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "exponent", rat(self.exponent))

    @classmethod
    def of(cls, e=0, sign: int = 1) -> "QPower":
        return cls(sign, rat(e))

    @classmethod
    def parse(cls, text: str) -> "QPower":
        """Parse '1', '-1', 'q', '-q^2/7', 'q^(3/7)' and similar."""
        t = text.replace(" ", "").replace("(", "").replace(")", "")
        sign = 1
        if t.startswith("-"):
            sign, t = -1, t[1:]
        elif t.startswith("+"):
            t = t[1:]
        if t == "1":
            return cls(sign, Fraction(0))
        if t == "q":
            return cls(sign, Fraction(1))
        if t.startswith("q^"):
            return cls(sign, Fraction(t[2:]))
        raise ValueError(f"cannot parse q-power {text!r}")

    def __mul__(self, other):
        if isinstance(other, QPower):
            return QPower(self.sign * other.sign, self.exponent + other.exponent)
        if other in (1, -1):
            return QPower(self.sign * other, self.exponent)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return QPower(-self.sign, self.exponent)

    def __truediv__(self, other):
        if isinstance(other, QPower):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if other in (1, -1):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if isinstance(n, Fraction):
            if n.denominator != 1:
                raise ValueError(f"non-integral power {n} of a q-power")
            n = n.numerator
        if not isinstance(n, int):
            raise ValueError(f"non-integral power {n!r} of a q-power")
        return QPower(self.sign if n % 2 else 1, self.exponent * n)

    def inverse(self) -> "QPower":
        return QPower(self.sign, -self.exponent)

    def shift(self, r) -> "QPower":
        """Multiply by q^r."""
        return QPower(self.sign, self.exponent + rat(r))

    def series(self, order=INF) -> PuiseuxSeries:
        return PuiseuxSeries.monomial(self.exponent, self.sign, order)

    def __str__(self):
        s = "-" if self.sign < 0 else ""
        if self.exponent == 0:
            return s + "1"
        return f"{s}q^{self.exponent}"


QLike = Union[QPower, str, int]


def qp(x, sign: int = 1) -> QPower:
    """Convenience: qp(3) = q^3, qp('1/7', -1) = -q^(1/7), qp('-q^2') parsed."""
    if isinstance(x, QPower):
        return x
    if isinstance(x, str) and "q" in x:
        return QPower.parse(x)
    return QPower(sign, rat(x))


def theta_is_zero(x: QPower, rho) -> bool:
    """j(x; q^rho) vanishes identically exactly when x = q^(k rho), k integer."""
    rho = rat(rho)
    return x.sign == 1 and (x.exponent / rho).denominator == 1


def jacobi_j(x: QPower, rho, order) -> PuiseuxSeries:
    """sum_n (-1)^n q^(rho binom(n,2)) x^n truncated at exponent ``order``."""
    rho, order = rat(rho), as_order(order)
    if rho <= 0:
        raise ValueError("rho must be positive")
    if order == INF:
        raise ValueError("theta series need a finite order")
    e = x.exponent
    if theta_is_zero(x, rho):
        return PuiseuxSeries.zero(order)
    D = math.lcm(rho.denominator, e.denominator)
    step = (-x.sign)  # coefficient of term n is step^n
    terms = {}

    def exponent(n):
        return rho * (n * (n - 1) // 2) + n * e

    # E(n) is a convex quadratic with vertex at n* = 1/2 - e/rho; walking away
    # from the vertex E is non-decreasing, so stop at the first E > order
    # found on the far side of the vertex.
    vertex = Fraction(1, 2) - e / rho
    n0 = math.floor(vertex)
    for direction, start in ((1, n0), (-1, n0 - 1)):
        n = start
        while True:
            E = exponent(n)
            if E > order:
                if (n - vertex) * direction > 0:
                    break
            else:
                c = 1 if step == 1 or n % 2 == 0 else -1
                k = int(E * D)
                terms[k] = terms.get(k, 0) + c
            n += direction
    return PuiseuxSeries(terms, D, order)


def jacobi_j_product(x: QPower, rho, order) -> PuiseuxSeries:
    """(x; q^rho)_inf (q^rho/x; q^rho)_inf (q^rho; q^rho)_inf.

    Needs 0 <= exponent < rho, or exponent = 0 with sign -1, so the two
    Pochhammer symbols converge formally.
    """
    rho, order = rat(rho), as_order(order)
    other = QPower(x.sign, rho - x.exponent)
    if theta_is_zero(x, rho):
        return PuiseuxSeries.zero(order)
    parts = [pochhammer(x, rho, INF, order), pochhammer(other, rho, INF, order),
             euler_infinite(rho, order)]
    out = parts[0]
    for p in parts[1:]:
        out = mul(out, p, order)
    return out


def J(a, b, order) -> PuiseuxSeries:
    return jacobi_j(QPower(1, rat(a)), b, order)


def Jbar(a, b, order) -> PuiseuxSeries:
    return jacobi_j(QPower(-1, rat(a)), b, order)


def Junder(a, order) -> PuiseuxSeries:
    """J_a = (q^a; q^a)_inf."""
    return euler_infinite(a, order)


def theta_product(args, rho, order) -> PuiseuxSeries:
    """j(x1, x2, ...; q^rho) = product of the individual thetas."""
    out = PuiseuxSeries.constant(1)
    for x in args:
        out = mul(out, jacobi_j(x, rho, order), order)
    return out.truncate(order)


def signed_monomial(sign: int, e, order=INF) -> PuiseuxSeries:
    return PuiseuxSeries.monomial(e, sign, order)


def jsplit(x: QPower, rho, m: int, order) -> PuiseuxSeries:
    """sum_{k<m} (-1)^k q^(rho binom(k,2)) x^k j((-1)^(m+1) q^(rho(binom(m,2)+mk)) x^m; q^(rho m^2))."""
    rho, order = rat(rho), as_order(order)
    if m < 1:
        raise ValueError("m must be a positive integer")

    def build(T):
        total = PuiseuxSeries.zero(T)
        for k in range(m):
            pre = QPower((-1) ** k, 0) * (x ** k)
            pre = pre.shift(rho * (k * (k - 1) // 2))
            arg = (x ** m).shift(rho * (m * (m - 1) // 2 + m * k)) * (-1) ** (m + 1)
            inner = jacobi_j(arg, rho * m * m, T - pre.exponent)
            total = total + inner.shift(pre.exponent) * pre.sign
        return total

    return ensure_order(build, order)


def quintuple_sides(x: QPower, rho, order):
    rho, order = rat(rho), as_order(order)
    if theta_is_zero(x, rho):
        raise NonGeneric(f"j({x}; q^{rho}) vanishes; quintuple quotient undefined")

    def lhs(T):
        a = jacobi_j((x ** 3).shift(rho), 3 * rho, T)
        b = jacobi_j((x ** 3).shift(2 * rho), 3 * rho, T - x.exponent)
        return a + b.shift(x.exponent) * x.sign

    def rhs(T):
        num = mul(euler_infinite(rho, T), jacobi_j(x ** 2, rho, T), T)
        return div(num, jacobi_j(x, rho, T), T)

    return ensure_order(lhs, order), ensure_order(rhs, order)


def quintuple_check(x: QPower, rho, order) -> Verdict:
    """j(q^rho x^3; q^3rho) + x j(q^2rho x^3; q^3rho) = J_rho j(x^2; q^rho) / j(x; q^rho)."""
    a, b = quintuple_sides(x, rho, order)
    return eq_to_order(a, b, as_order(order))


def ah6_sides(x: QPower, y: QPower, rho, n: int, order):
    """Both sides of the (n+1)-term expansion of j(x; q) j(y; q^n), with q -> q^rho."""
    rho, order = rat(rho), as_order(order)

    def lhs(T):
        return mul(jacobi_j(x, rho, T), jacobi_j(y, n * rho, T), T)

    def rhs(T):
        total = PuiseuxSeries.zero(T)
        for k in range(n + 1):
            pre = (x ** k) * (-1) ** k
            pre = pre.shift(rho * (k * (k - 1) // 2))
            a1 = ((x ** n) * y).shift(rho * (n * (n - 1) // 2 + k * n)) * (-1) ** n
            a2 = (y / x).shift(rho * (1 - k)) * -1
            inner_T = T - pre.exponent
            t1 = jacobi_j(a1, rho * n * (n + 1), inner_T - min(0, _val_hint(a2, rho * (n + 1))))
            t2 = jacobi_j(a2, rho * (n + 1), inner_T - min(0, _val_hint(a1, rho * n * (n + 1))))
            total = total + mul(t1, t2, inner_T).shift(pre.exponent) * pre.sign
        return total

    return ensure_order(lhs, order), ensure_order(rhs, order)


def _val_hint(x: QPower, rho) -> Fraction:
    """Least exponent of j(x; q^rho) (the vertex value of its exponent parabola)."""
    rho = rat(rho)
    n0 = math.floor(Fraction(1, 2) - x.exponent / rho)
    return min(rho * (n * (n - 1) // 2) + n * x.exponent for n in (n0, n0 + 1))


def ah6_check(x: QPower, y: QPower, rho, n: int, order) -> Verdict:
    a, b = ah6_sides(x, y, rho, n, order)
    return eq_to_order(a, b, as_order(order))


def theta_valuation(x: QPower, rho) -> Fraction:
    """Exponent of the leading term of j(x; q^rho) for x not a zero of j.

    Two adjacent n can tie at the vertex; their coefficients then cancel only
    when j vanishes, so the minimum exponent is always attained.
    """
    return _val_hint(x, rho)


def _monomial_times(x: QPower, s: PuiseuxSeries) -> PuiseuxSeries:
    return s.shift(x.exponent) * x.sign


def jtp_sides(x: QPower, rho, order):
    """Sum form and product form of j(x; q^rho) (exponent of x in [0, rho))."""
    return jacobi_j(x, rho, order), jacobi_j_product(x, rho, order)


def j_elliptic_sides(x: QPower, rho, n: int, order):
    """j(q^(n rho) x; q^rho) and (-1)^n q^(-rho binom(n,2)) x^(-n) j(x; q^rho)."""
    rho, T = rat(rho), as_order(order)
    lhs = jacobi_j(x.shift(n * rho), rho, T)
    pre = (x ** -n).shift(-rho * (n * (n - 1) // 2)) * (-1) ** (n % 2)
    rhs = _monomial_times(pre, jacobi_j(x, rho, T - pre.exponent))
    return lhs, rhs.truncate(T)


def j_flip_sides(x: QPower, rho, which: int, order):
    """j(x) = j(q^rho/x) (which=1) and j(x) = -x j(1/x) (which=2), modulus q^rho."""
    rho, T = rat(rho), as_order(order)
    lhs = jacobi_j(x, rho, T)
    if which == 1:
        return lhs, jacobi_j(x.inverse().shift(rho), rho, T)
    pre = -x
    return lhs, _monomial_times(pre, jacobi_j(x.inverse(), rho, T - pre.exponent)).truncate(T)


def product_split_sides(x: QPower, rho, n: int, order):
    """j(x; q^rho) and J_rho j(x, q^rho x, ..., q^((n-1) rho) x; q^(n rho)) / J_(n rho)^n."""
    rho, T = rat(rho), as_order(order)

    def rhs(T):
        prod = theta_product([x.shift(i * rho) for i in range(n)], n * rho, T)
        num = mul(euler_infinite(rho, T), prod, T)
        return div(num, euler_infinite(n * rho, T) ** n, T)

    return jacobi_j(x, rho, T), ensure_order(rhs, T)
