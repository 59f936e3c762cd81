"""Exact truncated Laurent-Puiseux series in q with rational coefficients.

A series stores coefficients of q^(k/D) for integer k on a common grid of
step 1/D, together with a truncation order T: every exponent <= T is known
exactly and nothing is claimed about exponents > T.  An order of ``INF``
marks an exactly known finite sum (a Laurent polynomial).

Every operation propagates the tightest order it can justify:

* ``a + b``  -> min(Ta, Tb)
* ``a * b``  -> min(Ta + val(b), Tb + val(a))
* ``a / b``  -> min(Ta - val(b), Tb + val(a) - 2 val(b))

where ``val`` is the least stored exponent (the order itself for a series
that is zero to its order).
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from .errors import DivergentProduct, OrderExceeded, ScaleOverflow, ZeroLeadingTerm

INF = math.inf
MAX_SCALE = 12000

Rat = Fraction
Coeff = Union[int, Fraction]
OrderLike = Union[int, Fraction, float, str]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not x.is_integer():
            raise TypeError(f"refusing inexact float {x!r} as a rational")
        return Fraction(int(x))
    return Fraction(x)


def as_order(T) -> Union[Fraction, float]:
    if T is None or (isinstance(T, float) and math.isinf(T)):
        if T is not None and T < 0:
            raise ValueError("order -inf is meaningless")
        return INF
    if isinstance(T, str) and T.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return rat(T)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div_exact(s, c):
    if c == 1:
        return s
    if c == -1:
        return -s
    if type(s) is int and type(c) is int and s % c == 0:
        return s // c
    return _norm(Fraction(s) / c)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _floor_index(order, scale: int) -> Optional[int]:
    if order == INF:
        return None
    return math.floor(order * scale)


class PuiseuxSeries:
    __slots__ = ("scale", "terms", "order")

    def __init__(self, terms=None, scale: int = 1, order: OrderLike = INF):
        scale = int(scale)
        if scale <= 0:
            raise ValueError("scale must be positive")
        order = as_order(order)
        limit = _floor_index(order, scale)
        clean = {}
        if terms:
            for k, c in terms.items():
                if c == 0:
                    continue
                k = int(k)
                if limit is not None and k > limit:
                    continue
                clean[k] = _norm(c) if type(c) is Fraction else c
        g = scale
        for k in clean:
            if g == 1:
                break
            g = math.gcd(g, k)
        if g > 1:
            clean = {k // g: c for k, c in clean.items()}
            scale //= g
        if scale > MAX_SCALE:
            raise ScaleOverflow(f"exponent denominator {scale} exceeds cap {MAX_SCALE}")
        self.scale = scale
        self.terms = dict(sorted(clean.items()))
        self.order = order

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_exponents(cls, mapping, order: OrderLike = INF) -> "PuiseuxSeries":
        """Build from a mapping exponent -> coefficient."""
        exps = {rat(e): c for e, c in mapping.items()}
        D = 1
        for e in exps:
            D = _lcm(D, e.denominator)
        return cls({int(e * D): c for e, c in exps.items()}, D, order)

    @classmethod
    def constant(cls, c: Coeff, order: OrderLike = INF) -> "PuiseuxSeries":
        return cls({0: c}, 1, order)

    @classmethod
    def monomial(cls, e, c: Coeff = 1, order: OrderLike = INF) -> "PuiseuxSeries":
        return cls.from_exponents({rat(e): c}, order)

    @classmethod
    def zero(cls, order: OrderLike = INF) -> "PuiseuxSeries":
        return cls({}, 1, order)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.order == INF

    def valuation(self):
        """Least stored exponent; the order itself for a zero series."""
        if not self.terms:
            return self.order
        return Fraction(next(iter(self.terms)), self.scale)

    def leading(self):
        if not self.terms:
            raise ZeroLeadingTerm("series is zero to its order")
        k, c = next(iter(self.terms.items()))
        return Fraction(k, self.scale), c

    def items(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        D = self.scale
        return [(Fraction(k, D), c) for k, c in self.terms.items()]

    def coeff(self, e) -> Coeff:
        e = rat(e)
        if e > self.order:
            raise OrderExceeded(f"q^{e} is beyond the known order {self.order}")
        k = e * self.scale
        if k.denominator != 1:
            return 0
        return self.terms.get(k.numerator, 0)

    def coefficients(self, start=0, stop=None, step=1) -> list:
        """Coefficient list at exponents start, start+step, ... <= stop."""
        start, step = rat(start), rat(step)
        stop = self.order if stop is None else rat(stop)
        out, e = [], start
        while e <= stop:
            out.append(self.coeff(e))
            e += step
        return out

    def has_integer_exponents(self) -> bool:
        return self.scale == 1

    def has_integer_coefficients(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"PuiseuxSeries({self.to_text(8)})"

    # -- structural transforms -------------------------------------------
    def _rebased(self, D: int):
        f = D // self.scale
        if f == 1:
            return self.terms
        return {k * f: c for k, c in self.terms.items()}

    def truncate(self, T: OrderLike) -> "PuiseuxSeries":
        T = as_order(T)
        if T >= self.order:
            return self
        return PuiseuxSeries(self.terms, self.scale, T)

    def shift(self, e) -> "PuiseuxSeries":
        """Multiply by q^e."""
        e = rat(e)
        if e == 0:
            return self
        D = _lcm(self.scale, e.denominator)
        off = int(e * D)
        order = self.order if self.order == INF else self.order + e
        return PuiseuxSeries({k + off: c for k, c in self._rebased(D).items()}, D, order)

    def subs(self, sigma) -> "PuiseuxSeries":
        """Substitute q -> q^sigma for a positive rational sigma."""
        sigma = rat(sigma)
        if sigma <= 0:
            raise ValueError("substitution exponent must be positive")
        p, r = sigma.numerator, sigma.denominator
        order = self.order if self.order == INF else self.order * sigma
        return PuiseuxSeries({k * p: c for k, c in self.terms.items()}, self.scale * r, order)

    def map_coefficients(self, fn: Callable) -> "PuiseuxSeries":
        return PuiseuxSeries({k: fn(c) for k, c in self.terms.items()}, self.scale, self.order)

    def signed(self) -> "PuiseuxSeries":
        """Substitute q -> -q (integer exponents only)."""
        if self.scale != 1:
            raise ValueError("q -> -q needs integer exponents")
        return PuiseuxSeries({k: (-c if k & 1 else c) for k, c in self.terms.items()}, 1, self.order)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return PuiseuxSeries({k: -c for k, c in self.terms.items()}, self.scale, self.order)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PuiseuxSeries.zero(self.order)
            return PuiseuxSeries({k: c * other for k, c in self.terms.items()}, self.scale, self.order)
        if isinstance(other, PuiseuxSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            inv = Fraction(1, 1) / other
            return PuiseuxSeries({k: c * inv for k, c in self.terms.items()}, self.scale, self.order)
        if isinstance(other, PuiseuxSeries):
            return div(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return invert(self) ** (-n)
        result = PuiseuxSeries.constant(1)
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        T = min(self.order, other.order)
        return eq_to_order(self, other, T).equal

    __hash__ = None

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        order = "inf" if self.order == INF else str(self.order)
        return {
            "scale": self.scale,
            "order": order,
            "terms": [[k, str(Fraction(c))] for k, c in self.terms.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "PuiseuxSeries":
        if isinstance(obj, str):
            obj = json.loads(obj)
        terms = {int(k): Fraction(c) for k, c in obj["terms"]}
        return cls(terms, int(obj["scale"]), as_order(obj["order"]))

    def to_text(self, max_terms: Optional[int] = None) -> str:
        parts = []
        items = self.items()
        if max_terms is not None and len(items) > max_terms:
            items, tail = items[:max_terms], True
        else:
            tail = False
        for e, c in items:
            parts.append(_term_text(e, c))
        if tail:
            parts.append("...")
        text = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.order != INF:
            text += f" + O(q^>{self.order})"
        return text


def _term_text(e: Fraction, c) -> str:
    if e == 0:
        return str(c)
    ex = str(e) if e.denominator == 1 and e >= 0 else f"({e})"
    mono = "q" if e == 1 else f"q^{ex}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _coerce(x):
    if isinstance(x, PuiseuxSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return PuiseuxSeries.constant(x)
    return NotImplemented


def add(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    D = _lcm(a.scale, b.scale)
    out = dict(a._rebased(D))
    for k, c in b._rebased(D).items():
        out[k] = out.get(k, 0) + c
    return PuiseuxSeries(out, D, min(a.order, b.order))


def _product_order(a: PuiseuxSeries, b: PuiseuxSeries):
    return min(a.order + b.valuation(), b.order + a.valuation())


def mul(a: PuiseuxSeries, b: PuiseuxSeries, order: OrderLike = None) -> PuiseuxSeries:
    """Product; ``order`` optionally caps the output order to save work."""
    T = _product_order(a, b)
    if order is not None:
        T = min(T, as_order(order))
    D = _lcm(a.scale, b.scale)
    limit = _floor_index(T, D)
    A = list(a._rebased(D).items())
    B = list(b._rebased(D).items())
    if len(A) > len(B):
        A, B = B, A
    bk = [k for k, _ in B]
    bc = [c for _, c in B]
    n = len(bk)
    acc = {}
    get = acc.get
    for ka, ca in A:
        end = n if limit is None else bisect_right(bk, limit - ka)
        for j in range(end):
            k = ka + bk[j]
            acc[k] = get(k, 0) + ca * bc[j]
    return PuiseuxSeries(acc, D, T)


def div(a: PuiseuxSeries, b: PuiseuxSeries, order: OrderLike = None) -> PuiseuxSeries:
    """Quotient a / b; b must have a known nonzero leading term."""
    if b.is_zero():
        raise ZeroLeadingTerm("division by a series that is zero to its order")
    vb = b.valuation()
    T = min(a.order - vb, b.order + a.valuation() - 2 * vb)
    if order is not None:
        T = min(T, as_order(order))
    if T == INF:
        if len(b.terms) == 1:
            e, c = b.leading()
            return (a / c).shift(-e)
        raise ValueError("quotient by a non-monomial polynomial needs an order cap")
    D = _lcm(a.scale, b.scale)
    A = a._rebased(D)
    B = list(b._rebased(D).items())
    limit = _floor_index(T, D)
    kb0, cb = B[0]
    rest = [(kb - kb0, c) for kb, c in B[1:]]
    if not A:
        return PuiseuxSeries.zero(T)
    ka0 = next(iter(A))
    g = 0
    for d, _ in rest:
        g = math.gcd(g, d)
    for k in A:
        g = math.gcd(g, k - ka0)
    start = ka0 - kb0
    if g == 0:
        g = D
    res = {}
    get = res.get
    k = start
    while k <= limit:
        s = A.get(k + kb0, 0)
        span = k - start
        for d, c in rest:
            if d > span:
                break
            r = get(k - d)
            if r:
                s -= c * r
        if s:
            res[k] = _div_exact(s, cb)
        k += g
    return PuiseuxSeries(res, D, T)


def invert(a: PuiseuxSeries, order: OrderLike = None) -> PuiseuxSeries:
    return div(PuiseuxSeries.constant(1), a, order)


def product(factors: Iterable[PuiseuxSeries], order: OrderLike = None) -> PuiseuxSeries:
    result = PuiseuxSeries.constant(1)
    for f in factors:
        result = mul(result, f, order)
    return result


def ensure_order(builder: Callable[[object], PuiseuxSeries], T: OrderLike,
                 max_rounds: int = 6) -> PuiseuxSeries:
    """Call ``builder(internal_order)`` until the result is known to order T.

    Negative valuations in intermediate quotients cost order, so the builder
    is re-run with the internal order raised by the observed deficit.
    """
    T = as_order(T)
    internal = T
    for _ in range(max_rounds):
        s = builder(internal)
        if s.order >= T:
            return s.truncate(T)
        internal = internal + (T - s.order) + Fraction(1, 2)
    raise OrderExceeded(f"could not reach order {T}; last result order {s.order}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of comparing two series up to a given order."""

    equal: bool
    order: Fraction
    exponent: Optional[Fraction] = None
    lhs: Optional[Coeff] = None
    rhs: Optional[Coeff] = None

    def __bool__(self):
        return self.equal

    def describe(self) -> str:
        if self.equal:
            return f"equal to order {self.order}"
        return f"mismatch at q^{self.exponent}: lhs {self.lhs}, rhs {self.rhs}"


def eq_to_order(a: PuiseuxSeries, b: PuiseuxSeries, T: OrderLike) -> Verdict:
    T = as_order(T)
    if T > a.order or T > b.order:
        raise OrderExceeded(f"comparison order {T} exceeds min({a.order}, {b.order})")
    D = _lcm(a.scale, b.scale)
    A, B = a._rebased(D), b._rebased(D)
    limit = _floor_index(T, D)
    for k in sorted(set(A) | set(B)):
        if limit is not None and k > limit:
            break
        ca, cb = A.get(k, 0), B.get(k, 0)
        if ca != cb:
            return Verdict(False, T, Fraction(k, D), ca, cb)
    return Verdict(True, T)


# -- standard products ------------------------------------------------------

def euler_infinite(rho, order: OrderLike) -> PuiseuxSeries:
    """(q^rho; q^rho)_inf, multiplying factors 1 - q^(n rho) with n rho <= order."""
    rho, order = rat(rho), as_order(order)
    if rho <= 0:
        raise ValueError("rho must be positive")
    N = math.floor(order / rho) if order >= 0 else -1
    if N < 0:
        return PuiseuxSeries.zero(order)
    c = [0] * (N + 1)
    c[0] = 1
    for n in range(1, N + 1):
        for k in range(N, n - 1, -1):
            if c[k - n]:
                c[k] -= c[k - n]
    D = rho.denominator
    p = rho.numerator
    return PuiseuxSeries({k * p: v for k, v in enumerate(c) if v}, D, order)


def pochhammer(x, rho, n, order: OrderLike) -> PuiseuxSeries:
    """prod_{i=0}^{n-1} (1 - q^(rho i) x) with x a QPower; n may be math.inf."""
    rho, order = rat(rho), as_order(order)
    if rho <= 0:
        raise ValueError("rho must be positive")
    sign, e = x.sign, x.exponent
    infinite = n == INF or n is None
    if infinite and e <= 0 and sign == 1:
        raise DivergentProduct(f"(q^{e};q^{rho})_inf has a factor 1 - q^(<=0)")
    # exact Laurent part from factors with negative exponent
    if infinite:
        lead = Fraction(0)
        i = 0
        while e + rho * i < 0:
            lead += e + rho * i
            i += 1
        N = None
    else:
        N = int(n)
        if N < 0:
            raise ValueError("finite Pochhammer length must be non-negative")
        lead = sum((min(Fraction(0), e + rho * i) for i in range(N)), Fraction(0))
    cap = order - lead if order != INF else INF
    result = PuiseuxSeries.constant(1)
    i = 0
    while True:
        if N is not None and i >= N:
            break
        ex = e + rho * i
        if N is None and ex > cap:
            break
        if N is not None and ex > cap and ex > 0:
            i += 1
            continue
        factor = PuiseuxSeries.from_exponents({0: 1, ex: -sign} if ex != 0 else {0: 1 - sign})
        result = mul(result, factor, cap)
        i += 1
    return result.truncate(order)


def eta(k: int, order: OrderLike) -> PuiseuxSeries:
    """q^(k/24) prod_{n>=1} (1 - q^(k n))."""
    order = as_order(order)
    pre = Fraction(k, 24)
    return euler_infinite(k, order - pre).shift(pre)


def q() -> PuiseuxSeries:
    return PuiseuxSeries.monomial(1)
