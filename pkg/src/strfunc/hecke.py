"""Hecke-type double sums f_{a,b,c}(x, y; q) and admissible-level string functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Tuple

from .errors import InvalidSpec, ZeroLevel
from .series import (PuiseuxSeries, as_order, div, ensure_order, eta, euler_infinite,
                     mul, rat)
from .theta import QPower


@dataclass(frozen=True)
class HeckeParams:
    a: int
    b: int
    c: int
    x: QPower
    y: QPower

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise InvalidSpec("a, b, c must be positive integers")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - self.a * self.c


@dataclass(frozen=True)
class StringSpec:
    """Admissible level N = p'/p - 2 with spin ell and charge m."""

    p: int
    pp: int
    ell: int
    m: int
    N: Fraction = field(init=False)

    def __post_init__(self):
        if self.p < 1 or self.pp < 2:
            raise InvalidSpec("need p >= 1 and p' >= 2")
        if math.gcd(self.p, self.pp) != 1:
            raise InvalidSpec("p, p' must be coprime")
        if not 0 <= self.ell <= self.pp - 2:
            raise InvalidSpec(f"ell must satisfy 0 <= ell <= p'-2 = {self.pp - 2}")
        if (self.m - self.ell) % 2:
            raise InvalidSpec("m and ell must have the same parity")
        object.__setattr__(self, "N", Fraction(self.pp, self.p) - 2)

    @property
    def anomaly(self) -> Fraction:
        """s = -1/8 + (ell+1)^2 / (4(N+2)) - m^2 / (4N)."""
        if self.N == 0:
            raise ZeroLevel("level N = 0 has no string-function anomaly")
        N = self.N
        return Fraction(-1, 8) + Fraction((self.ell + 1) ** 2) / (4 * (N + 2)) - Fraction(self.m ** 2) / (4 * N)

    @property
    def discriminant(self) -> int:
        """Discriminant of f_{1,p',2pp'}: p'^2 - 2pp'."""
        return self.pp * self.pp - 2 * self.p * self.pp


def _vertex_floor(quad, lin) -> int:
    """floor of the minimiser of quad*u^2 + lin*u (quad > 0)."""
    return math.floor(-lin / (2 * quad))


def _min_over_nonneg(quad, lin, const) -> Fraction:
    """min over integers v >= 0 of quad*v^2 + lin*v + const (quad > 0)."""
    v0 = max(0, _vertex_floor(quad, lin))
    return min(quad * v * v + lin * v + const for v in (v0, v0 + 1))


def quadrant_points(A, B, C, L1, L2, i0: int, j0: int, di: int, dj: int,
                    order) -> Iterator[Tuple[int, int, Fraction]]:
    """Lattice points (i, j, E) with E = A i^2 + B ij + C j^2 + L1 i + L2 j <= order
    over i = i0 + di*u, j = j0 + dj*v, u, v >= 0.

    Requires A, C > 0 and a non-negative uv cross coefficient B*di*dj.
    Writing E = Auu u^2 + Buv uv + Avv v^2 + Lu u + Lv v + K with Buv >= 0,
    E >= g(u) + min_v h(v) where g(u) = Auu u^2 + Lu u and h(v) = Avv v^2 + Lv v + K.
    g and h are convex, so u past the vertex of g with g(u) + min h > order
    bounds every later u; for fixed u, E is convex in v and the same argument
    stops the v loop.
    """
    A, B, C, L1, L2 = map(rat, (A, B, C, L1, L2))
    if A <= 0 or C <= 0 or B * di * dj < 0:
        raise ValueError("quadrant enumeration needs A, C > 0 and a non-negative cross term")
    Auu, Avv, Buv = A, C, B * di * dj
    Lu = (2 * A * i0 + B * j0 + L1) * di
    Lv = (2 * C * j0 + B * i0 + L2) * dj
    K = A * i0 * i0 + B * i0 * j0 + C * j0 * j0 + L1 * i0 + L2 * j0
    hmin = _min_over_nonneg(Avv, Lv, K)
    u_vertex = _vertex_floor(Auu, Lu)
    u = 0
    while True:
        if u > u_vertex and Auu * u * u + Lu * u + hmin > order:
            break
        lin_v = Buv * u + Lv
        base = Auu * u * u + Lu * u + K
        v_vertex = _vertex_floor(Avv, lin_v)
        v = 0
        while True:
            E = base + lin_v * v + Avv * v * v
            if E > order:
                if v > v_vertex:
                    break
            else:
                yield i0 + di * u, j0 + dj * v, E
            v += 1
        u += 1


def hecke_f(params: HeckeParams, order) -> PuiseuxSeries:
    """(sum_{r,s>=0} - sum_{r,s<0}) (-1)^(r+s) x^r y^s q^(a binom(r,2) + brs + c binom(s,2))."""
    order = as_order(order)
    a, b, c, x, y = params.a, params.b, params.c, params.x, params.y
    ex, ey = x.exponent, y.exponent
    D = math.lcm(ex.denominator, ey.denominator)
    A, C = Fraction(a, 2), Fraction(c, 2)
    terms = {}
    # E(r,s) = a r^2/2 + b rs + c s^2/2 + (ex - a/2) r + (ey - c/2) s
    quadrants = ((1, 0, 0, 1, 1), (-1, -1, -1, -1, -1))
    for weight, r0, s0, dr, ds in quadrants:
        for r, s, E in quadrant_points(A, b, C, ex - A, ey - C, r0, s0, dr, ds, order):
            sgn = (-x.sign) ** (r & 1) * (-y.sign) ** (s & 1)
            k = int(E * D)
            terms[k] = terms.get(k, 0) + weight * sgn
    return PuiseuxSeries(terms, D, order)


def hecke_f_reference(params: HeckeParams, order, radius: int) -> PuiseuxSeries:
    """Naive double loop over |r|, |s| <= radius; the radius must cover ``order``."""
    order = as_order(order)
    a, b, c, x, y = params.a, params.b, params.c, params.x, params.y
    out = {}
    for r in range(-radius, radius + 1):
        for s in range(-radius, radius + 1):
            if (r >= 0) != (s >= 0):
                continue
            E = a * Fraction(r * (r - 1), 2) + b * r * s + c * Fraction(s * (s - 1), 2) + r * x.exponent + s * y.exponent
            if E > order:
                continue
            sgn = (-x.sign) ** (abs(r) % 2) * (-y.sign) ** (abs(s) % 2)
            w = 1 if r >= 0 else -1
            out[E] = out.get(E, 0) + w * sgn
    return PuiseuxSeries.from_exponents(out, order)


def _over_euler_cubed(build_numerator, order) -> PuiseuxSeries:
    def build(T):
        num = build_numerator(T)
        den = euler_infinite(1, T) ** 3
        return div(num, den.truncate(T), T)

    return ensure_order(build, order)


def string_script_C(spec: StringSpec, order) -> PuiseuxSeries:
    """Integer-normalised string function via two f_{1,p',2pp'} double sums."""
    p, pp, ell, m = spec.p, spec.pp, spec.ell, spec.m

    def numerator(T):
        f1 = hecke_f(HeckeParams(1, pp, 2 * p * pp, QPower(1, Fraction(2 + m + ell, 2)),
                                 QPower(-1, Fraction(p * (pp + ell + 1)))), T)
        f2 = hecke_f(HeckeParams(1, pp, 2 * p * pp, QPower(1, Fraction(m - ell, 2)),
                                 QPower(-1, Fraction(p * (pp - ell - 1)))), T)
        return f1 - f2

    return _over_euler_cubed(numerator, order)


def string_direct_oracle(spec: StringSpec, order) -> PuiseuxSeries:
    """Literal four-region double sum over (i, j), divided by (q)_inf^3."""
    p, pp, ell, m = spec.p, spec.pp, spec.ell, spec.m
    half = Fraction(1, 2)
    # exponent i(i+m)/2 + p' j (p j + i) +/- (ell+1)(2 p j + i)/2
    A, B, C = half, pp, pp * p

    def numerator(T):
        terms = {}
        regions = (
            (+1, 1, 0, 0, 1, 1),     # i >= 0, j >= 0
            (-1, 1, -1, -1, -1, -1),  # i < 0, j < 0
            (-1, -1, 0, 1, 1, 1),    # i >= 0, j > 0   (second bracket, subtracted)
            (+1, -1, -1, 0, -1, -1),  # i < 0, j <= 0
        )
        for weight, pm, i0, j0, di, dj in regions:
            L1 = Fraction(m, 2) + pm * Fraction(ell + 1, 2)
            L2 = pm * p * (ell + 1)
            for i, j, E in quadrant_points(A, B, C, L1, L2, i0, j0, di, dj, T):
                if E.denominator != 1:
                    raise AssertionError("string exponents must be integral")
                k = E.numerator
                terms[k] = terms.get(k, 0) + weight * (-1) ** (i & 1)
        return PuiseuxSeries(terms, 1, T)

    return _over_euler_cubed(numerator, order)


def string_C(spec: StringSpec, order) -> PuiseuxSeries:
    """C = q^s * script-C with the fractional anomaly s."""
    s = spec.anomaly
    order = as_order(order)
    return string_script_C(spec, order - s).shift(s)


def pf_character(spec: StringSpec, order) -> PuiseuxSeries:
    """Parafermion character e_{m,ell} = eta(q) * C."""
    order = as_order(order)
    s = spec.anomaly
    shift = s + Fraction(1, 24)
    base = mul(string_script_C(spec, order - shift), euler_infinite(1, order - shift))
    return base.shift(shift)


def string_integer_compact(N: int, m: int, ell: int, order) -> PuiseuxSeries:
    """f_{1,1+N,1}(q^(1+(m+ell)/2), q^(1-(m-ell)/2); q) / (q)_inf^3 for integer level N >= 1."""
    if N < 1 or not 0 <= ell <= N or (m - ell) % 2:
        raise InvalidSpec("need N >= 1, 0 <= ell <= N and m = ell mod 2")

    def numerator(T):
        return hecke_f(HeckeParams(1, 1 + N, 1, QPower(1, Fraction(2 + m + ell, 2)),
                                   QPower(1, Fraction(2 - m + ell, 2))), T)

    return _over_euler_cubed(numerator, order)
