"""Floating-point layer: indefinite theta functions, Mordell integrals and the
mixed mock modular transformation laws of the 1/2-level string functions.

Conventions: q = e^(2 pi i tau), E(z) = erf(sqrt(pi) z) = sgn(z)(1 - beta(z^2)),
beta(x) = int_x^inf u^(-1/2) e^(-pi u) du = erfc(sqrt(pi x)).
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from .errors import InsufficientPrecision, QuadratureFailure
from .hecke import StringSpec, string_C
from .series import PuiseuxSeries, rat
from .theta import J, Jbar

TWO_PI_I = 2j * math.pi
LOG2 = math.log(2.0)


# -- tau ------------------------------------------------------------------

def _num(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(Fraction(text))


@dataclass(frozen=True)
class Tau:
    """A point of the upper half plane."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if not self.value.imag > 0:
            raise ValueError(f"tau must have positive imaginary part, got {self.value}")

    @classmethod
    def parse(cls, text: str) -> "Tau":
        """Parse 'a+bi' with rational or decimal parts: '0+1i', '1/4+i', '-1/3+2i', '1.5i'."""
        t = text.replace(" ", "").lower().replace("j", "i")
        if not t.endswith("i"):
            raise ValueError(f"cannot parse tau {text!r}; expected a+bi")
        body = t[:-1].rstrip("*")
        cut = max((k for k in range(1, len(body)) if body[k] in "+-" and body[k - 1] != "e"), default=0)
        try:
            real = float(Fraction(body[:cut])) if cut else 0.0
            imag = _num(body[cut:])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse tau {text!r}; expected a+bi") from None
        return cls(complex(real, imag))

    @property
    def x(self) -> float:
        return self.value.real

    @property
    def y(self) -> float:
        return self.value.imag

    @property
    def nome_abs(self) -> float:
        return math.exp(-2 * math.pi * self.y)

    def S(self) -> "Tau":
        return Tau(-1 / self.value)

    def T(self, k: int = 1) -> "Tau":
        return Tau(self.value + k)

    def scaled(self, k) -> "Tau":
        return Tau(self.value * float(k))

    def as_list(self) -> List[float]:
        return [self.x, self.y]


TAU_GRID = (Tau(1j), Tau(0.25 + 1j), Tau(-1 / 3 + 2j), Tau(1.5j), Tau(0.1 + 1.2j))


def qpow(e, tau: Tau) -> complex:
    """q^e = exp(2 pi i e tau) for real e."""
    return cmath.exp(TWO_PI_I * float(e) * tau.value)


def zeta(n: int, k: int = 1) -> complex:
    """zeta_n^k = e^(2 pi i k / n)."""
    return cmath.exp(TWO_PI_I * k / n)


# -- series evaluation --------------------------------------------------------

def eval_series(s: PuiseuxSeries, tau: Tau) -> Tuple[complex, float]:
    """Sum of the stored terms at tau, with a heuristic bound on the omitted tail.

    The bound is max|c| over the last stored tenth of the terms times
    |q|^order / (1 - |q|); it is 0 for exact series.
    """
    if not s.terms:
        return 0j, 0.0 if s.is_exact() else _tail(1.0, s.order, tau)
    ks = np.fromiter(s.terms.keys(), dtype=float, count=len(s.terms))
    cs = np.array([float(c) for c in s.terms.values()])
    e = ks / s.scale
    value = complex(np.sum(cs * np.exp(TWO_PI_I * e * tau.value)))
    if s.is_exact():
        return value, 0.0
    recent = np.abs(cs[-max(5, len(cs) // 10):]).max()
    return value, _tail(recent, s.order, tau)


def _tail(cmax: float, order, tau: Tau) -> float:
    r = tau.nome_abs
    return cmax * r ** float(order) / (1 - r)


def eta_num(tau: Tau) -> complex:
    """Dedekind eta by its product q^(1/24) prod (1 - q^n)."""
    q = cmath.exp(TWO_PI_I * tau.value)
    out, qn = 1 + 0j, q
    while abs(qn) > 1e-18:
        out *= 1 - qn
        qn *= q
    return qpow(Fraction(1, 24), tau) * out


def euler_num(tau: Tau) -> complex:
    """(q; q)_inf by its product."""
    return eta_num(tau) / qpow(Fraction(1, 24), tau)


def _eta_cubed_at(w: complex) -> complex:
    """eta(w)^3 = sum_{n>=0} (-1)^n (2n+1) q^((2n+1)^2/8)."""
    y = w.imag
    nmax = int(math.sqrt(8 * 45 / (2 * math.pi * y))) // 2 + 2
    n = np.arange(nmax + 1)
    odd = 2 * n + 1
    return complex(np.sum((-1.0) ** n * odd * np.exp(TWO_PI_I * w * odd * odd / 8)))


def eta_cubed(tau: Tau) -> complex:
    return _eta_cubed_at(tau.value)


# -- beta and E ---------------------------------------------------------------

def beta_fn(x: float) -> float:
    """beta(x) = int_x^inf u^(-1/2) e^(-pi u) du = erfc(sqrt(pi x)), x >= 0."""
    if x < 0:
        raise ValueError("beta needs x >= 0")
    return float(special.erfc(math.sqrt(math.pi * x)))


def beta_quadrature(x: float, nodes: int = 64) -> float:
    """beta(x) by Gauss-Legendre after u = s^2: 2 int_{sqrt x}^inf e^(-pi s^2) ds.

    Independent of the erfc route; used as a cross-check.
    """
    if x < 0:
        raise ValueError("beta needs x >= 0")
    a, length = math.sqrt(x), 8.0
    t, w = np.polynomial.legendre.leggauss(nodes)
    s = a + (t + 1) * length / 2
    return float(2 * np.sum(w * np.exp(-math.pi * s * s)) * length / 2)


def E_fn(z: float) -> float:
    """E(z) = sgn(z)(1 - beta(z^2)); E(0) = 0."""
    if z == 0:
        return 0.0
    return math.copysign(1.0 - beta_fn(z * z), z)


def _log_erfc(z):
    """log erfc(z) for real z of any size."""
    return LOG2 + special.log_ndtr(-np.sqrt(2.0) * z)


# -- quadratic forms and indefinite thetas ------------------------------------

Vec = Tuple[Fraction, Fraction]


def _vec(v) -> Vec:
    return (rat(v[0]), rat(v[1]))


@dataclass(frozen=True)
class QuadForm2:
    """Q(x) = <x, Ax>/2 on R^2 with two vectors c1, c2 in one negative cone component."""

    A: Tuple[Tuple[int, int], Tuple[int, int]]
    c1: Vec
    c2: Vec

    def __post_init__(self):
        A = tuple(tuple(int(a) for a in row) for row in self.A)
        if A[0][1] != A[1][0]:
            raise ValueError("A must be symmetric")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c1", _vec(self.c1))
        object.__setattr__(self, "c2", _vec(self.c2))
        if not (self.Q(self.c1) < 0 and self.Q(self.c2) < 0):
            raise ValueError("c1 and c2 must satisfy Q(c) < 0")
        if not self.B(self.c1, self.c2) < 0:
            raise ValueError("c1 and c2 must lie in the same component (B(c1, c2) < 0)")

    def B(self, x, y):
        (a, b), (_, d) = self.A
        return x[0] * (a * y[0] + b * y[1]) + x[1] * (b * y[0] + d * y[1])

    def Q(self, x):
        return self.B(x, x) / 2


@dataclass(frozen=True)
class ThetaChar:
    a: Vec
    b: Vec

    def __post_init__(self):
        object.__setattr__(self, "a", _vec(self.a))
        object.__setattr__(self, "b", _vec(self.b))


Q_L = QuadForm2(((1, 5), (5, 20)), (-4, 1), (-5, 1))
Q_R = QuadForm2(((5, 5), (5, 1)), (-1, 5), (-1, 1))


@dataclass
class ThetaValue:
    hol: complex
    nhol: complex
    tail: float
    radius: int

    @property
    def total(self) -> complex:
        return self.hol + self.nhol


def _theta_terms(form: QuadForm2, ch: ThetaChar, tau: Tau, R: int):
    n = np.arange(-R, R + 1, dtype=float)
    n1, n2 = np.meshgrid(n, n, indexing="ij")
    v1 = n1 + float(ch.a[0])
    v2 = n2 + float(ch.a[1])
    (a, b), (_, d) = form.A
    Av1, Av2 = a * v1 + b * v2, b * v1 + d * v2
    Qv = (v1 * Av1 + v2 * Av2) / 2
    Bvb = Av1 * float(ch.b[0]) + Av2 * float(ch.b[1])
    B1 = float(form.c1[0]) * Av1 + float(form.c1[1]) * Av2
    B2 = float(form.c2[0]) * Av1 + float(form.c2[1]) * Av2
    y = tau.y
    phase = np.exp(TWO_PI_I * (Bvb + tau.x * Qv))
    logq = -2 * math.pi * y * Qv
    s1, s2 = np.sign(B1), np.sign(B2)
    hw = s1 - s2
    hol = np.where(hw != 0, hw * np.exp(np.where(hw != 0, logq, 0.0)), 0.0) * phase
    x1 = np.abs(B1) * math.sqrt(y / -float(form.Q(form.c1)))
    x2 = np.abs(B2) * math.sqrt(y / -float(form.Q(form.c2)))
    nh = (-s1 * np.exp(_log_erfc(math.sqrt(math.pi) * x1) + logq)
          + s2 * np.exp(_log_erfc(math.sqrt(math.pi) * x2) + logq)) * phase
    edge = np.maximum(np.abs(n1), np.abs(n2)) >= R - 1
    return hol, nh, edge


def indefinite_theta_parts(form: QuadForm2, ch: ThetaChar, tau: Tau,
                           tol: float = 1e-17, max_radius: int = 2048) -> ThetaValue:
    """Holomorphic and non-holomorphic parts of the indefinite theta sum.

    Each part converges on its own; the box radius doubles until every term on
    its outer shell is below ``tol``.
    """
    R = 16
    while True:
        hol, nh, edge = _theta_terms(form, ch, tau, R)
        shell = max(np.abs(hol[edge]).max(), np.abs(nh[edge]).max())
        if shell < tol or R >= max_radius:
            break
        R *= 2
    if shell >= tol:
        raise InsufficientPrecision(f"lattice sum not converged at radius {R}")
    return ThetaValue(complex(hol.sum()), complex(nh.sum()), float(shell) * 8 * R, R)


def indefinite_theta(form: QuadForm2, ch: ThetaChar, tau: Tau) -> complex:
    return indefinite_theta_parts(form, ch, tau).total


def hol_part(form: QuadForm2, ch: ThetaChar, tau: Tau) -> complex:
    return indefinite_theta_parts(form, ch, tau).hol


def nhol_part(form: QuadForm2, ch: ThetaChar, tau: Tau) -> complex:
    return indefinite_theta_parts(form, ch, tau).nhol


# -- unary thetas and Mordell integrals ----------------------------------------

def _zeta_range(a: float, y: float):
    zmax = math.sqrt(2 * 45 / (math.pi * y)) + abs(a) + 2
    lo, hi = math.floor(-zmax - a), math.ceil(zmax - a)
    return np.arange(lo, hi + 1) + a


def g_unary(a, b, tau: Tau) -> complex:
    """g_{a,b}(tau) = sum_{zeta in a+Z} zeta e^(2 pi i zeta b) q^(zeta^2/2)."""
    return _g_at(float(a), float(b), tau.value)


def _g_at(a: float, b: float, w: complex) -> complex:
    z = _zeta_range(a, w.imag)
    return complex(np.sum(z * np.exp(TWO_PI_I * (z * b + w * z * z / 2))))


def zwegers_R(u: complex, tau: Tau) -> complex:
    """R(u; tau) = sum_{nu in 1/2+Z} (sgn(nu) - E((nu + Im u/Im tau) sqrt(2 Im tau)))
    (-1)^(nu-1/2) e^(-pi i nu^2 tau - 2 pi i nu u).

    sgn(nu) - E(w) = sgn(nu) erfc(sqrt(pi) sgn(nu) w), summed in log space.
    """
    y = tau.y
    c = u.imag / y
    N = int(abs(c) + math.sqrt(60 / (math.pi * y))) + 4
    n = np.arange(-N, N + 1, dtype=float)
    nu = n + 0.5
    s = np.sign(nu)
    w = (nu + c) * math.sqrt(2 * y)
    expo = -1j * math.pi * nu * nu * tau.value - TWO_PI_I * nu * u
    logmag = _log_erfc(math.sqrt(math.pi) * s * w) + expo.real
    terms = s * (-1.0) ** n * np.exp(logmag + 1j * expo.imag)
    return complex(terms.sum())


def R_nonhol(a, b, tau: Tau, method: str = "series") -> complex:
    """R_{a,b}(tau).

    ``series``: i q^(-(a-1/2)^2/2) e^(-2 pi i (a-1/2) b) R((a-1/2) tau + b + 1/2; tau).
    ``integral``: -i int_{-conj tau}^{i inf} g_{a,-b}(z) / sqrt(-i(z + tau)) dz.
    The two agree for 0 < a < 1; at integral a the integrand vanishes while the
    series form carries the boundary term, so ``series`` is the default.
    """
    if method == "series":
        a, b = float(a), float(b)
        h = a - 0.5
        u = h * tau.value + b + 0.5
        pre = 1j * cmath.exp(-TWO_PI_I * h * h / 2 * tau.value) * cmath.exp(-TWO_PI_I * h * b)
        return pre * zwegers_R(u, tau)
    if method == "integral":
        return _R_integral(float(a), float(b), tau)
    raise ValueError(f"unknown method {method!r}")


def _quad_complex(f, lo, hi, tol=1e-13):
    re_v, re_e = integrate.quad(lambda t: f(t).real, lo, hi, epsabs=tol, epsrel=1e-13, limit=400)
    im_v, im_e = integrate.quad(lambda t: f(t).imag, lo, hi, epsabs=tol, epsrel=1e-13, limit=400)
    return complex(re_v, im_v), re_e + im_e


def _R_integral(a: float, b: float, tau: Tau, tol: float = 1e-11) -> complex:
    # z = -conj(tau) + i t turns the path integral into int_0^inf g(z) / sqrt(2y + t) dt
    y = tau.y
    zmin = min(abs(z) for z in _zeta_range(a, 1.0) if abs(z) > 1e-12)
    tmax = 45 / (math.pi * zmin * zmin)
    start = -tau.value.conjugate()

    def f(t):
        return _g_at(a, -b, start + 1j * t) / math.sqrt(2 * y + t)

    total, err = 0j, 0.0
    for lo, hi in ((0, 1), (1, tmax)):
        v, e = _quad_complex(f, lo, hi)
        total, err = total + v, err + e
    if err > tol:
        raise QuadratureFailure(f"Mordell integral error estimate {err:.2e} exceeds {tol:.1e}")
    return total


def mordell_F(tau: Tau, method: str = "series") -> complex:
    """F(tau) = R_{1/4,0}(4 tau), by the R-series or by the eta^3 path integral
    -(i/2) int_{-conj tau}^{i inf} eta(w)^3 / sqrt(-i(w + tau)) dw."""
    if method == "series":
        return R_nonhol(0.25, 0, tau.scaled(4))
    if method != "eta":
        raise ValueError(f"unknown method {method!r}")
    y = tau.y
    start = -tau.value.conjugate()

    def f(t):
        return _eta_cubed_at(start + 1j * t) / math.sqrt(2 * y + t)

    tmax = 45 * 8 / (2 * math.pi)
    total, err = 0j, 0.0
    for lo, hi in ((0, 1), (1, tmax)):
        v, e = _quad_complex(f, lo, hi)
        total, err = total + v, err + e
    if err > 1e-11:
        raise QuadratureFailure(f"eta^3 integral error estimate {err:.2e}")
    return total / 2


def mordell_period(tau: Tau) -> complex:
    """int_0^{i inf} eta(z)^3 / sqrt(-i(z + tau)) dz.

    With z = i t, the piece t < 1 is moved to s = 1/t > 1 via
    eta(i t) = eta(i/t) / sqrt(t), leaving two tails on [1, inf).
    """
    tv = tau.value
    tmax = 45 * 8 / (2 * math.pi)

    def upper(t):
        return _eta_cubed_at(1j * t) / cmath.sqrt(t - 1j * tv)

    def lower(s):
        return _eta_cubed_at(1j * s) / (math.sqrt(s) * cmath.sqrt(1 / s - 1j * tv))

    v1, e1 = _quad_complex(upper, 1, tmax)
    v2, e2 = _quad_complex(lower, 1, tmax)
    if e1 + e2 > 1e-11:
        raise QuadratureFailure(f"period integral error estimate {e1 + e2:.2e}")
    return 1j * (v1 + v2)


# -- string functions and thetas at tau -------------------------------------------

SINE_MATRIX = (2 / math.sqrt(5)) * np.array([
    [math.sin(2 * math.pi / 5), -math.sin(math.pi / 5)],
    [-math.sin(math.pi / 5), -math.sin(2 * math.pi / 5)],
])


@lru_cache(maxsize=None)
def _half_level_series(ell: int, order: int) -> PuiseuxSeries:
    return string_C(StringSpec(2, 5, ell, 0), order)


@lru_cache(maxsize=None)
def _script_J(a: int, m: int, order: int, bar: bool = False) -> PuiseuxSeries:
    """q^((m-2a)^2/(8m)) J_{a,m} (or J-bar)."""
    e = Fraction((m - 2 * a) ** 2, 8 * m)
    base = (Jbar if bar else J)(a, m, order)
    return base.shift(e)


def _eval_checked(s: PuiseuxSeries, tau: Tau, budget: float) -> complex:
    v, tail = eval_series(s, tau)
    if tail > budget:
        raise InsufficientPrecision(f"series tail bound {tail:.2e} exceeds {budget:.1e} at tau={tau.value}")
    return v


def string_vector(tau: Tau, order: int = 400, budget: float = 1e-12) -> np.ndarray:
    """(C^{1/2}_{0,0}, C^{1/2}_{0,2}) at tau."""
    return np.array([_eval_checked(_half_level_series(ell, order), tau, budget) for ell in (0, 2)])


def script_J_vector(tau: Tau, order: int = 400, budget: float = 1e-12) -> np.ndarray:
    """(J_{1,5}, J_{2,5}) in the q-shifted normalisation, at tau."""
    return np.array([_eval_checked(_script_J(a, 5, order), tau, budget) for a in (1, 2)])


def script_Jbar(a: int, m: int, tau: Tau, order: int = 400) -> complex:
    return _eval_checked(_script_J(a, m, order, True), tau, 1e-12)


LEFT_CHARS = (ThetaChar((0, Fraction(1, 10)), (0, Fraction(1, 2))),
              ThetaChar((0, Fraction(3, 10)), (0, Fraction(1, 2))))


def theta_L_vector(tau: Tau) -> np.ndarray:
    return np.array([indefinite_theta(Q_L, ch, tau) for ch in LEFT_CHARS])


_H_TERMS = (
    ((Fraction(1, 20), Fraction(1, 4)), -3, (Fraction(9, 20), Fraction(1, 4)), -7),
    ((Fraction(-3, 20), Fraction(1, 4)), -1, (Fraction(13, 20), Fraction(1, 4)), -9),
)
_H_B = (Fraction(1, 10), 0)


def H_vector(tau: Tau, part: str = "total") -> np.ndarray:
    """H_{0,l} = (e^(k1 pi i/10) theta_{a1} - e^(k2 pi i/10) theta_{a2}) / 2 on Q_R."""
    out = []
    for a1, k1, a2, k2 in _H_TERMS:
        t1 = indefinite_theta_parts(Q_R, ThetaChar(a1, _H_B), tau)
        t2 = indefinite_theta_parts(Q_R, ThetaChar(a2, _H_B), tau)
        v1, v2 = getattr(t1, part), getattr(t2, part)
        out.append((cmath.exp(1j * math.pi * k1 / 10) * v1 - cmath.exp(1j * math.pi * k2 / 10) * v2) / 2)
    return np.array(out)


# -- transformation checks ---------------------------------------------------------

DEFAULT_TOL = {"T": 1e-8, "S": 1e-5, "propL": 1e-6, "propH": 1e-6, "mordell": 1e-9}
CHECKS = tuple(DEFAULT_TOL)


@dataclass
class CheckReport:
    check: str
    tau: complex
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def to_json(self) -> dict:
        return {"check": self.check, "tau": [self.tau.real, self.tau.imag],
                "residual": self.residual, "tol": self.tol, "pass": self.passed}


def _res(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def residual_T(tau: Tau, order: int = 400) -> float:
    lhs = string_vector(tau.T(), order)
    rhs = np.array([zeta(40, -1), zeta(40, -9)]) * string_vector(tau, order)
    return _res(lhs, rhs)


def residual_S(tau: Tau, order: int = 400) -> float:
    lhs = string_vector(tau, order)
    t = tau.value
    modular = cmath.sqrt(-1j * t) * SINE_MATRIX @ string_vector(tau.S(), order)
    correction = -0.5j / eta_num(tau) ** 3 * script_J_vector(tau, order) * mordell_period(tau)
    return _res(lhs, modular + correction)


# Sign of the R_{1/4,0}(4 tau) J-vector term in the theta decompositions.
# Numerically it is -1: the non-holomorphic parts equal -F(tau) times the
# J-vector. ``sign=+1`` reproduces the printed form for comparison.
DECOMPOSITION_SIGN = -1


def residual_propL(tau: Tau, order: int = 400, sign: int = DECOMPOSITION_SIGN) -> float:
    """theta-vector on Q_L = eta^3 (C_{0,0}, C_{0,2}) + sign * F(tau) (J_{1,5}, J_{2,5})."""
    lhs = theta_L_vector(tau)
    rhs = eta_num(tau) ** 3 * string_vector(tau, order) + sign * mordell_F(tau) * script_J_vector(tau, order)
    return _res(lhs, rhs)


def residuals_propH(tau: Tau, order: int = 400, sign: int = DECOMPOSITION_SIGN) -> Dict[str, float]:
    """T-law, S-law and the holomorphic-part decomposition of the H vector."""
    H = H_vector(tau)
    t_law = _res(H_vector(tau.T()), np.array([zeta(10), zeta(10, -1)]) * H)
    s_law = _res(H_vector(tau.S()), (-1j * tau.value) * SINE_MATRIX @ H)
    decomposition = _res(H, H_vector(tau, "hol") + sign * mordell_F(tau) * script_J_vector(tau, order))
    return {"T": t_law, "S": s_law, "hol": decomposition}


def residuals_mordell(tau: Tau) -> Dict[str, float]:
    """Agreement of the two F routes, and
    F(tau) + F(-1/tau)/sqrt(-i tau) = -(i/2) int_0^{i inf} eta^3 / sqrt(-i(z + tau)) dz.
    """
    F = mordell_F(tau)
    routes = abs(F - mordell_F(tau, "eta"))
    rel = F + mordell_F(tau.S()) / cmath.sqrt(-1j * tau.value)
    period = abs(rel - (-0.5j) * mordell_period(tau))
    return {"routes": routes, "period": period}


def run_check(check: str, tau: Tau, tol: float = None, order: int = 400) -> CheckReport:
    tol = DEFAULT_TOL[check] if tol is None else tol
    if check == "T":
        r = residual_T(tau, order)
    elif check == "S":
        r = residual_S(tau, order)
    elif check == "propL":
        r = residual_propL(tau, order)
    elif check == "propH":
        r = max(residuals_propH(tau, order).values())
    elif check == "mordell":
        r = max(residuals_mordell(tau).values())
    else:
        raise ValueError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    return CheckReport(check, tau.value, r, tol)


def verify_transforms(taus: Sequence[Tau] = TAU_GRID, checks: Sequence[str] = CHECKS,
                      tol: Dict[str, float] = None, order: int = 400,
                      workers: int = 4) -> List[CheckReport]:
    """Run every check at every tau; points are evaluated in parallel."""
    tol = dict(DEFAULT_TOL, **(tol or {}))
    for ell in (0, 2):
        _half_level_series(ell, order)  # build the exact series once, up front
    jobs = [(c, t) for c in checks for t in taus]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ct: run_check(ct[0], ct[1], tol[ct[0]], order), jobs))
