"""Gamma, Dedekind zeta and the completed factor xi(s) in double precision.

Zeta values come from Euler--Maclaurin summation of the Hurwitz series with
an explicit remainder bound, and from the functional equation on the left
half-plane. Gamma uses a Lanczos approximation with reflection.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .analytic import EPS, AnalyticValue
from .errors import DivergenceError, PoleError
from .numfield import FieldDescriptor

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
# worst observed relative error on -10 <= Re s <= 30, |Im s| <= 30 is ~2e-13,
# dominated by exp/log cancellation at large |Im s|
_GAMMA_REL = 4e-13


def _is_nonpositive_integer(s: complex, tol: float = 0.0) -> bool:
    return s.imag == 0 and s.real <= 0 and abs(s.real - round(s.real)) <= tol


def _lanczos(z: complex) -> complex:
    z = z - 1
    x = _LANCZOS[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(0.5 * math.log(2 * math.pi) + (z + 0.5) * cmath.log(t) - t) * x


def _gamma(s: complex) -> complex:
    if s.real < 0.5:
        return math.pi / (cmath.sin(math.pi * s) * _lanczos(1 - s))
    return _lanczos(s)


def gamma(s) -> AnalyticValue:
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at {s.real:g}")
    g = _gamma(s)
    if s.imag == 0 and s.real == round(s.real) and s.real <= 171:
        return AnalyticValue(complex(math.factorial(int(s.real) - 1)), 0.0)
    return AnalyticValue(g, _GAMMA_REL * abs(g))


def rgamma(s: complex) -> complex:
    """1/Gamma(s), entire; zero at the nonpositive integers."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        return 0j
    return 1.0 / _gamma(s)


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * B[k]
        B.append(-acc / (m + 1))
    return tuple(B)


_EM_ORDER = 24


def hurwitz_zeta(s, a: float = 1.0, N: int | None = None, order: int = _EM_ORDER) -> AnalyticValue:
    """Euler--Maclaurin evaluation of sum_{n>=0} (n+a)^-s for Re s >= 0, s != 1.

    The remainder after ``order`` Bernoulli corrections is bounded by the first
    omitted term times |s + 2p + 1| / (Re s + 2p + 1).
    """
    s = complex(s)
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if s.real < 0:
        raise ValueError("hurwitz_zeta direct summation requires Re s >= 0")
    if N is None:
        N = max(16, int(abs(s)) + 16)
    n = np.arange(N, dtype=float) + a
    head_terms = np.exp(-s * np.log(n))
    head = complex(math.fsum(head_terms.real), math.fsum(head_terms.imag))
    Na = N + a
    logNa = math.log(Na)
    base = cmath.exp(-s * logNa)
    total = head + Na * base / (s - 1) + 0.5 * base
    B = _bernoulli(2 * order + 2)
    poch = s  # s(s+1)...(s+2k-2)
    power = base / Na  # (N+a)^{-s-1}
    fact = 2.0
    mag = float(np.abs(head_terms).sum())
    for k in range(1, order + 1):
        term = float(B[2 * k]) / fact * poch * power
        total += term
        mag += abs(term)
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        power /= Na * Na
        fact *= (2 * k + 1) * (2 * k + 2)
    p = order
    omitted = abs(float(B[2 * p + 2]) / fact * poch * power)
    remainder = omitted * abs(s + 2 * p + 1) / (s.real + 2 * p + 1)
    return AnalyticValue(total, remainder + 8 * EPS * (mag + abs(total)))


def riemann_zeta(s) -> AnalyticValue:
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real >= 0:
        return hurwitz_zeta(s, 1.0)
    # zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    z1 = hurwitz_zeta(1 - s, 1.0)
    factor = cmath.exp(s * math.log(2) + (s - 1) * math.log(math.pi)) * cmath.sin(math.pi * s / 2)
    g = _gamma(1 - s)
    v = factor * g * z1.value
    err = abs(factor * g) * z1.abs_error + (_GAMMA_REL + 16 * EPS) * abs(v)
    return AnalyticValue(v, err)


def _dirichlet_l_m4(s: complex) -> AnalyticValue:
    """L(s, chi_-4) through the Hurwitz decomposition, reflected for Re s < 0."""
    if s.real >= 0:
        if s == 1:
            return AnalyticValue(complex(math.pi / 4), 4 * EPS)
        a = hurwitz_zeta(s, 0.25)
        b = hurwitz_zeta(s, 0.75)
        f = cmath.exp(-s * math.log(4))
        v = f * (a.value - b.value)
        return AnalyticValue(v, abs(f) * (a.abs_error + b.abs_error) + 8 * EPS * abs(v))
    # Lambda(s) = (4/pi)^((s+1)/2) Gamma((s+1)/2) L(s) is invariant under s -> 1-s
    rhs = _dirichlet_l_m4(1 - s)
    f = cmath.exp((0.5 - s) * math.log(4 / math.pi)) * _gamma(1 - s / 2) * rgamma((s + 1) / 2)
    v = f * rhs.value
    return AnalyticValue(v, abs(f) * rhs.abs_error + (2 * _GAMMA_REL + 16 * EPS) * abs(v))


def zeta_field(desc: FieldDescriptor, s) -> AnalyticValue:
    """Dedekind zeta of Q or Q(i)."""
    s = complex(s)
    if s == 1:
        raise PoleError("Dedekind zeta has a pole at s = 1")
    if desc.label == "Q":
        return riemann_zeta(s)
    if desc.label == "Q(i)":
        return riemann_zeta(s) * _dirichlet_l_m4(s)
    raise ValueError(f"zeta_field: unsupported field {desc.label}")


def xi(desc: FieldDescriptor, s) -> AnalyticValue:
    """Completed zeta 2^-r1 (pi^-s/2 Gamma(s/2))^r1 ((2pi)^-s Gamma(s))^r2 zeta_F(s)."""
    s = complex(s)
    if s == 1:
        raise PoleError("xi has a pole at s = 1")
    if desc.r1 > 0 and _is_nonpositive_integer(s / 2):
        raise PoleError(f"xi: Gamma(s/2) pole at s = {s.real:g}")
    if desc.r2 > 0 and _is_nonpositive_integer(s):
        raise PoleError(f"xi: Gamma(s) pole at s = {s.real:g}")
    out = AnalyticValue(complex(2.0 ** -desc.r1), 0.0)
    if desc.r1:
        g = gamma(s / 2)
        local = AnalyticValue(cmath.exp(-s / 2 * math.log(math.pi)), 4 * EPS) * g
        for _ in range(desc.r1):
            out = out * local
    if desc.r2:
        g = gamma(s)
        local = AnalyticValue(cmath.exp(-s * math.log(2 * math.pi)), 4 * EPS) * g
        for _ in range(desc.r2):
            out = out * local
    return out * zeta_field(desc, s)


def effectivity_integral(s, epsabs: float = 1e-12) -> AnalyticValue:
    """Quadrature of the real-place factor  int_R exp(-x s) exp(-pi e^{-2x}) dx."""
    s = complex(s)
    sigma = s.real
    if sigma <= 0:
        raise DivergenceError("effectivity integral diverges for Re s <= 0")
    # right tail: integrand modulus <= e^{-sigma x}
    tail_eps = epsabs / 10
    x_right = math.log(1.0 / (tail_eps * sigma)) / sigma
    # left tail, y = -x: modulus e^{sigma y - pi e^{2y}}, log-concave once 2 pi e^{2y} > sigma + 1
    y = 0.5 * math.log((sigma + 1) / (2 * math.pi)) if sigma + 1 > 2 * math.pi else 0.0
    while True:
        slope = 2 * math.pi * math.exp(2 * y) - sigma
        bound = math.exp(sigma * y - math.pi * math.exp(2 * y)) / slope
        if slope >= 1 and bound < tail_eps:
            break
        y += 0.25
    x_left = -y
    tail = math.exp(-sigma * x_right) / sigma + bound

    def f(x):
        return cmath.exp(-x * s - math.pi * math.exp(-2 * x))

    val, err = integrate.quad(f, x_left, x_right, complex_func=True, epsabs=epsabs,
                              epsrel=1e-13, limit=400, points=[0.0])
    return AnalyticValue(complex(val), abs(err) + tail + 64 * EPS * abs(val))
