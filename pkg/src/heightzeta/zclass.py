"""Meromorphic continuation of Z(P(V), s) over Q.

Splitting the Pic(Q)-integral of phi(L (x) V) at deg L = 0 and folding the
upper half back with Riemann--Roch gives, with w = 2, alpha = 1, Delta = 1,

    2 xi(s) Z(s) = J(V, s) + N(V) J(V^, r - s) + N(V)/(s - r) - 1/s,
    J(V, z) = int_{-inf}^0 e^{-z t} phi(V(t)) dt,

where V(t) is V twisted by degree t. Both integrals are entire in z because
phi(V(t)) decays doubly exponentially as t -> -inf.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy import integrate

from .analytic import EPS, AnalyticValue, exact
from .arakelov import ArakelovBundle, ThetaProfile, dual, identity_bundle, line_bundle, phi_bound_constants
from .errors import DivergenceError, IllConditionedError, PoleError
from .numfield import QQ
from .specfun import xi

_QUAD_LIMIT = 800


@dataclass(frozen=True)
class ContinuationResult:
    value: AnalyticValue
    parts: tuple[AnalyticValue, AnalyticValue, AnalyticValue, AnalyticValue]

    @property
    def bracket(self) -> AnalyticValue:
        """w xi(s) Z(s): the sum of the four parts."""
        a, b, c, d = self.parts
        return a + b + c + d


def _left_cutoff(log_c1: float, c2: float, sigma: float, eps: float) -> tuple[float, float]:
    """T with int_T^inf c1 e^{sigma y - c2 e^{2y}} dy < eps; returns (T, bound)."""
    sigma = max(sigma, 0.0)
    y = 0.0
    while True:
        slope = 2 * c2 * math.exp(2 * y) - sigma
        if slope >= 1:
            logb = log_c1 + sigma * y - c2 * math.exp(2 * y) - math.log(slope)
            if logb < math.log(eps):
                return y, math.exp(logb)
        y += 0.125


def _quad(f, a: float, b: float, epsabs: float) -> tuple[complex, float]:
    val, err = integrate.quad(f, a, b, complex_func=True, epsabs=epsabs, epsrel=1e-13,
                              limit=_QUAD_LIMIT)
    return complex(val), abs(err)


_PROFILES: dict = {}


def _profile(V: ArakelovBundle) -> ThetaProfile:
    key = (V.base, V.twist_t, V.base_float)
    prof = _PROFILES.get(key)
    if prof is None:
        if len(_PROFILES) >= 64:
            _PROFILES.clear()
        prof = _PROFILES[key] = ThetaProfile(V, 0.0, 1e-16)
    return prof


def j_integral(V: ArakelovBundle, z, tol: float = 1e-11) -> AnalyticValue:
    """int_{-inf}^0 e^{-z t} phi(twist(V, t)) dt, truncated where the
    doubly exponential bound certifies the rest below tol/2."""
    z = complex(z)
    log_c1, c2 = phi_bound_constants(V)
    T, tail = _left_cutoff(log_c1, c2, z.real, tol / 2)
    prof = _profile(V)
    n_profile = len(prof.q)

    def f(t):
        return cmath.exp(-z * t) * prof(t)

    val, err = _quad(f, -T, 0.0, tol / 2)
    # theta truncation error at scale t <= 0 is <= prof.tail; integrated against e^{-Re z t}
    sig = z.real
    trunc = prof.tail * ((math.exp(sig * T) - 1) / sig if sig else T)
    return AnalyticValue(val, err + tail + trunc + 8 * EPS * n_profile * abs(val))


def _xi_q(s: complex) -> AnalyticValue:
    try:
        return xi(QQ, s)
    except PoleError:
        if s.imag == 0 and s.real < 0:
            return xi(QQ, 1 - s)  # xi_Q(s) = xi_Q(1 - s)
        raise


def four_term_parts(V: ArakelovBundle, s, tol: float = 1e-11) -> tuple[AnalyticValue, ...]:
    s = complex(s)
    r = V.rank
    N = V.norm
    Vd = dual(V)
    return (
        j_integral(V, s, tol),
        exact(N) * j_integral(Vd, r - s, tol),
        AnalyticValue(N / (s - r), 4 * EPS * abs(N / (s - r))),
        AnalyticValue(-1 / s, 2 * EPS / abs(s)),
    )


def _check_conditioning(s: complex) -> None:
    h = 1e-4
    x0 = _xi_q(s).value
    dx = (_xi_q(s + h).value - _xi_q(s - h).value) / (2 * h)
    if dx != 0 and abs(x0 / dx) < 1e-6:
        raise IllConditionedError(f"s = {s} lies within 1e-6 of a zero of xi")


def continued_zeta(V: ArakelovBundle, s, tol: float = 1e-11) -> ContinuationResult:
    """Z(P(V), s) for any s except the poles 0 and r."""
    s = complex(s)
    r = V.rank
    if s == 0 or s == r:
        raise PoleError(f"Z(P(V), s) has a pole at s = {s.real:g}")
    parts = four_term_parts(V, s, tol)
    bracket = parts[0] + parts[1] + parts[2] + parts[3]
    if s == 1:
        # xi has a simple pole at 1 while the bracket stays finite
        return ContinuationResult(AnalyticValue(0j, 0.0), parts)
    _check_conditioning(s)
    w = QQ.w
    value = bracket / (exact(w) * _xi_q(s))
    return ContinuationResult(value, parts)


def residue_main(V: ArakelovBundle) -> float:
    """alpha N(V) / (w |Delta|^{r/2} xi(r)) over Q."""
    f = QQ
    r = V.rank
    return f.alpha * V.norm / (f.w * abs(f.discriminant) ** (r / 2) * xi(f, r).real)


def residue_extrapolated(V: ArakelovBundle, steps=(1e-2, 1e-3, 1e-4), tol: float = 1e-12) -> float:
    """Neville extrapolation to h = 0 of h * Z(r + h)."""
    r = V.rank
    hs = list(steps)
    vals = [h * continued_zeta(V, r + h, tol).value.real for h in hs]
    n = len(hs)
    P = list(vals)
    for k in range(1, n):
        for i in range(n - k):
            P[i] = (hs[i] * P[i + 1] - hs[i + k] * P[i]) / (hs[i] - hs[i + k])
    return P[0]


def funceq_defect(V: ArakelovBundle, s, tol: float = 1e-11) -> float:
    """|N(V)^-1/2 xi(s) Z(V, s) - N(V^)^-1/2 xi(r-s) Z(V^, r-s)|.

    Both sides are formed from w xi Z (the four-term bracket), so the check
    also runs through s = 1 where xi itself has a pole.
    """
    s = complex(s)
    r = V.rank
    Vd = dual(V)
    left = continued_zeta(V, s, tol).bracket * exact(V.norm ** -0.5 / QQ.w)
    right = continued_zeta(Vd, r - s, tol).bracket * exact(Vd.norm ** -0.5 / QQ.w)
    return abs(left.value - right.value)


# -- Wan's formula ------------------------------------------------------------

@lru_cache(maxsize=1)
def _rank_one_profile() -> ThetaProfile:
    return ThetaProfile(line_bundle(0.0), 0.0, 1e-17)


def phi_rank_one(t: float) -> float:
    """phi(O(t)) for all real t; Jacobi inversion theta(u) = u^-1/2 theta(1/u) for t > 0."""
    prof = _rank_one_profile()
    if t <= 0:
        return prof(t)
    return math.exp(t) * (1.0 + prof(-t)) - 1.0


def wan_xi_k(k: int, s, tol: float = 1e-12) -> AnalyticValue:
    """w^-(k+1) int_R phi(O(t))^{k+1} e^{-s t} dt over Q (w = 2)."""
    s = complex(s)
    if k < 0:
        raise ValueError("k must be nonnegative")
    excess = s.real - (k + 1)
    if excess <= 0:
        raise DivergenceError(f"xi^({k})(s) diverges for Re s <= {k + 1}")
    m = k + 1
    log_c1, c2 = phi_bound_constants(line_bundle(0.0))
    T_left, left_tail = _left_cutoff(m * log_c1, c2 * m, s.real, tol / 4)
    # phi(O(t)) <= e^t, so the right tail is <= e^{-excess T}/excess
    T_right = math.log(4.0 / (tol * excess)) / excess
    right_tail = math.exp(-excess * T_right) / excess

    def f(t):
        return cmath.exp(-s * t) * phi_rank_one(t) ** m

    v1, e1 = _quad(f, -T_left, 0.0, tol / 8)
    v2, e2 = _quad(f, 0.0, T_right, tol / 8)
    scale = QQ.w ** -m
    val = (v1 + v2) * scale
    return AnalyticValue(val, (e1 + e2 + left_tail + right_tail) * scale + 8 * EPS * abs(val))


def wan_formula(n: int, s, tol: float = 1e-12) -> AnalyticValue:
    """xi(s)^-1 sum_{0<=k<=n} C(n+1, k+1) w^k xi^(k)(s)."""
    s = complex(s)
    total = exact(0)
    for k in range(n + 1):
        total = total + exact(math.comb(n + 1, k + 1) * QQ.w ** k) * wan_xi_k(k, s, tol)
    return total / xi(QQ, s)


def wan_formula_defect(n: int, s) -> float:
    s = complex(s)
    if s.real <= n + 1:
        raise DivergenceError(f"Wan's formula needs Re s > {n + 1}")
    z = continued_zeta(identity_bundle(n + 1), s).value
    return abs(z.value - wan_formula(n, s).value)


def tauberian_predict(a: float, b: int, g_a: float, B: float) -> float:
    """Leading term g(a) / (a (b-1)!) B^a (log B)^{b-1} of the counting function."""
    if B <= 1:
        raise ValueError("tauberian_predict needs B > 1")
    return g_a / (a * math.factorial(b - 1)) * B ** a * math.log(B) ** (b - 1)
