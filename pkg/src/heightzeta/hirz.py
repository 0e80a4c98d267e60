"""Hirzebruch surfaces F_e = P(O + O(e)) over P^1 = P(V), V of rank 2.

A rational point is a base point Q = [u:v] together with a point [lam:mu] of
the fibre, which is P of the rank-2 lattice with Gram diag(1, H(Q)^{-2e}).
For the line bundle O(a, b) the height is

    H(P)^2 = (lam^2 + mu^2 H(Q)^{-2e})^a * H(Q)^{2b},

a rational number whenever H(Q)^2 is. Every test below is done on that
rational. Writing H(Q)^2 = n/d and B^2 = Bn/Bd, H(P) <= B becomes

    (lam^2 n^e + mu^2 d^e)^a * n^(b-ae) * Bd <= Bn * d^b,

a pure integer inequality.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arakelov import ArakelovBundle, make_bundle
from .errors import DomainError, NotPrimitiveError, UnsupportedCaseError
from .lattice import ellipsoid_points
from .pcount import _as_fraction, _census, count_points_power, dirichlet_partial, point_height
from .specfun import xi
from .numfield import QQ


@dataclass(frozen=True)
class HirzebruchConfig:
    e: int
    a: int
    b: int
    base_gram: tuple[tuple[Fraction, ...], ...] = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))

    def __post_init__(self):
        if self.e < 2:
            raise DomainError("only e >= 2 is supported")
        if self.a <= 0 or self.b <= self.a * self.e:
            raise DomainError(f"O({self.a}, {self.b}) is not ample on F_{self.e}: need a > 0 and b > a e")
        gram = tuple(tuple(Fraction(x) for x in row) for row in self.base_gram)
        if len(gram) != 2:
            raise DomainError("base_gram must be 2x2")
        object.__setattr__(self, "base_gram", gram)
        make_bundle(gram)  # validates positivity

    @property
    def base(self) -> ArakelovBundle:
        return make_bundle(self.base_gram)

    @property
    def section_exponent(self) -> int:
        """b - a e: the height on the minimal section is H(Q)^(b - ae)."""
        return self.b - self.a * self.e


@dataclass(frozen=True, order=True)
class SurfacePoint:
    total_height_sq_pow: Fraction
    base: tuple[int, int]
    fiber: tuple[int, int]
    base_height_sq: Fraction = field(compare=False)

    @property
    def height(self) -> float:
        return math.sqrt(self.total_height_sq_pow)


def _canonical(pair) -> tuple[int, int]:
    x, y = (int(v) for v in pair)
    if x == 0 and y == 0 or math.gcd(x, y) != 1:
        raise NotPrimitiveError(f"{(x, y)} is not primitive")
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def _height_sq(cfg: HirzebruchConfig, h2: Fraction, lam: int, mu: int) -> Fraction:
    return (lam * lam + mu * mu / h2 ** cfg.e) ** cfg.a * h2 ** cfg.b


def surface_height(cfg: HirzebruchConfig, P: SurfacePoint | tuple) -> Fraction:
    """Exact H_{a,b}(P)^2; P is a SurfacePoint or a (base, fiber) pair."""
    base, fiber = (P.base, P.fiber) if isinstance(P, SurfacePoint) else P
    base, fiber = _canonical(base), _canonical(fiber)
    h2 = point_height(cfg.base, base)
    return _height_sq(cfg, h2, *fiber)


def make_point(cfg: HirzebruchConfig, base, fiber) -> SurfacePoint:
    base, fiber = _canonical(base), _canonical(fiber)
    h2 = point_height(cfg.base, base)
    return SurfacePoint(_height_sq(cfg, h2, *fiber), base, fiber, h2)


def _within(cfg: HirzebruchConfig, h2: Fraction, lam: int, mu: int, B2: Fraction) -> bool:
    n, d = h2.numerator, h2.denominator
    e, a, b = cfg.e, cfg.a, cfg.b
    lhs = (lam * lam * n ** e + mu * mu * d ** e) ** a * n ** (b - a * e) * B2.denominator
    return lhs <= B2.numerator * d ** b


def _bases(cfg: HirzebruchConfig, B2: Fraction, m: int) -> list[tuple[tuple[int, int], Fraction]]:
    """Base points with (H(Q)^2)^m <= B2."""
    root = float(B2) ** (1.0 / m)
    out = []
    n, d = B2.numerator, B2.denominator

    def keep(q, D):
        return np.array([int(v) ** m * d <= n * D ** m for v in q], dtype=bool)

    for X, q, D in _census(cfg.base, _as_fraction(root * (1 + 1e-9) + 1e-9), keep):
        out.extend(((int(x[0]), int(x[1])), Fraction(int(qq), D)) for x, qq in zip(X, q))
    return out


def _fiber_points(cfg: HirzebruchConfig, h2: Fraction, B2: Fraction) -> list[tuple[int, int]]:
    """Fibre points over a base of squared height h2 with lam != 0, canonical sign."""
    R = (float(B2) / float(h2) ** cfg.b) ** (1.0 / cfg.a)
    if R < 1 - 1e-9:
        return []
    G = np.diag([1.0, float(h2) ** -cfg.e])
    X = ellipsoid_points(G, R * (1 + 1e-9), half=True)
    out = []
    for lam, mu in X.tolist():
        if lam == 0 or math.gcd(lam, mu) != 1:
            continue
        if _within(cfg, h2, lam, mu, B2):
            out.append((lam, mu))
    return out


def _bound_sq(B) -> Fraction:
    B = _as_fraction(B)
    if B < 1:
        raise DomainError("enumerate_surface needs B >= 1")
    return B * B


def enumerate_surface(cfg: HirzebruchConfig, B) -> list[SurfacePoint]:
    """All points of F_e(Q) with H_{a,b}(P) <= B, sorted by height.

    lam = 0 gives the minimal section, with height H(Q)^(b-ae); every other
    point has H(P) >= H(Q)^b, so only bases with H(Q)^(2b) <= B^2 need a
    fibre enumeration.
    """
    B2 = _bound_sq(B)
    out = []
    m = cfg.section_exponent
    for base, h2 in _bases(cfg, B2, m):
        out.append(SurfacePoint(h2 ** m, base, (0, 1), h2))
    for base, h2 in _bases(cfg, B2, cfg.b):
        for lam, mu in _fiber_points(cfg, h2, B2):
            out.append(SurfacePoint(_height_sq(cfg, h2, lam, mu), base, (lam, mu), h2))
    out.sort()
    return out


def count_surface(cfg: HirzebruchConfig, B) -> int:
    B2 = _bound_sq(B)
    n = count_points_power(cfg.base, cfg.section_exponent, B2)
    for _, h2 in _bases(cfg, B2, cfg.b):
        n += len(_fiber_points(cfg, h2, B2))
    return n


def minimal_section_count(cfg: HirzebruchConfig, B) -> int:
    """Points with lam = 0, i.e. base points with H(Q)^(b-ae) <= B."""
    return count_points_power(cfg.base, cfg.section_exponent, _bound_sq(B))


def fiber_gram(cfg: HirzebruchConfig, h2: Fraction) -> tuple[tuple[Fraction, ...], ...]:
    return ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1) / Fraction(h2) ** cfg.e))


def alpha_invariant(cfg: HirzebruchConfig) -> Fraction:
    """inf{A : A O(a,b) + K is effective}, with K = O(-2, -2-e) and the
    effective cone {a >= 0, b >= a e}."""
    return max(Fraction(2, cfg.a), Fraction(2 - cfg.e, cfg.section_exponent))


# -- pole data ------------------------------------------------------------------

def _p1_zeta(V: ArakelovBundle, s: float) -> tuple[float, float, str]:
    """Z(P(V), s) for real s > 2: direct summation with a tail bound when it
    converges fast enough, otherwise the continued expression."""
    from .pcount import counting_constant
    from .zclass import continued_zeta

    target = 1e-9
    if s > 3:
        C = counting_constant(V, 1.0)
        B = (target * (s - 2) / (s * C)) ** (1.0 / (2 - s))
        if B <= 400:
            v = dirichlet_partial(V, s, max(math.ceil(B), 10))
            return v.real, v.abs_error, "direct"
    v = continued_zeta(V, s).value
    return v.real, v.abs_error, "continued"


@dataclass(frozen=True)
class PoleReport:
    s1: Fraction
    rho1: float
    rho1_error: float
    s2: Fraction
    rho2: float
    sigma0: Fraction
    s2_in_domain: bool
    coincident: bool
    dominant: Fraction
    rho_dominant: float
    z_method: str

    def as_dict(self) -> dict:
        return {
            "s1": float(self.s1), "rho1": self.rho1, "rho1_error": self.rho1_error,
            "s2": float(self.s2), "rho2": self.rho2, "sigma0": float(self.sigma0),
            "flags": {
                "s2_in_domain": self.s2_in_domain,
                "coincident": self.coincident,
                "dominant": "s1" if self.dominant == self.s1 and not self.coincident
                            else ("s2" if not self.coincident else "coincident"),
                "z_method": self.z_method,
            },
            "exact": {"s1": str(self.s1), "s2": str(self.s2), "sigma0": str(self.sigma0)},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def predicted_poles(cfg: HirzebruchConfig) -> PoleReport:
    e, a, b = cfg.e, cfg.a, cfg.b
    m = cfg.section_exponent
    two_xi2 = QQ.w * xi(QQ, 2).real
    s1 = Fraction(2, a)
    s2 = Fraction(2, m)
    z, z_err, method = _p1_zeta(cfg.base, 2 * b / a - e)
    rho1 = QQ.alpha * z / (a * two_xi2)
    rho2 = QQ.alpha * cfg.base.norm / (m * two_xi2)
    sigma0 = max(Fraction(1, a), Fraction(e + 2, b))
    s2_in = s2 > sigma0
    coincident = b == (e + 1) * a
    if s2_in and s2 > s1:
        dom, rho = s2, rho2
    else:
        dom, rho = s1, rho1
    return PoleReport(s1, rho1, z_err / (a * two_xi2), s2, rho2, sigma0, s2_in, coincident,
                      dom, rho, method)


def compare_counts(cfg: HirzebruchConfig, B) -> dict:
    """Enumerated count against the single-pole Tauberian prediction."""
    from .zclass import tauberian_predict

    poles = predicted_poles(cfg)
    if poles.coincident:
        raise UnsupportedCaseError(
            f"b = (e+1)a for (e, a, b) = ({cfg.e}, {cfg.a}, {cfg.b}): the two poles collide")
    observed = count_surface(cfg, B)
    predicted = tauberian_predict(float(poles.dominant), 1, poles.rho_dominant, float(B))
    return {"observed": observed, "predicted": predicted, "ratio": observed / predicted,
            "dominant": float(poles.dominant), "residue": poles.rho_dominant}


def write_csv(points, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["u", "v", "lambda", "mu", "base_height_sq_num", "base_height_sq_den",
                    "height_sq_num", "height_sq_den"])
        for p in points:
            w.writerow([*p.base, *p.fiber, p.base_height_sq.numerator, p.base_height_sq.denominator,
                        p.total_height_sq_pow.numerator, p.total_height_sq_pow.denominator])


def read_csv(path) -> list[SurfacePoint]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    out = []
    for row in rows[1:]:
        u, v, lam, mu, bn, bd, hn, hd = (int(x) for x in row)
        out.append(SurfacePoint(Fraction(hn, hd), (u, v), (lam, mu), Fraction(bn, bd)))
    return out
