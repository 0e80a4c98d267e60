"""Arakelov vector bundles over Q as metrized lattices Z^r, and their theta
section counts.

A bundle is a positive-definite Gram matrix on Gamma(V) = Z^r. Untwisted
bundles keep an exact rational Gram; twisting by a degree-t line bundle
multiplies the metric by e^{-2t}, which is tracked as a separate real
parameter so the rational part stays exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .analytic import EPS, AnalyticValue
from .errors import InvalidMetricError
from .lattice import ellipsoid_points, fincke_pohst_form, quadratic_values
from .numfield import QQ, FieldDescriptor

RationalMatrix = tuple[tuple[Fraction, ...], ...]


def _as_rational_matrix(rows) -> RationalMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _det(M: RationalMatrix) -> Fraction:
    n = len(M)
    A = [list(row) for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                for j in range(c, n):
                    A[i][j] -= f * A[c][j]
    return det


def _inverse(M: RationalMatrix) -> RationalMatrix:
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return tuple(tuple(row[n:]) for row in A)


def _validate(M: RationalMatrix) -> None:
    n = len(M)
    if any(len(row) != n for row in M):
        raise InvalidMetricError("Gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise InvalidMetricError("Gram matrix must be symmetric")
    for k in range(1, n + 1):
        if _det(tuple(row[:k] for row in M[:k])) <= 0:
            raise InvalidMetricError(f"leading principal minor of order {k} is not positive")


@dataclass(frozen=True)
class ArakelovBundle:
    """Gamma(V) = Z^r with metric e^{-2 twist} * base.

    ``base`` is exact rational when available; bundles built from pieces with
    different twists carry only a float Gram in ``base_float``.
    """

    base: RationalMatrix | None
    twist_t: float = 0.0
    base_float: tuple[tuple[float, ...], ...] | None = None
    field: FieldDescriptor = QQ

    @property
    def rank(self) -> int:
        return len(self.base) if self.base is not None else len(self.base_float)

    @property
    def is_exact(self) -> bool:
        return self.base is not None and self.twist_t == 0.0

    def gram(self) -> np.ndarray:
        """Floating-point Gram matrix including the twist."""
        if self.base is not None:
            B = np.array([[float(x) for x in row] for row in self.base])
        else:
            B = np.array(self.base_float, dtype=float)
        return B * math.exp(-2.0 * self.twist_t)

    def log_det_base(self) -> float:
        if self.base is not None:
            d = _det(self.base)
            return math.log(d.numerator) - math.log(d.denominator)
        return float(np.linalg.slogdet(np.array(self.base_float))[1])

    @property
    def degree(self) -> float:
        return -0.5 * self.log_det_base() + self.rank * self.twist_t

    @property
    def norm(self) -> float:
        return math.exp(self.degree)


def make_bundle(gram: Sequence[Sequence], field: FieldDescriptor = QQ) -> ArakelovBundle:
    M = _as_rational_matrix(gram)
    _validate(M)
    return ArakelovBundle(M, 0.0, None, field)


def identity_bundle(r: int) -> ArakelovBundle:
    return make_bundle([[int(i == j) for j in range(r)] for i in range(r)])


def line_bundle(d: float) -> ArakelovBundle:
    """O(d): trivial lattice Z with metric e^{-2d}."""
    return ArakelovBundle(((Fraction(1),),), float(d))


def bundle_degree(V: ArakelovBundle) -> float:
    return V.degree


def dual(V: ArakelovBundle) -> ArakelovBundle:
    if V.base is not None:
        return ArakelovBundle(_inverse(V.base), -V.twist_t, None, V.field)
    inv = np.linalg.inv(np.array(V.base_float))
    return ArakelovBundle(None, -V.twist_t, tuple(map(tuple, inv)), V.field)


def twist(V: ArakelovBundle, t: float) -> ArakelovBundle:
    """Tensor with a line bundle of degree t."""
    return ArakelovBundle(V.base, V.twist_t + float(t), V.base_float, V.field)


def direct_sum(V: ArakelovBundle, W: ArakelovBundle) -> ArakelovBundle:
    if V.field != W.field:
        raise ValueError("direct sum of bundles over different fields")
    r, s = V.rank, W.rank
    if V.base is not None and W.base is not None and V.twist_t == W.twist_t:
        z = Fraction(0)
        rows = [tuple(row) + (z,) * s for row in V.base] + [(z,) * r + tuple(row) for row in W.base]
        return ArakelovBundle(tuple(rows), V.twist_t, None, V.field)
    G = np.zeros((r + s, r + s))
    G[:r, :r] = V.gram()
    G[r:, r:] = W.gram()
    return ArakelovBundle(None, 0.0, tuple(map(tuple, G)), V.field)


def determinant(V: ArakelovBundle) -> ArakelovBundle:
    if V.base is not None:
        return ArakelovBundle(((_det(V.base),),), V.rank * V.twist_t, None, V.field)
    return ArakelovBundle(None, V.rank * V.twist_t,
                          ((float(np.linalg.det(np.array(V.base_float))),),), V.field)


def bundle_algebra(V: ArakelovBundle, op: str, W: ArakelovBundle | None = None,
                   t: float | None = None) -> ArakelovBundle:
    if op == "dual":
        return dual(V)
    if op == "twist":
        return twist(V, t)
    if op == "direct_sum":
        return direct_sum(V, W)
    if op == "determinant":
        return determinant(V)
    raise ValueError(f"unknown bundle operation {op!r}")


# -- theta sums --------------------------------------------------------------

def theta_tail_radius(G: np.ndarray, tol: float, log_inv_tol: float | None = None) -> float:
    """Squared radius R2 with sum_{x^T G x > R2} exp(-pi x^T G x) < tol.

    For 0 < c < 1,
        sum_{Q > R2} e^{-pi Q} <= e^{-pi (1-c) R2} sum_x e^{-pi c Q(x)}
                               <= e^{-pi (1-c) R2} prod_i (1 + (c d_i)^{-1/2}),
    where Q = sum_i d_i (x_i + ...)^2 is the Fincke--Pohst form; each nested
    one-dimensional Gaussian sum is at most 1 + (c d_i)^{-1/2} whatever its
    centre. c is picked from a grid to minimise R2. ``log_inv_tol`` stands in
    for log(1/tol) when the target is below the float range.
    """
    if log_inv_tol is None:
        log_inv_tol = math.log(1.0 / tol)
    d, _ = fincke_pohst_form(G)
    d = d * (1 - 1e-9)
    best = math.inf
    for c in np.linspace(0.02, 0.98, 49):
        logC = float(np.sum(np.log1p(1.0 / np.sqrt(c * d))))
        R2 = (logC + log_inv_tol) / (math.pi * (1 - c))
        best = min(best, R2)
    return max(best, 0.0)


def _theta_nonzero(G: np.ndarray, tol: float) -> tuple[float, float, int]:
    """(sum_{x != 0} e^{-pi Q(x)}, error bound, number of points summed).

    The tail target is tol, tightened to EPS times the smallest possible term
    e^{-pi lambda_min} so tiny sums keep their relative accuracy.
    """
    log_inv = max(math.log(1.0 / tol), math.pi * _lambda_min(G) + math.log(1.0 / EPS))
    R2 = theta_tail_radius(G, tol, log_inv)
    err = max(math.exp(-log_inv), 5e-324)
    pts = ellipsoid_points(G, R2, half=True)
    if len(pts) == 0:
        return 0.0, err, 0
    q = quadratic_values(G, pts)
    terms = np.exp(-math.pi * q)
    total = 2.0 * math.fsum(terms)
    return total, err + 4 * EPS * total, len(pts)


def phi(V: ArakelovBundle, tol: float = 1e-13) -> AnalyticValue:
    """#H^0(V) - 1 = sum over nonzero x of exp(-pi ||x||^2)."""
    val, err, _ = _theta_nonzero(V.gram(), tol)
    return AnalyticValue(complex(val), err)


def h0(V: ArakelovBundle, tol: float = 1e-13) -> AnalyticValue:
    """log #H^0(V); abs_error bounds the error of #H^0 before the log, as well
    as (a fortiori) the error of the log since #H^0 >= 1."""
    val, err, _ = _theta_nonzero(V.gram(), tol)
    return AnalyticValue(complex(math.log1p(val)), err)


def count_h0(V: ArakelovBundle, tol: float = 1e-13) -> AnalyticValue:
    val, err, _ = _theta_nonzero(V.gram(), tol)
    return AnalyticValue(complex(1.0 + val), err)


def _lambda_min(G: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(G)[0]) * (1 - 1e-9)


def phi_bound_constants(V: ArakelovBundle) -> tuple[float, float]:
    """(log c1, c2) of the t <= 0 bound phi(V(t)) <= c1 exp(-c2 e^{-2t}).

    c1 is kept as a logarithm because e^{pi lambda_min} overflows for
    strongly negative bundles.
    """
    G = V.gram()
    d, _ = fincke_pohst_form(G)
    d = d * (1 - 1e-9)
    lam = _lambda_min(G)
    log_c1 = math.pi * lam + math.log(float(np.prod(1.0 + 1.0 / np.sqrt(d))) - 1.0)
    return log_c1, math.pi * lam


def phi_upper_bound(V: ArakelovBundle, t: float) -> float:
    """Certified upper bound for phi(twist(V, t)).

    For t <= 0 write u = e^{-2t} >= 1; every nonzero x has Q(x) >= lambda_min,
    so e^{-pi u Q} <= e^{-pi Q} e^{-pi (u-1) lambda_min}, which gives
        phi(V(t)) <= c1 exp(-c2 e^{-2t}),  c2 = pi lambda_min,
        c1 = e^{pi lambda_min} (prod_i (1 + d_i^{-1/2}) - 1).
    For t > 0 the Gaussian product bound at scale u is returned directly.
    """
    if t <= 0:
        log_c1, c2 = phi_bound_constants(V)
        return math.exp(log_c1 - c2 * math.exp(-2.0 * t))
    d, _ = fincke_pohst_form(V.gram())
    d = d * (1 - 1e-9)
    u = math.exp(-2.0 * t)
    return float(np.prod(1.0 + 1.0 / np.sqrt(u * d))) - 1.0


def rr_defect(V: ArakelovBundle, tol: float = 1e-13) -> float:
    """h0(V) - h0(V^dual) - deg V; zero by Riemann--Roch over Q (omega trivial)."""
    if V.field.label != "Q":
        raise ValueError("rr_defect is implemented over Q only")
    return (h0(V, tol).real - h0(dual(V), tol).real) - V.degree


class ThetaProfile:
    """phi(twist(V, t)) for many t <= t_max from one lattice enumeration.

    Points with Q(x) <= R2 are enumerated once at the largest scale needed
    (t = t_max); at smaller t the discarded tail only shrinks.
    """

    def __init__(self, V: ArakelovBundle, t_max: float = 0.0, tol: float = 1e-15):
        G = V.gram() * math.exp(-2.0 * t_max)
        R2 = theta_tail_radius(G, tol)
        pts = ellipsoid_points(G, R2, half=True)
        self.q = np.sort(quadratic_values(V.gram(), pts))
        self.t_max = t_max
        self.tail = tol

    def __call__(self, t: float) -> float:
        if t > self.t_max:
            raise ValueError("ThetaProfile evaluated beyond its enumeration scale")
        return 2.0 * float(np.sum(np.exp(-math.pi * math.exp(-2.0 * t) * self.q)))
