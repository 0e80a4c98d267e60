"""Rational points of bounded height on P(V)(Q).

A point is a primitive vector x in Z^r up to sign and its height is the
metric length ||x||_G, so every comparison ``H(P) <= B`` is decided on the
exact rational H^2 = x^T G x. Float bounds only drive the search.
"""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterator

import numpy as np

from .analytic import EPS, AnalyticValue
from .arakelov import ArakelovBundle
from .errors import DomainError, NotPrimitiveError
from .lattice import ellipsoid_points, leading_extent

_CHUNK_POINTS = 2_000_000


@dataclass(frozen=True, order=True)
class HeightRecord:
    height_sq: Fraction
    coords: tuple[int, ...]

    @property
    def height(self) -> float:
        return math.sqrt(self.height_sq)


def _integral_form(V: ArakelovBundle) -> tuple[np.ndarray, int]:
    """(Gi, D) with Gi = D * G integral."""
    if not V.is_exact:
        raise DomainError("exact point counting needs an untwisted rational Gram matrix")
    D = reduce(math.lcm, (x.denominator for row in V.base for x in row), 1)
    Gi = np.array([[int(x * D) for x in row] for row in V.base], dtype=object)
    return Gi, D


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12) if not x.is_integer() else Fraction(int(x))
    return Fraction(x)


def _bound_sq(B=None, B2=None) -> Fraction:
    if (B is None) == (B2 is None):
        raise TypeError("pass exactly one of B or B2")
    out = _as_fraction(B) ** 2 if B2 is None else _as_fraction(B2)
    if out <= 0:
        raise DomainError("height bound must be positive")
    return out


def point_height(V: ArakelovBundle, x) -> Fraction:
    """Exact squared height x^T G x of the point spanned by a primitive x."""
    x = [int(v) for v in x]
    if len(x) != V.rank:
        raise DomainError("coordinate vector has the wrong length")
    if all(v == 0 for v in x) or reduce(math.gcd, x) != 1:
        raise NotPrimitiveError(f"{tuple(x)} is not primitive")
    G = V.base
    return sum((G[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x))), Fraction(0))


def _quad_int(Gi: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Exact x^T Gi x; int64 when safe, Python ints otherwise."""
    gmax = max(abs(int(v)) for v in Gi.flat)
    xmax = int(np.abs(X).max()) if X.size else 0
    r = Gi.shape[0]
    if gmax * xmax * xmax * r * r < 2**62:
        return np.einsum("ij,jk,ik->i", X, Gi.astype(np.int64), X)
    Xo = X.astype(object)
    return np.einsum("ij,jk,ik->i", Xo, Gi, Xo)


def _slabs(V: ArakelovBundle, R2: float) -> Iterator[np.ndarray]:
    """Canonical-sign primitive candidates with Q(x) <= R2 (float-widened),
    produced slab by slab along the first coordinate."""
    G = V.gram()
    r = V.rank
    top = leading_extent(G, R2)
    # rough density per unit of leading coordinate to size slabs
    vol = math.pi ** (r / 2) / math.gamma(r / 2 + 1) * R2 ** (r / 2) / math.sqrt(np.linalg.det(G))
    per = max(vol / (2 * top + 1), 1.0)
    step = max(1, int(_CHUNK_POINTS / per))
    lo = 0
    while lo <= top:
        hi = min(top, lo + step - 1)
        X = ellipsoid_points(G, R2, half=True, lead=(lo, hi))
        if len(X):
            X = X[np.gcd.reduce(X, axis=1) == 1]
        yield X
        lo = hi + 1


def _census(V: ArakelovBundle, B2: Fraction,
            keep: Callable[[np.ndarray, int], np.ndarray] | None = None) -> Iterator[tuple[np.ndarray, np.ndarray, int]]:
    """Yield (points, D * height_sq, D) for points with height_sq <= B2."""
    Gi, D = _integral_form(V)
    R2 = float(B2) * (1 + 1e-9)
    for X in _slabs(V, R2):
        if not len(X):
            continue
        q = _quad_int(Gi, X)
        if keep is None:
            lim, den = B2.numerator * D, B2.denominator
            if max(lim, den * (int(q.max()) if len(q) else 0)) < 2**62:
                mask = q * den <= lim
            else:
                mask = [int(v) * den <= lim for v in q]
        else:
            mask = keep(q, D)
        mask = np.asarray(mask, dtype=bool)
        yield X[mask], q[mask], D


def enumerate_points(V: ArakelovBundle, B=None, *, B2=None) -> list[HeightRecord]:
    """All points with H(P) <= B (closed), sorted by (height^2, coords)."""
    B2 = _bound_sq(B, B2)
    out: list[HeightRecord] = []
    for X, q, D in _census(V, B2):
        out.extend(HeightRecord(Fraction(int(qq), D), tuple(int(v) for v in x)) for x, qq in zip(X, q))
    out.sort()
    return out


def count_points(V: ArakelovBundle, B=None, *, B2=None, cache=None) -> int:
    """Number of points with H(P) <= B, without materialising records."""
    B2 = _bound_sq(B, B2)
    if cache is not None:
        hit = cache.load(census_key(V, B2))
        if hit is not None:
            return int(hit["count"])
    n = sum(len(X) for X, _, _ in _census(V, B2))
    if cache is not None:
        cache.store(census_key(V, B2), {"count": n})
    return n


def count_points_power(V: ArakelovBundle, m: int, B2) -> int:
    """Number of points with H(P)^m <= B, i.e. (H^2)^m <= B^2, exactly."""
    B2 = _as_fraction(B2)
    if m <= 0:
        raise DomainError("exponent must be positive")
    root = float(B2) ** (1.0 / m)

    def keep(q, D):
        n, d = B2.numerator, B2.denominator
        return np.array([int(v) ** m * d <= n * D ** m for v in q], dtype=bool)

    return sum(len(X) for X, _, _ in _census(V, _as_fraction(root * (1 + 1e-9) + 1e-9), keep))


def census_key(V: ArakelovBundle, B2: Fraction) -> str:
    rows = ";".join(",".join(str(x) for x in row) for row in V.base)
    return f"census|{rows}|{B2}"


def counting_constant(V: ArakelovBundle, B: float) -> float:
    """C with #{P : H(P) <= x} <= C x^r for every x >= B.

    Unit cubes around lattice points are disjoint and lie in the ellipsoid of
    radius x + delta, delta = sqrt(sum |G_ij|) / 2, so
        #{P} <= vol_r (x + delta)^r / (2 sqrt(det G)).
    """
    G = V.gram()
    r = V.rank
    delta = 0.5 * math.sqrt(float(np.abs(G).sum()))
    vol = math.pi ** (r / 2) / math.gamma(r / 2 + 1)
    return vol * (1 + delta / B) ** r / (2 * math.sqrt(float(np.linalg.det(G))))


def dirichlet_partial(V: ArakelovBundle, s, B) -> AnalyticValue:
    """sum_{H(P) <= B} H(P)^{-s} with a certified tail bound.

    With N(x) <= C x^r (see :func:`counting_constant`) partial summation gives
        |sum_{H > B} H^{-s}| <= sigma C B^{r - sigma} / (sigma - r).
    For Re s <= r the tail is unbounded and abs_error is inf.
    """
    return dirichlet_partials(V, [s], B)[0]


def dirichlet_partials(V: ArakelovBundle, ss, B) -> list[AnalyticValue]:
    """:func:`dirichlet_partial` at several s from a single census."""
    ss = [complex(s) for s in ss]
    B = float(B)
    if B < 1:
        raise DomainError("dirichlet_partial needs B >= 1")
    B2 = _as_fraction(B) ** 2
    parts = [([], [], []) for _ in ss]
    for X, q, D in _census(V, B2):
        logh = 0.5 * (np.log(q.astype(float)) - math.log(D))
        for s, (pr, pi, mag) in zip(ss, parts):
            terms = np.exp(-s * logh)
            pr.append(math.fsum(terms.real))
            pi.append(math.fsum(terms.imag))
            mag.append(float(np.abs(terms).sum()))
    r = V.rank
    C = counting_constant(V, B)
    out = []
    for s, (pr, pi, mag) in zip(ss, parts):
        value = complex(math.fsum(pr), math.fsum(pi))
        sigma = s.real
        if sigma <= r:
            warnings.warn(f"Re s = {sigma} <= rank {r}: no tail bound for the partial sum", RuntimeWarning)
            out.append(AnalyticValue(value, math.inf))
            continue
        tail = sigma * C * B ** (r - sigma) / (sigma - r)
        out.append(AnalyticValue(value, tail + 16 * EPS * math.fsum(mag)))
    return out


def write_csv(records, path) -> None:
    """CSV dump: coordinate columns, then height_sq_num, height_sq_den."""
    records = list(records)
    r = len(records[0].coords) if records else 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{i}" for i in range(r)] + ["height_sq_num", "height_sq_den"])
        for rec in records:
            w.writerow(list(rec.coords) + [rec.height_sq.numerator, rec.height_sq.denominator])


def read_csv(path) -> list[HeightRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    out = []
    for row in rows[1:]:
        *coords, num, den = (int(v) for v in row)
        out.append(HeightRecord(Fraction(num, den), tuple(coords)))
    return out
