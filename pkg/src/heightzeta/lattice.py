"""Enumeration of integer points in an ellipsoid x^T G x <= R2.

The search is the usual Fincke--Pohst recursion run breadth-first: every
level expands all surviving partial vectors at once with numpy, so the
Python-level loop runs ``rank`` times regardless of the number of points.
Floating point bounds are widened by a relative margin so no candidate is
ever lost; callers that need exact membership re-test the returned points.
"""
from __future__ import annotations

import numpy as np

_MARGIN = 1e-9


def fincke_pohst_form(G: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (d, mu) with x^T G x = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
    G = np.asarray(G, dtype=float)
    R = np.linalg.cholesky(G).T  # G = R^T R, R upper triangular
    d = np.diag(R) ** 2
    mu = R / np.diag(R)[:, None]
    return d, mu


def ellipsoid_points(G, R2: float, half: bool = False,
                     lead: tuple[int, int] | None = None) -> np.ndarray:
    """All x in Z^r with x^T G x <= R2 (up to the safety margin).

    With ``half=True`` only vectors whose first nonzero coordinate is positive
    are returned (one per pair +-x; zero excluded). ``lead`` restricts the
    first coordinate to a closed range, which lets callers partition a large
    search into independent slabs.
    """
    G = np.asarray(G, dtype=float)
    r = G.shape[0]
    # reverse so the outermost search level is coordinate 0
    Gr = G[::-1, ::-1]
    d, mu = fincke_pohst_form(Gr)
    bound = R2 * (1 + _MARGIN) + _MARGIN
    X = np.zeros((1, 0), dtype=np.int64)
    S = np.zeros(1)
    for level in range(r - 1, -1, -1):
        if X.shape[1]:
            # columns of X hold reversed coordinates level+1 .. r-1, in order
            center = -(X @ mu[level, level + 1:])
        else:
            center = np.zeros(X.shape[0])
        rem = np.maximum(bound - S, 0.0) / d[level]
        width = np.sqrt(rem) * (1 + _MARGIN) + _MARGIN
        lo = np.ceil(center - width).astype(np.int64)
        hi = np.floor(center + width).astype(np.int64)
        if level == r - 1:
            if half:
                lo = np.maximum(lo, 0)
            if lead is not None:
                lo = np.maximum(lo, lead[0])
                hi = np.minimum(hi, lead[1])
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total == 0:
            return np.zeros((0, r), dtype=np.int64)
        idx = np.repeat(np.arange(len(counts)), counts)
        starts = np.cumsum(counts) - counts
        offs = np.arange(total) - np.repeat(starts, counts)
        xi = lo[idx] + offs
        Snew = S[idx] + d[level] * (xi - center[idx]) ** 2
        keep = Snew <= bound
        X = np.concatenate([xi[keep, None], X[idx[keep]]], axis=1)
        S = Snew[keep]
    pts = X[:, ::-1]
    if half:
        pts = canonical_half(pts)
    return pts


def canonical_half(X: np.ndarray) -> np.ndarray:
    """Rows whose first nonzero entry is positive."""
    if X.size == 0:
        return X
    nz = X != 0
    first = np.argmax(nz, axis=1)
    lead = X[np.arange(len(X)), first]
    return X[lead > 0]


def quadratic_values(G, X: np.ndarray) -> np.ndarray:
    G = np.asarray(G, dtype=float)
    return np.einsum("ij,jk,ik->i", X, G, X)


def leading_extent(G, R2: float) -> int:
    """Largest |x_0| over the ellipsoid x^T G x <= R2 (rounded up)."""
    G = np.asarray(G, dtype=float)
    inv00 = np.linalg.inv(G)[0, 0]
    return int(np.floor(np.sqrt(R2 * inv00) * (1 + _MARGIN) + _MARGIN))
