"""Geometry of the Perfect-Mirsky region PM_n.

PM_n is the union of the convex hulls Pi_k of the k-th roots of unity for
k <= n: a point for k=1, the segment [-1, 1] for k=2, regular polygons
beyond.  Membership testing has a fast path (everything inside the circle
inscribed in Pi_n, radius cos(pi/n), is inside), a vertex-interval test per
polygon, an independent cross-product oracle, and a continuous signed
distance used to bisect boundary crossings.

Scalar entry points take one complex number; the ``*_many`` variants take a
complex ndarray and vectorize over it.  Membership is closed: boundary
points, including all roots of unity of order <= n, count as inside.  Both
membership tests cushion their comparisons by BOUNDARY_TOL so points a few
ulps off a vertex or edge still count; the cushion sits inside the 1e-12
band within which membership is unspecified anyway.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BOUNDARY_TOL = 1e-12


class RegionPM:
    """PM_n with its polygon vertex tables precomputed.

    ``polygons[k]`` is a (k, 2) array of the k-th roots of unity in
    counterclockwise order starting at (1, 0).
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("PM_n needs n >= 2")
        self.n = n
        self.polygons: dict[int, np.ndarray] = {}
        for k in range(1, n + 1):
            ang = 2.0 * np.pi * np.arange(k) / k
            verts = np.column_stack([np.cos(ang), np.sin(ang)])
            verts[np.abs(verts) < 1e-15] = 0.0  # sin(pi) etc. are exact zeros
            self.polygons[k] = verts
        self.inradius = math.cos(math.pi / n) if n > 2 else 0.0
        # Upper-half vertex abscissas/ordinates per k >= 3, for the interval
        # test: vertices at angles 2*pi*j/k, j = 0..floor(k/2), abscissas
        # strictly decreasing from 1.
        self._upper: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for k in range(3, n + 1):
            j = np.arange(k // 2 + 1)
            ang = 2.0 * np.pi * j / k
            self._upper[k] = (np.cos(ang), np.sin(ang))


def pm_contains(region: RegionPM, lam: complex) -> bool:
    """Membership via the inscribed circle and per-polygon interval tests."""
    x = lam.real
    y = abs(lam.imag)
    if region.n > 2 and math.hypot(x, y) <= region.inradius:
        return True
    if y <= BOUNDARY_TOL and -1.0 - BOUNDARY_TOL <= x <= 1.0 + BOUNDARY_TOL:
        return True  # Pi_2 (and Pi_1 at x=1)
    for k in range(3, region.n + 1):
        xs, ys = region._upper[k]
        if x < xs[-1] - BOUNDARY_TOL or x > 1.0 + BOUNDARY_TOL:
            continue
        # Index j with xs[j+1] <= x <= xs[j]; the seam x == 1 clamps to j=0.
        j = int(np.searchsorted(-xs, -x, side="right")) - 1
        j = min(max(j, 0), len(xs) - 2)
        x0, y0, x1, y1 = xs[j], ys[j], xs[j + 1], ys[j + 1]
        edge_y = y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        if y <= edge_y + BOUNDARY_TOL:
            return True
    return False


def pm_contains_many(region: RegionPM, points: np.ndarray) -> np.ndarray:
    """Vectorized pm_contains."""
    pts = np.asarray(points, dtype=complex).ravel()
    x = pts.real
    y = np.abs(pts.imag)
    inside = np.zeros(pts.shape, dtype=bool)
    if region.n > 2:
        inside |= np.hypot(x, y) <= region.inradius
    inside |= (y <= BOUNDARY_TOL) & (x >= -1.0 - BOUNDARY_TOL) & (x <= 1.0 + BOUNDARY_TOL)
    for k in range(3, region.n + 1):
        xs, ys = region._upper[k]
        cand = ~inside & (x >= xs[-1] - BOUNDARY_TOL) & (x <= 1.0 + BOUNDARY_TOL)
        if not cand.any():
            continue
        xc = x[cand]
        j = np.searchsorted(-xs, -xc, side="right") - 1
        j = np.clip(j, 0, len(xs) - 2)
        x0, y0 = xs[j], ys[j]
        x1, y1 = xs[j + 1], ys[j + 1]
        edge_y = y0 + (y1 - y0) * (xc - x0) / (x1 - x0)
        hit = np.zeros(pts.shape, dtype=bool)
        hit[cand] = y[cand] <= edge_y + BOUNDARY_TOL
        inside |= hit
    return inside.reshape(np.shape(points))


def pm_contains_oracle(region: RegionPM, lam: complex) -> bool:
    """Independent membership oracle: exact-orientation tests per polygon.

    A point is inside a counterclockwise convex polygon iff every edge's
    cross product with it is >= 0; Pi_1 and Pi_2 degenerate to a point and a
    segment test.
    """
    x, y = lam.real, lam.imag
    if abs(y) <= BOUNDARY_TOL and -1.0 - BOUNDARY_TOL <= x <= 1.0 + BOUNDARY_TOL:
        return True
    for k in range(3, region.n + 1):
        verts = region.polygons[k]
        ok = True
        for j in range(k):
            x0, y0 = verts[j]
            x1, y1 = verts[(j + 1) % k]
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) < -BOUNDARY_TOL:
                ok = False
                break
        if ok:
            return True
    return False


def pm_contains_oracle_many(region: RegionPM, points: np.ndarray) -> np.ndarray:
    """Vectorized oracle, same predicate as pm_contains_oracle."""
    pts = np.asarray(points, dtype=complex).ravel()
    x = pts.real
    y = pts.imag
    inside = (
        (np.abs(y) <= BOUNDARY_TOL)
        & (x >= -1.0 - BOUNDARY_TOL)
        & (x <= 1.0 + BOUNDARY_TOL)
    )
    for k in range(3, region.n + 1):
        verts = region.polygons[k]
        ok = np.ones(pts.shape, dtype=bool)
        for j in range(k):
            x0, y0 = verts[j]
            x1, y1 = verts[(j + 1) % k]
            ok &= (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) >= -BOUNDARY_TOL
        inside |= ok
    return inside.reshape(np.shape(points))


def _segment_distance_many(
    x: np.ndarray, y: np.ndarray, p0: np.ndarray, p1: np.ndarray
) -> np.ndarray:
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    L2 = dx * dx + dy * dy
    t = ((x - p0[0]) * dx + (y - p0[1]) * dy) / L2
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(x - (p0[0] + t * dx), y - (p0[1] + t * dy))


def pm_signed_distance_many(region: RegionPM, points: np.ndarray) -> np.ndarray:
    """Min over k of the signed Euclidean distance to Pi_k.

    Negative strictly inside the union, zero on its boundary, positive
    outside; continuous everywhere.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    x = pts.real
    y = pts.imag
    best = np.hypot(x - 1.0, y)  # Pi_1, never negative
    # Pi_2: distance to the segment [-1, 1] (no interior as a planar set).
    best = np.minimum(best, np.hypot(x - np.clip(x, -1.0, 1.0), y))
    for k in range(3, region.n + 1):
        verts = region.polygons[k]
        dist = None
        inside = np.ones(pts.shape, dtype=bool)
        for j in range(k):
            p0 = verts[j]
            p1 = verts[(j + 1) % k]
            d = _segment_distance_many(x, y, p0, p1)
            dist = d if dist is None else np.minimum(dist, d)
            inside &= (p1[0] - p0[0]) * (y - p0[1]) - (p1[1] - p0[1]) * (x - p0[0]) >= 0.0
        best = np.minimum(best, np.where(inside, -dist, dist))
    return best.reshape(np.shape(points))


def pm_signed_distance(region: RegionPM, lam: complex) -> float:
    return float(pm_signed_distance_many(region, np.array([lam]))[0])


@dataclass(frozen=True)
class BoundarySegment:
    """One edge of the Pi_k outline: endpoints of segment j of polygon k."""

    k: int
    j: int
    start: tuple[float, float]
    end: tuple[float, float]


def boundary_segments(region: RegionPM) -> list[BoundarySegment]:
    """Polyline outlines of every Pi_k, for plotting overlays.

    Pi_1 contributes no segment, Pi_2 one, Pi_k its k closed edges.
    """
    segs: list[BoundarySegment] = []
    for k in range(2, region.n + 1):
        verts = region.polygons[k]
        count = 1 if k == 2 else k
        for j in range(count):
            p0 = verts[j]
            p1 = verts[(j + 1) % k]
            segs.append(BoundarySegment(k, j, (p0[0], p0[1]), (p1[0], p1[1])))
    return segs


def outline_vertices(region: RegionPM):
    """(k, j, x, y) vertex records for every Pi_k, k = 1..n."""
    for k in range(1, region.n + 1):
        verts = region.polygons[k]
        for j in range(k):
            yield k, j, float(verts[j, 0]), float(verts[j, 1])
