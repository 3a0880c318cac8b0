"""Must-have edge detectors and the explicit lower-bound point sets."""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from .errors import ParameterError
from .geom import Edge, PointSet, is_primitive
from .graph import Graph


@njit(cache=True)
def _empty_ellipse_pairs(coords, eps):
    n = coords.shape[0]
    out = []
    for a in range(n):
        ax, ay = coords[a, 0], coords[a, 1]
        da = np.hypot(coords[:, 0] - ax, coords[:, 1] - ay)
        order = np.argsort(da, kind="mergesort")
        for b in range(a + 1, n):
            dab = da[b]
            bound = (1.0 + eps) * dab
            # a point of the ellipse satisfies 2|as| - |ab| <= (1+eps)|ab|
            reach = (1.0 + 0.5 * eps) * dab * (1.0 + 1e-12)
            bx, by = coords[b, 0], coords[b, 1]
            empty = True
            for r in range(n):
                s = order[r]
                if da[s] > reach:
                    break
                if s == a or s == b:
                    continue
                if da[s] + math.hypot(bx - coords[s, 0], by - coords[s, 1]) <= bound:
                    empty = False
                    break
            if empty:
                out.append(a)
                out.append(b)
    return np.array(out, dtype=np.int64)


@njit(cache=True)
def _empty_slab_pairs(coords, eps):
    n = coords.shape[0]
    out = []
    half = math.sqrt(2.0 * eps + eps * eps) / 2.0
    for a in range(n):
        for b in range(a + 1, n):
            vx = coords[b, 0] - coords[a, 0]
            vy = coords[b, 1] - coords[a, 1]
            ll = vx * vx + vy * vy
            # |cross| / |ab| is the distance to the line ab
            tol = half * ll
            empty = True
            for s in range(n):
                if s == a or s == b:
                    continue
                wx = coords[s, 0] - coords[a, 0]
                wy = coords[s, 1] - coords[a, 1]
                cross = vx * wy - vy * wx
                if cross == 0.0:
                    dot = vx * wx + vy * wy
                    if 0.0 < dot < ll:
                        empty = False
                        break
                elif abs(cross) <= tol:
                    empty = False
                    break
            if empty:
                out.append(a)
                out.append(b)
    return np.array(out, dtype=np.int64)


def must_have_edges(points: PointSet, eps: float, lattice_mode: bool = False) -> list[Edge]:
    """Pairs that every (1+eps)-spanner of the set must contain.

    A pair qualifies when no third point lies in its closed ellipse (a point on
    the boundary disqualifies it).  With lattice_mode the empty slab test is
    added; it is only sound on sections of the integer lattice with eps < 1.
    """
    if eps <= 0:
        raise ParameterError("eps must be positive")
    if lattice_mode and not eps < 1:
        raise ParameterError("the slab condition needs eps < 1")
    coords = np.ascontiguousarray(points.coords)
    flat = _empty_ellipse_pairs(coords, float(eps))
    if lattice_mode:
        flat = np.concatenate([flat, _empty_slab_pairs(coords, float(eps))])
    return Graph(points, flat.reshape(-1, 2)).edges


def must_have_graph(points: PointSet, eps: float, lattice_mode: bool = False) -> Graph:
    return Graph(points, [(e.u, e.v) for e in must_have_edges(points, eps, lattice_mode)])


def _ceil_quarter_root(eps: float) -> int:
    r = eps ** -0.25
    # eps = 1/256 must give exactly 4, not 5 from a rounding wobble
    return round(r) if abs(r - round(r)) < 1e-9 else math.ceil(r)


def star_weight(eps: float) -> float:
    """Total length of the primitive vectors oa, a in [0, ⌈eps^-1/4⌉/2)^2."""
    side = _ceil_quarter_root(eps) / 2.0
    m = math.ceil(side)
    return math.fsum(math.hypot(x, y) for x in range(m) for y in range(m)
                     if (x, y) != (0, 0) and x < side and y < side and is_primitive((x, y)))


def grid_star_lower_bound(n: int, eps: float) -> float:
    """Certified lower bound on the weight of any (1+eps)-spanner of the n x n lattice.

    Stars of primitive vectors centred at every s with 0 <= s1, s2 <= n/2;
    each edge belongs to at most two of them.
    """
    if not 0 < eps <= 1:
        raise ParameterError("eps must lie in (0, 1]")
    if n < 2 * _ceil_quarter_root(eps):
        raise ParameterError(f"n must be at least 2*ceil(eps^-1/4) = {2 * _ceil_quarter_root(eps)}")
    centres = (n // 2 + 1) ** 2
    return centres * star_weight(eps) / 2.0


def two_sided_cluster_set(n: int, eps: float) -> PointSet:
    """g x g unit cells, each holding m = ⌊1/(2 eps)⌋ points on two opposite
    sides, scaled into [0,1]^2 with g = ⌊√(eps n)⌋.

    Cells alternate between the vertical and the horizontal pair of sides in a
    checkerboard, so neighbouring cells never populate a shared side.
    """
    if not 0 < eps <= 1:
        raise ParameterError("eps must lie in (0, 1]")
    m = math.floor(1.0 / eps / 2.0)
    if m < 1:
        raise ParameterError("eps too large: fewer than one point per side")
    if n < 2 * m:
        raise ParameterError(f"n must be at least {2 * m}")
    g = max(1, math.isqrt(math.floor(eps * n)))
    offsets = (np.arange(m) + 0.5) / m
    pts = []
    for cx in range(g):
        for cy in range(g):
            if (cx + cy) % 2 == 0:
                for x in (cx, cx + 1):
                    pts.extend((x, cy + t) for t in offsets)
            else:
                for y in (cy, cy + 1):
                    pts.extend((cx + t, y) for t in offsets)
    return PointSet(np.asarray(pts) / g)


def stretched_lattice_set(n: int, eps: float) -> PointSet:
    """Lattice spanned by (√eps·c, 0) and (0, c/√eps) clipped to [0,1]^2, with
    the scale c chosen for the largest point count not exceeding n."""
    if not 0 < eps <= 1:
        raise ParameterError("eps must lie in (0, 1]")
    if n < 1:
        raise ParameterError("n must be positive")
    # with column step h the row step is h/eps; the count only jumps where
    # 1/h or eps/h is an integer, so try those scales
    best = (1, 2.0, 1, 1)  # a single point is always available
    for a in range(1, n + 1):
        for h in (1.0 / a, eps / a):
            cols = math.floor(1.0 / h + 1e-9) + 1
            rows = math.floor(eps / h + 1e-9) + 1
            if best[0] < cols * rows <= n:
                best = (cols * rows, h, cols, rows)
    _, h, cols, rows = best
    v = h / eps
    xs = np.minimum(np.arange(cols) * h, 1.0)
    ys = np.minimum(np.arange(rows) * v, 1.0)
    gx, gy = np.meshgrid(xs, ys)
    return PointSet(np.column_stack([gx.ravel(), gy.ravel()]))
