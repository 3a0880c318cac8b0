"""Planar primitives: points, cone indexing and the regions used by SparseYao.

All regions are closed point sets and comparisons are exact floating point
(no slack).  The scalar kernels are compiled with numba so the spanner
builders can call the very same code path as the public predicates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
from numba import njit

from .errors import DegenerateError, ParameterError

TWO_PI = 2.0 * math.pi
_WRAP = TWO_PI - math.ulp(TWO_PI)


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ParameterError(f"non-finite coordinate in ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y


class PointSet:
    """Ordered, duplicate-free planar point set; the index is the vertex id."""

    def __init__(self, points: Iterable[Sequence[float]] | np.ndarray):
        coords = np.asarray([tuple(p) for p in points] if not isinstance(points, np.ndarray) else points,
                            dtype=np.float64)
        if coords.size == 0:
            coords = coords.reshape(0, 2)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise ParameterError("points must be pairs of coordinates")
        if not np.all(np.isfinite(coords)):
            raise ParameterError("non-finite coordinate")
        if len(np.unique(coords, axis=0)) != len(coords):
            raise ParameterError("duplicate points")
        coords.setflags(write=False)
        self.coords = coords

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Point:
        x, y = self.coords[i]
        return Point(float(x), float(y))

    def __iter__(self) -> Iterator[Point]:
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointSet) and np.array_equal(self.coords, other.coords)

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"

    def dist(self, u: int, v: int) -> float:
        return _dist(self.coords[u, 0], self.coords[u, 1], self.coords[v, 0], self.coords[v, 1])

    def distance_matrix(self) -> np.ndarray:
        d = self.coords[:, None, :] - self.coords[None, :, :]
        return np.hypot(d[..., 0], d[..., 1])


@dataclass(frozen=True)
class ConeFrame:
    """k big cones of aperture 2π/k, each split into k subcones of aperture 2π/k²."""

    k: int

    def __post_init__(self):
        # k=1 (a single cone covering every direction) is accepted for the
        # closest-point helpers; the builders insist on k >= 3 themselves.
        if int(self.k) != self.k or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k}")

    @property
    def aperture(self) -> float:
        return TWO_PI / self.k

    @property
    def sub_aperture(self) -> float:
        return TWO_PI / (self.k * self.k)

    def axis(self, i: int) -> tuple[float, float]:
        """Unit direction of the symmetry axis of cone i (1-based)."""
        a = (i - 0.5) * self.aperture
        return math.cos(a), math.sin(a)


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    w: float

    def __post_init__(self):
        if self.u == self.v:
            raise DegenerateError("loop edge")
        if self.u > self.v:
            raise ParameterError("edge must be stored with u < v")


# ---------------------------------------------------------------- kernels

@njit(cache=True)
def _dist(ax, ay, bx, by):
    return math.hypot(bx - ax, by - ay)


@njit(cache=True)
def _angle(dx, dy):
    a = math.atan2(dy, dx)
    if a < 0.0:
        a += TWO_PI
    if a >= _WRAP:
        a = 0.0
    return a


@njit(cache=True)
def _subcone(dx, dy, k):
    """0-based global subcone id; the big cone is id // k."""
    kk = k * k
    s = int(_angle(dx, dy) / (TWO_PI / kk))
    if s >= kk:
        s = kk - 1
    return s


@njit(cache=True)
def subcone_ids(dx, dy, k):
    out = np.empty(dx.shape[0], dtype=np.int64)
    for t in range(dx.shape[0]):
        out[t] = _subcone(dx[t], dy[t], k)
    return out


@njit(cache=True)
def _seg_dist(sx, sy, ax, ay, bx, by):
    vx = bx - ax
    vy = by - ay
    ll = vx * vx + vy * vy
    if ll == 0.0:
        return math.hypot(sx - ax, sy - ay)
    t = ((sx - ax) * vx + (sy - ay) * vy) / ll
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(sx - (ax + t * vx), sy - (ay + t * vy))


@njit(cache=True)
def _ray_dist(sx, sy, ax, ay, ux, uy):
    t = (sx - ax) * ux + (sy - ay) * uy
    if t < 0.0:
        t = 0.0
    return math.hypot(sx - (ax + t * ux), sy - (ay + t * uy))


@njit(cache=True)
def _in_wedge(ax, ay, ux, uy, half, bx, by):
    """Closed cone with apex a, unit axis u and half-angle `half`."""
    dx = bx - ax
    dy = by - ay
    if dx == 0.0 and dy == 0.0:
        return True
    return math.atan2(abs(ux * dy - uy * dx), ux * dx + uy * dy) <= half


@njit(cache=True)
def _in_a_hat(px, py, qx, qy, sx, sy, eps):
    d = math.hypot(qx - px, qy - py)
    r = math.sqrt(eps) / 16.0
    ex = px - r * (qx - px)
    ey = py - r * (qy - py)
    return _seg_dist(sx, sy, px, py, ex, ey) <= eps / 64.0 * d


@njit(cache=True)
def _in_b(px, py, qx, qy, bx, by, eps):
    d = math.hypot(qx - px, qy - py)
    ux = (qx - px) / d
    uy = (qy - py) / d
    alpha = math.sqrt(eps) / 4.0
    return _in_wedge(px, py, ux, uy, alpha, bx, by) and _in_wedge(qx, qy, ux, uy, 2.0 * alpha, bx, by)


@njit(cache=True)
def _dist_to_b(px, py, qx, qy, bx, by, eps):
    if _in_b(px, py, qx, qy, bx, by, eps):
        return 0.0
    d = math.hypot(qx - px, qy - py)
    ux = (qx - px) / d
    uy = (qy - py) / d
    alpha = math.sqrt(eps) / 4.0
    best = math.inf
    for sgn in (1.0, -1.0):
        # W2 boundary leaves q at angle 2α and meets the W1 boundary at c with |qc| = |pq|
        c2 = math.cos(2.0 * alpha)
        s2 = sgn * math.sin(2.0 * alpha)
        cx = qx + d * (ux * c2 - uy * s2)
        cy = qy + d * (uy * c2 + ux * s2)
        c1 = math.cos(alpha)
        s1 = sgn * math.sin(alpha)
        wx = ux * c1 - uy * s1
        wy = uy * c1 + ux * s1
        best = min(best, _seg_dist(bx, by, qx, qy, cx, cy))
        best = min(best, _ray_dist(bx, by, cx, cy, wx, wy))
    return best


@njit(cache=True)
def _in_ellipse(ax, ay, bx, by, eps, sx, sy):
    return math.hypot(sx - ax, sy - ay) + math.hypot(bx - sx, by - sy) <= (1.0 + eps) * math.hypot(bx - ax, by - ay)


# ------------------------------------------------------------- public API

def _check_eps_open(eps: float) -> None:
    if not 0.0 < eps < 1.0 / 9.0:
        raise ParameterError(f"eps must lie in (0, 1/9), got {eps}")


def _distinct(p: Point, q: Point) -> None:
    if p.x == q.x and p.y == q.y:
        raise DegenerateError("coincident points have no direction")


def angle_of(p: Point, q: Point) -> float:
    """Counter-clockwise angle of the ray p->q from the +x axis, in [0, 2π)."""
    _distinct(p, q)
    return _angle(q.x - p.x, q.y - p.y)


def cone_index(frame: ConeFrame, p: Point, q: Point) -> tuple[int, int]:
    """1-based (cone, subcone) of direction p->q; intervals are [low, high)."""
    _distinct(p, q)
    s = _subcone(q.x - p.x, q.y - p.y, frame.k)
    return s // frame.k + 1, s % frame.k + 1


def in_region_A_hat(p: Point, q: Point, s: Point, eps: float) -> bool:
    _distinct(p, q)
    _check_eps_open(eps)
    return bool(_in_a_hat(p.x, p.y, q.x, q.y, s.x, s.y, eps))


def in_region_B(p: Point, q: Point, b: Point, eps: float) -> bool:
    """Membership in the lens W1 ∩ W2 ahead of the edge pq.

    W1 has apex p and aperture √eps/2, W2 has apex q and aperture √eps; both
    are symmetric about the ray p->q.
    """
    _distinct(p, q)
    _check_eps_open(eps)
    return bool(_in_b(p.x, p.y, q.x, q.y, b.x, b.y, eps))


def dist_to_region_B(p: Point, q: Point, b: Point, eps: float) -> float:
    _distinct(p, q)
    _check_eps_open(eps)
    return float(_dist_to_b(p.x, p.y, q.x, q.y, b.x, b.y, eps))


def in_region_B_hat(p: Point, q: Point, b: Point, eps: float) -> bool:
    return dist_to_region_B(p, q, b, eps) <= eps / 32.0 * math.hypot(q.x - p.x, q.y - p.y)


def ellipse_contains(a: Point, b: Point, eps: float, s: Point) -> bool:
    """Closed ellipse with foci a, b and major axis (1+eps)|ab|."""
    _distinct(a, b)
    if eps <= 0:
        raise ParameterError("eps must be positive")
    return bool(_in_ellipse(a.x, a.y, b.x, b.y, eps, s.x, s.y))


def is_primitive(v: tuple[int, int]) -> bool:
    x, y = v
    if x == 0 and y == 0:
        raise DegenerateError("zero vector")
    return math.gcd(abs(int(x)), abs(int(y))) == 1
