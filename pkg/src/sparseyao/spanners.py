"""Spanner builders: SparseYao, the classical Yao graph and the path-greedy spanner."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ParameterError
from .geom import ConeFrame, PointSet, _dist, _in_a_hat, _in_b, subcone_ids
from .geom import _subcone as _subcone_of
from .graph import Graph


def sparse_yao_k(eps: float) -> int:
    """Number of big cones, ⌈16π/√eps⌉."""
    return math.ceil(16.0 * math.pi / math.sqrt(eps))


def dyadic_bucket(length: float) -> int:
    """The integer j with 2^-j <= length < 2^(1-j)."""
    _, e = math.frexp(length)
    return 1 - e


def _others(points: PointSet, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    c = points.coords
    idx = np.delete(np.arange(len(c)), p)
    dx = c[idx, 0] - c[p, 0]
    dy = c[idx, 1] - c[p, 1]
    return idx, dx, dy


def closest_in_cone(points: PointSet, frame: ConeFrame, p: int, i: int) -> int | None:
    """Nearest point to p inside cone C_i(p); ties go to the smallest index."""
    idx, dx, dy = _others(points, p)
    cone = subcone_ids(dx, dy, frame.k) // frame.k
    sel = np.flatnonzero(cone == i - 1)
    if not len(sel):
        return None
    d = np.hypot(dx[sel], dy[sel])
    return int(idx[sel[np.lexsort((idx[sel], d))[0]]])


def closest_in_subcone_above(points: PointSet, frame: ConeFrame, p: int, i: int, j: int,
                             f: float) -> int | None:
    """Nearest point in subcone C_{i,j}(p) at distance strictly greater than f."""
    if f < 0:
        raise ParameterError("threshold must be non-negative")
    idx, dx, dy = _others(points, p)
    sub = subcone_ids(dx, dy, frame.k)
    d = np.hypot(dx, dy)
    sel = np.flatnonzero((sub == (i - 1) * frame.k + (j - 1)) & (d > f))
    if not len(sel):
        return None
    return int(idx[sel[np.lexsort((idx[sel], d[sel]))[0]]])


# ------------------------------------------------------------------ Yao

def build_yao(points: PointSet, k: int) -> Graph:
    if k < 3:
        raise ParameterError("Yao graph needs k >= 3")
    q = _closest_per_cone(points.coords, k)
    s, i = np.nonzero(q >= 0)
    return Graph(points, np.column_stack([s, q[s, i]]))


@njit(cache=True)
def _closest_per_cone(coords, k):
    n = coords.shape[0]
    q = -np.ones((n, k), dtype=np.int64)
    for s in range(n):
        dx = coords[:, 0] - coords[s, 0]
        dy = coords[:, 1] - coords[s, 1]
        d = np.hypot(dx, dy)
        d[s] = np.inf
        order = np.argsort(d, kind="mergesort")
        for r in range(n - 1):
            t = order[r]
            c = _subcone_of(dx[t], dy[t], k) // k
            if q[s, c] < 0:
                q[s, c] = t
    return q


# ------------------------------------------------------------- SparseYao

@dataclass
class ConeQueue:
    """The list L_i of one big cone, flattened in processing order."""

    i: int
    sources: np.ndarray  # s, in order
    targets: np.ndarray  # q_i(s)
    buckets: np.ndarray  # dyadic j of |s q_i(s)|
    keys: np.ndarray     # projection of s onto the cone axis


def build_queues(points: PointSet, frame: ConeFrame, q: np.ndarray) -> list[ConeQueue]:
    """Sort the pairs (s, q_i(s)) of every cone: larger bucket j first, then by
    decreasing projection onto the cone axis, then by vertex index."""
    c = points.coords
    queues = []
    for i in range(frame.k):
        s = np.flatnonzero(q[:, i] >= 0)
        t = q[s, i]
        lengths = np.hypot(c[t, 0] - c[s, 0], c[t, 1] - c[s, 1])
        _, e = np.frexp(lengths)
        j = 1 - e
        ax, ay = frame.axis(i + 1)
        proj = c[s, 0] * ax + c[s, 1] * ay
        order = np.lexsort((s, -proj, -j))
        queues.append(ConeQueue(i + 1, s[order], t[order], j[order], proj[order]))
    return queues


@njit(cache=True)
def _sorted_neighbourhoods(coords, k):
    """Per source: others sorted by (distance, index) and by (subcone, distance, index)."""
    n = coords.shape[0]
    m = n - 1
    nbr = np.empty((n, m), dtype=np.int32)
    nbr_d = np.empty((n, m), dtype=np.float64)
    sub_idx = np.empty((n, m), dtype=np.int32)
    sub_id = np.empty((n, m), dtype=np.int32)
    sub_d = np.empty((n, m), dtype=np.float64)
    for s in range(n):
        dx = coords[:, 0] - coords[s, 0]
        dy = coords[:, 1] - coords[s, 1]
        d = np.hypot(dx, dy)
        d[s] = np.inf
        order = np.argsort(d, kind="mergesort")[:m]
        sub = np.empty(m, dtype=np.int64)
        for r in range(m):
            t = order[r]
            nbr[s, r] = t
            nbr_d[s, r] = d[t]
            sub[r] = _subcone_of(dx[t], dy[t], k)
        o2 = np.argsort(sub, kind="mergesort")
        for r in range(m):
            t = order[o2[r]]
            sub_idx[s, r] = t
            sub_id[s, r] = sub[o2[r]]
            sub_d[s, r] = d[t]
    return nbr, nbr_d, sub_idx, sub_id, sub_d


@njit(cache=True)
def _main_phase(coords, k, eps, qptr, qsrc, qtgt, pos, nbr, nbr_d, sub_idx, sub_id, sub_d):
    alive = np.ones(qsrc.shape[0], dtype=np.bool_)
    out = []
    reach = math.sqrt(eps) / 16.0 + eps / 64.0
    m = nbr.shape[1]
    for i in range(k):
        for t in range(qptr[i], qptr[i + 1]):
            if not alive[t]:
                continue
            p = qsrc[t]
            qi = qtgt[t]
            px, py = coords[p, 0], coords[p, 1]
            qx, qy = coords[qi, 0], coords[qi, 1]
            dq = _dist(px, py, qx, qy)
            out.append(p)
            out.append(qi)
            f = dq / 3.0
            for di in range(-1, 2):
                ic = (i + di) % k
                row = sub_id[p]
                lo = np.searchsorted(row, ic * k)
                hi = np.searchsorted(row, ic * k + k)
                done = -1
                for r in range(lo, hi):
                    sb = row[r]
                    if sb == done or sub_d[p, r] <= f:
                        continue
                    done = sb
                    c = sub_idx[p, r]
                    if not _in_b(px, py, qx, qy, coords[c, 0], coords[c, 1], eps):
                        if sub_d[p, r] >= 2.0 * dq:
                            raise AssertionError("subcone edge not shorter than twice the cone edge")
                        out.append(p)
                        out.append(c)
            alive[t] = False
            limit = reach * dq * (1.0 + 1e-9)
            for r in range(m):
                if nbr_d[p, r] > limit:
                    break
                s = nbr[p, r]
                e = pos[i, s]
                if e >= 0 and alive[e] and _in_a_hat(px, py, qx, qy, coords[s, 0], coords[s, 1], eps):
                    alive[e] = False
    return np.array(out, dtype=np.int64)


def build_sparse_yao(points: PointSet, eps: float) -> Graph:
    """(1+eps)-spanner from √eps-aperture cones plus selective eps-aperture subcone edges.

    Every pair (p, q_i(p)) is taken from the cone queues in order; the edge is
    added together with the subcone edges of the three neighbouring cones that
    leave the lens B(p, q_i), and every queued pair whose source lies in
    Â(p, q_i) is dropped.
    """
    if not 0.0 < eps < 1.0 / 9.0:
        raise ParameterError(f"SparseYao requires eps in (0, 1/9), got {eps}")
    n = len(points)
    if n < 1:
        raise ParameterError("empty point set")
    if n == 1:
        return Graph(points)
    k = sparse_yao_k(eps)
    frame = ConeFrame(k)
    coords = np.ascontiguousarray(points.coords)
    q = _closest_per_cone(coords, k)
    queues = build_queues(points, frame, q)
    qptr = np.zeros(k + 1, dtype=np.int64)
    qptr[1:] = np.cumsum([len(L.sources) for L in queues])
    qsrc = np.concatenate([L.sources for L in queues]).astype(np.int64)
    qtgt = np.concatenate([L.targets for L in queues]).astype(np.int64)
    pos = -np.ones((k, n), dtype=np.int64)
    for i, L in enumerate(queues):
        pos[i, L.sources] = qptr[i] + np.arange(len(L.sources))
    nbr, nbr_d, sub_idx, sub_id, sub_d = _sorted_neighbourhoods(coords, k)
    flat = _main_phase(coords, k, float(eps), qptr, qsrc, qtgt, pos, nbr, nbr_d, sub_idx, sub_id, sub_d)
    return Graph(points, flat.reshape(-1, 2))


# ---------------------------------------------------------------- greedy

def build_greedy(points: PointSet, eps: float) -> Graph:
    """Path-greedy spanner: scan pairs by (weight, u, v), keep uv unless the
    current graph already has a uv-path of weight <= (1+eps)|uv|."""
    if eps <= 0:
        raise ParameterError("eps must be positive")
    n = len(points)
    if n < 2:
        return Graph(points)
    u, v = np.triu_indices(n, 1)
    c = points.coords
    w = np.hypot(c[v, 0] - c[u, 0], c[v, 1] - c[u, 1])
    order = np.lexsort((v, u, w))
    flat = _greedy(n, u[order], v[order], w[order], 1.0 + float(eps))
    return Graph(points, flat.reshape(-1, 2))


@njit(cache=True)
def _greedy(n, us, vs, ws, t):
    # cache[a, b] is the weight of some a-b path in the current graph
    cache = np.full((n, n), np.inf)
    for a in range(n):
        cache[a, a] = 0.0
    cap = 8
    adj = np.empty((n, cap), dtype=np.int64)
    adj_w = np.empty((n, cap), dtype=np.float64)
    deg = np.zeros(n, dtype=np.int64)
    dist = np.full(n, np.inf)
    touched = np.empty(n, dtype=np.int64)
    out = []
    for e in range(us.shape[0]):
        a, b, w = us[e], vs[e], ws[e]
        budget = t * w
        if cache[a, b] <= budget:
            continue
        # Dijkstra from a; the search is not truncated so that the cache
        # row of a stays useful for the longer pairs that follow
        nt = 0
        dist[a] = 0.0
        touched[nt] = a
        nt += 1
        heap = [(0.0, a)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for r in range(deg[x]):
                y = adj[x, r]
                nd = d + adj_w[x, r]
                if nd < dist[y]:
                    if dist[y] == np.inf:
                        touched[nt] = y
                        nt += 1
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        found = dist[b] <= budget
        for r in range(nt):
            y = touched[r]
            if dist[y] < cache[a, y]:
                cache[a, y] = dist[y]
                cache[y, a] = dist[y]
            dist[y] = np.inf
        if found:
            continue
        out.append(a)
        out.append(b)
        cache[a, b] = w
        cache[b, a] = w
        for x, y in ((a, b), (b, a)):
            if deg[x] == cap:
                cap *= 2
                na = np.empty((n, cap), dtype=np.int64)
                nw = np.empty((n, cap), dtype=np.float64)
                na[:, : cap // 2] = adj
                nw[:, : cap // 2] = adj_w
                adj, adj_w = na, nw
            adj[x, deg[x]] = y
            adj_w[x, deg[x]] = w
            deg[x] += 1
    return np.array(out, dtype=np.int64)
