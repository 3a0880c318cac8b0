from __future__ import annotations

from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError
from .geom import Edge, PointSet


class Graph:
    """Undirected Euclidean graph over the vertices 0..n-1 of a point set.

    Edges are canonical (u < v), deduplicated and sorted; weights are always
    recomputed from the coordinates.
    """

    def __init__(self, points: PointSet, pairs: Iterable[tuple[int, int]] | np.ndarray = ()):
        n = len(points)
        uv = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs, dtype=np.int64)
        uv = uv.reshape(-1, 2)
        if len(uv):
            if uv.min() < 0 or uv.max() >= n:
                raise ParameterError("edge endpoint out of range")
            if np.any(uv[:, 0] == uv[:, 1]):
                raise ParameterError("loop edge")
            uv = np.sort(uv, axis=1)
            uv = np.unique(uv, axis=0)
        c = points.coords
        w = np.hypot(c[uv[:, 1], 0] - c[uv[:, 0], 0], c[uv[:, 1], 1] - c[uv[:, 0], 1])
        uv.setflags(write=False)
        w.setflags(write=False)
        self.points = points
        self.n = n
        self.uv = uv
        self.w = w

    def __len__(self) -> int:
        return len(self.uv)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and np.array_equal(self.uv, other.uv)

    @cached_property
    def edges(self) -> list[Edge]:
        return [Edge(int(u), int(v), float(w)) for (u, v), w in zip(self.uv, self.w)]

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((int(u), int(v)) for u, v in self.uv)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.uv:
            adj[u].append(int(v))
            adj[v].append(int(u))
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def union(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        extra = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        return Graph(self.points, np.vstack([self.uv, extra]))

    def to_csr(self) -> sp.csr_matrix:
        m = sp.coo_matrix((self.w, (self.uv[:, 0], self.uv[:, 1])), shape=(self.n, self.n))
        return (m + m.T).tocsr()
