"""Exact stretch, weight and lightness measurements."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import dijkstra, minimum_spanning_tree

from .geom import PointSet
from .graph import Graph

STRETCH_RTOL = 1e-9


@dataclass(frozen=True)
class StretchReport:
    max_stretch: float
    witness: tuple[int, int] | None
    ok: bool
    target: float | None = None


def graph_weight(graph: Graph) -> float:
    return math.fsum(graph.w)


def stretch_factor(points: PointSet, graph: Graph, target: float | None = None) -> StretchReport:
    """Maximum over all pairs of shortest-path weight / Euclidean distance.

    A disconnected graph reports infinite stretch with a separated pair as witness.
    """
    n = len(points)
    if n < 2:
        return StretchReport(1.0, None, True, target)
    sp = dijkstra(graph.to_csr(), directed=False)
    euclid = points.distance_matrix()
    np.fill_diagonal(euclid, 1.0)
    ratio = sp / euclid
    np.fill_diagonal(ratio, 0.0)
    flat = int(np.argmax(ratio))
    u, v = divmod(flat, n)
    worst = float(ratio[u, v])
    ok = math.isfinite(worst) and (target is None or worst <= target * (1.0 + STRETCH_RTOL))
    return StretchReport(worst, (min(u, v), max(u, v)), ok, target)


def verify_spanner(points: PointSet, graph: Graph, eps: float) -> bool:
    return stretch_factor(points, graph, 1.0 + eps).ok


def emst_weight(points: PointSet) -> float:
    if len(points) < 2:
        return 0.0
    tree = minimum_spanning_tree(points.distance_matrix())
    return math.fsum(tree.data)


def lightness(points: PointSet, graph: Graph) -> float:
    return graph_weight(graph) / emst_weight(points)
