"""Plain-text point and graph files."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ParameterError
from .geom import PointSet
from .graph import Graph


def write_points(path: str | Path, points: PointSet, header: Iterable[str] = ()) -> None:
    with open(path, "w") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for x, y in points.coords:
            fh.write(f"{x:.17g} {y:.17g}\n")


def read_points(path: str | Path) -> PointSet:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParameterError(f"{path}:{lineno}: expected 'x y'")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise ParameterError(f"{path}:{lineno}: {exc}") from None
    return PointSet(np.asarray(rows, dtype=np.float64).reshape(-1, 2))


def write_graph(path: str | Path, graph: Graph) -> None:
    with open(path, "w") as fh:
        fh.write(f"{graph.n} {len(graph)}\n")
        for u, v in graph.uv:
            fh.write(f"{u} {v}\n")


def read_graph(path: str | Path, points: PointSet) -> Graph:
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ParameterError(f"{path}: missing 'n m' header")
    n, m = map(int, lines[0])
    if n != len(points):
        raise ParameterError(f"{path}: graph has {n} vertices, point file has {len(points)}")
    if len(lines) - 1 != m:
        raise ParameterError(f"{path}: header announces {m} edges, found {len(lines) - 1}")
    pairs = [(int(u), int(v)) for u, v in lines[1:]]
    if any(u >= v for u, v in pairs):
        raise ParameterError(f"{path}: edges must be written with u < v")
    return Graph(points, pairs)
