"""Point generators, exponent fitting and CSV experiment sweeps."""
from __future__ import annotations

import csv
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from itertools import product
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .geom import PointSet
from .graph import Graph
from .lower_bounds import stretched_lattice_set, two_sided_cluster_set
from .metrics import emst_weight, graph_weight, stretch_factor
from .spanners import build_greedy, build_sparse_yao, build_yao

log = logging.getLogger(__name__)

KINDS = ("grid", "random-square", "two-sided", "stretched-lattice")
ALGORITHMS = ("sparseyao", "yao", "greedy")
RNG_NAME = "numpy-PCG64"


def generate_points(kind: str, n: int, eps: float | None = None, seed: int = 0) -> PointSet:
    """grid: the n x n integer lattice; random-square: n uniform points in
    [0,1]^2; two-sided and stretched-lattice need eps."""
    if n < 1:
        raise ParameterError("n must be positive")
    if kind == "grid":
        xs, ys = np.meshgrid(np.arange(n, dtype=float), np.arange(n, dtype=float), indexing="ij")
        return PointSet(np.column_stack([xs.ravel(), ys.ravel()]))
    if kind == "random-square":
        return PointSet(np.random.default_rng(seed).random((n, 2)))
    if kind in ("two-sided", "stretched-lattice"):
        if eps is None:
            raise ParameterError(f"{kind} needs eps")
        build = two_sided_cluster_set if kind == "two-sided" else stretched_lattice_set
        return build(n, eps)
    raise ParameterError(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")


def generator_header(kind: str, n: int, eps: float | None, seed: int) -> list[str]:
    return [f"generator={kind} n={n} eps={eps} seed={seed} rng={RNG_NAME}"]


def fit_loglog_slope(pairs) -> float:
    """Least-squares slope of ln y against ln x."""
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] != 2:
        raise ParameterError("need at least two (x, y) pairs")
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise ParameterError("x and y must be positive and finite")
    lx, ly = np.log(arr[:, 0]), np.log(arr[:, 1])
    if np.ptp(lx) == 0:
        raise ParameterError("x values are all equal")
    lx -= lx.mean()
    return float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))


def yao_cones_for(eps: float) -> int:
    """Fewest cones for which the Yao stretch bound 1/(1 - 2 sin(π/k)) is <= 1+eps."""
    return max(7, math.ceil(math.pi / math.asin(eps / (2.0 * (1.0 + eps)))))


def build(algo: str, points: PointSet, eps: float | None = None, k: int | None = None) -> Graph:
    if algo == "sparseyao":
        if eps is None:
            raise ParameterError("sparseyao needs eps")
        return build_sparse_yao(points, eps)
    if algo == "greedy":
        if eps is None:
            raise ParameterError("greedy needs eps")
        return build_greedy(points, eps)
    if algo == "yao":
        if k is None:
            if eps is None:
                raise ParameterError("yao needs k or eps")
            k = yao_cones_for(eps)
        return build_yao(points, k)
    raise ParameterError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


@dataclass
class ExperimentRecord:
    generator: str
    n: int
    eps: float
    algorithm: str
    weight: float
    stretch: float
    emst: float
    lightness: float
    seconds: float
    verified: bool

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass
class SweepConfig:
    generator: str
    n: list[int]
    eps: list[float]
    algorithms: list[str]
    seed: int = 0
    output: str | None = None
    workers: int = 1
    yao_k: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.generator not in KINDS:
            raise ParameterError(f"unknown generator {self.generator!r}")
        if not self.n or not self.eps:
            raise ParameterError("parameter grids must be non-empty")
        if not self.algorithms:
            raise ParameterError("algorithm list is empty")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ParameterError(f"unknown algorithm {a!r}")
        if "sparseyao" in self.algorithms and not all(0 < e < 1 / 9 for e in self.eps):
            raise ParameterError("sparseyao needs every eps in (0, 1/9)")

    @classmethod
    def load(cls, path: str | Path) -> "SweepConfig":
        with open(path) as fh:
            raw = json.load(fh)
        known = {f.name for f in fields(cls)}
        extra = {k: v for k, v in raw.items() if k not in known}
        try:
            return cls(**{k: v for k, v in raw.items() if k in known}, extra=extra)
        except TypeError as exc:
            raise ParameterError(f"bad sweep config: {exc}") from None


def run_cell(cfg: SweepConfig, n: int, eps: float, algo: str) -> ExperimentRecord:
    points = generate_points(cfg.generator, n, eps, cfg.seed)
    t0 = time.perf_counter()
    graph = build(algo, points, eps, cfg.yao_k)
    seconds = time.perf_counter() - t0
    report = stretch_factor(points, graph, 1.0 + eps)
    w = graph_weight(graph)
    mst = emst_weight(points)
    rec = ExperimentRecord(cfg.generator, len(points), eps, algo, w, report.max_stretch, mst,
                           w / mst if mst > 0 else math.nan, seconds, report.ok)
    if not rec.verified:
        log.error("stretch check failed: %s n=%d eps=%g %s stretch=%r", cfg.generator, n, eps, algo,
                  report.max_stretch)
    return rec


def _run_cell_args(args):
    return run_cell(*args)


def run_sweep(cfg: SweepConfig, out: str | Path | None = None) -> list[ExperimentRecord]:
    """One record per (n, eps, algorithm) cell, in row-major order."""
    cells = [(cfg, n, e, a) for n, e, a in product(cfg.n, cfg.eps, cfg.algorithms)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            records = list(pool.map(_run_cell_args, cells))
    else:
        records = [run_cell(*c) for c in cells]
    out = out or cfg.output
    if out:
        write_records(out, records)
    return records


def write_records(path: str | Path, records: list[ExperimentRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(ExperimentRecord.columns())
        for r in records:
            row = asdict(r)
            w.writerow([repr(v) if isinstance(v, float) else v for v in row.values()])


def read_records(path: str | Path) -> list[ExperimentRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for row in reader:
            out.append(ExperimentRecord(
                generator=row["generator"], n=int(row["n"]), eps=float(row["eps"]),
                algorithm=row["algorithm"], weight=float(row["weight"]), stretch=float(row["stretch"]),
                emst=float(row["emst"]), lightness=float(row["lightness"]),
                seconds=float(row["seconds"]), verified=row["verified"] == "True"))
        return out
