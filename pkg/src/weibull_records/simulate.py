"""Coverage / expected-length / expected-area simulation harness.

Three studies over a grid of (scale, shape, n) cells:

* table1 - coverage and expected length of the generalized scale interval;
* table2 - coverage and expected length of the exact chi-square and
  Wu-Tseng shape intervals on identical samples (paired design);
* table3 - coverage and expected area of the joint regions (region "b"
  and the two default "aj" indices for each n).

Every replication owns the substream (seed, table, cell, replication), so
reports are bitwise reproducible for a given config regardless of the
parallelism setting.  ``n`` everywhere is the last-record index: each
simulated sample holds n+1 records.
"""

from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from itertools import product
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import ConfigurationError
from .records import simulate_records_direct
from .regions import area as region_area
from .regions import default_j_pair, region_aj, region_b
from .rng import RngStream
from .scale import draw_pivotal_t, generalized_ci_scale
from .shape import exact_ci_shape, wstar_table, wu_ci_shape

__all__ = [
    "SimulationConfig",
    "SimulationCell",
    "SimulationReport",
    "run_table1",
    "run_table2",
    "run_table3",
    "write_report_csv",
    "report_to_dict",
    "resolve_budget",
    "METHOD_GENERALIZED",
    "METHOD_EXACT",
    "METHOD_WU",
    "METHOD_REGION_B",
    "METHOD_REGION_AJ",
]

logger = logging.getLogger(__name__)

METHOD_GENERALIZED = "generalized-pivotal"
METHOD_EXACT = "exact-chi-square"
METHOD_WU = "wu-tseng"
METHOD_REGION_B = "region-b"
METHOD_REGION_AJ = "region-aj"

DEFAULT_BUDGET = 1_000_000_000
BUDGET_ENV_VAR = "WEIBULL_RECORDS_BUDGET"

# substream namespaces; replication streams are (namespace, cell, rep)
_NS_TABLE1, _NS_TABLE2, _NS_TABLE3, _NS_WSTAR = 1, 2, 3, 4


def resolve_budget(budget: int | None) -> int:
    """Configured per-cell budget ceiling; env var overrides the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class SimulationConfig:
    """Grid and sizing for one simulation study.

    ``methods`` may be left empty to take each runner's default set.
    ``M`` is the inner Monte Carlo size (pivotal draws per replication,
    table1 only); ``wstar_reps`` sizes the shared per-n W* tables (table2
    only).
    """

    scales: tuple[float, ...] = (1.0,)
    shapes: tuple[float, ...] = (1.0,)
    ns: tuple[int, ...] = (3,)
    methods: tuple[str, ...] = ()
    reps: int = 2000
    level: float = 0.95
    M: int = 10_000
    seed: int = 0
    parallelism: int = 1
    wstar_reps: int = 100_000
    area_tolerance: float = 1e-2
    budget: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "scales", tuple(float(a) for a in self.scales))
        object.__setattr__(self, "shapes", tuple(float(b) for b in self.shapes))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "methods", tuple(str(m) for m in self.methods))
        if not self.scales or any(a <= 0 for a in self.scales):
            raise ConfigurationError("scales must be nonempty and positive")
        if not self.shapes or any(b <= 0 for b in self.shapes):
            raise ConfigurationError("shapes must be nonempty and positive")
        if not self.ns or any(n < 1 for n in self.ns):
            raise ConfigurationError("ns must be nonempty with every n >= 1")
        if self.reps < 100:
            raise ConfigurationError(f"reps must be >= 100, got {self.reps}")
        if not 0.0 < self.level < 1.0:
            raise ConfigurationError(f"level must be in (0, 1), got {self.level}")
        if self.M < 1000:
            raise ConfigurationError(f"M must be >= 1000, got {self.M}")
        if self.parallelism < 1:
            raise ConfigurationError(f"parallelism must be >= 1, got {self.parallelism}")
        if self.wstar_reps < 1000:
            raise ConfigurationError(f"wstar_reps must be >= 1000, got {self.wstar_reps}")
        if self.area_tolerance <= 0:
            raise ConfigurationError("area_tolerance must be positive")
        if self.seed < 0:
            raise ConfigurationError("seed must be nonnegative")

    @classmethod
    def from_mapping(cls, mapping) -> "SimulationConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(mapping) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**mapping)

    @classmethod
    def from_file(cls, path) -> "SimulationConfig":
        """Read a JSON object whose keys mirror the dataclass fields."""
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ConfigurationError("config file must hold a JSON object")
        return cls.from_mapping(obj)


@dataclass(frozen=True)
class SimulationCell:
    scale: float
    shape: float
    n: int
    method: str
    coverage: float
    coverage_se: float
    expected_measure: float
    measure_se: float
    reps: int


@dataclass(frozen=True)
class SimulationReport:
    cells: tuple[SimulationCell, ...]
    seed: int
    level: float
    M: int
    kind: str

    def cell(self, scale: float, shape: float, n: int, method: str) -> SimulationCell:
        for c in self.cells:
            if (c.scale, c.shape, c.n, c.method) == (scale, shape, n, method):
                return c
        raise KeyError(f"no cell ({scale}, {shape}, {n}, {method})")


def report_to_dict(report: SimulationReport) -> dict:
    return {
        "kind": report.kind,
        "seed": report.seed,
        "level": report.level,
        "M": report.M,
        "cells": [
            {
                "scale": c.scale,
                "shape": c.shape,
                "n": c.n,
                "method": c.method,
                "coverage": c.coverage,
                "coverage_se": c.coverage_se,
                "expected_measure": c.expected_measure,
                "measure_se": c.measure_se,
                "reps": c.reps,
            }
            for c in report.cells
        ],
    }


def write_report_csv(report: SimulationReport, path) -> None:
    """One row per cell; columns mirror SimulationCell."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["scale", "shape", "n", "method", "coverage", "coverage_se",
             "expected_measure", "measure_se", "reps"]
        )
        for c in report.cells:
            writer.writerow(
                [c.scale, c.shape, c.n, c.method, repr(c.coverage), repr(c.coverage_se),
                 repr(c.expected_measure), repr(c.measure_se), c.reps]
            )


def _mean_se(values: np.ndarray) -> tuple[float, float]:
    """Sample mean and SD/sqrt(reps)."""
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    return mean, se


def _chunk_bounds(reps: int, parallelism: int) -> list[tuple[int, int]]:
    workers = min(parallelism, reps)
    base, extra = divmod(reps, workers)
    bounds = []
    lo = 0
    for w in range(workers):
        hi = lo + base + (1 if w < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _run_chunked(worker: Callable, static_args: tuple, reps: int, parallelism: int):
    """Run ``worker(*static_args, lo, hi)`` over replication ranges.

    Results are concatenated in replication order, so the output is
    independent of how the ranges were split across processes.
    """
    bounds = _chunk_bounds(reps, parallelism)
    if len(bounds) == 1:
        parts = [worker(*static_args, 0, reps)]
    else:
        with ProcessPoolExecutor(max_workers=len(bounds)) as pool:
            futures = [pool.submit(worker, *static_args, lo, hi) for lo, hi in bounds]
            parts = [f.result() for f in futures]
    arrays = []
    for idx in range(len(parts[0])):
        arrays.append(np.concatenate([p[idx] for p in parts]))
    return tuple(arrays)


# ----------------------------------------------------------------- table 1


def _table1_chunk(seed, cell_index, scale, shape, n, M, level, lo, hi):
    covered = np.empty(hi - lo, dtype=bool)
    lengths = np.empty(hi - lo, dtype=float)
    base = RngStream(seed)
    for i, l in enumerate(range(lo, hi)):
        sub = base.substream(_NS_TABLE1, cell_index, l)
        sample = simulate_records_direct(scale, shape, n, sub)
        draws = draw_pivotal_t(sample, M=M, rng=sub)
        ci = generalized_ci_scale(draws, level)
        covered[i] = ci.contains(scale)
        lengths[i] = ci.length
    return covered, lengths


def run_table1(cfg: SimulationConfig, on_cell: Callable | None = None) -> SimulationReport:
    """Coverage and expected length of the generalized scale interval."""
    methods = cfg.methods or (METHOD_GENERALIZED,)
    if set(methods) != {METHOD_GENERALIZED}:
        raise ConfigurationError(f"table1 supports only {METHOD_GENERALIZED!r}, got {methods}")
    ceiling = resolve_budget(cfg.budget)
    if cfg.reps * cfg.M > ceiling:
        raise ConfigurationError(
            f"per-cell budget reps*M = {cfg.reps * cfg.M} exceeds ceiling {ceiling}"
        )
    cells = []
    for cell_index, (scale, shape, n) in enumerate(product(cfg.scales, cfg.shapes, cfg.ns)):
        covered, lengths = _run_chunked(
            _table1_chunk,
            (cfg.seed, cell_index, scale, shape, n, cfg.M, cfg.level),
            cfg.reps,
            cfg.parallelism,
        )
        cov, cov_se = _mean_se(covered.astype(float))
        mean_len, len_se = _mean_se(lengths)
        cell = SimulationCell(scale, shape, n, METHOD_GENERALIZED,
                              cov, cov_se, mean_len, len_se, cfg.reps)
        cells.append(cell)
        logger.info("table1 cell done: scale=%g shape=%g n=%d coverage=%.4f length=%.4f",
                    scale, shape, n, cov, mean_len)
        if on_cell:
            on_cell(cell)
    return SimulationReport(tuple(cells), cfg.seed, cfg.level, cfg.M, "table1")


# ----------------------------------------------------------------- table 2


def _table2_chunk(seed, cell_index, scale, shape, n, level, table, methods, lo, hi):
    m = len(methods)
    covered = np.empty((m, hi - lo), dtype=bool)
    lengths = np.empty((m, hi - lo), dtype=float)
    base = RngStream(seed)
    for i, l in enumerate(range(lo, hi)):
        sub = base.substream(_NS_TABLE2, cell_index, l)
        sample = simulate_records_direct(scale, shape, n, sub)
        for k, method in enumerate(methods):
            if method == METHOD_EXACT:
                ci = exact_ci_shape(sample, level)
            else:
                ci = wu_ci_shape(sample, level, table)
            covered[k, i] = ci.contains(shape)
            lengths[k, i] = ci.length
    return tuple(covered) + tuple(lengths)


def run_table2(cfg: SimulationConfig, on_cell: Callable | None = None) -> SimulationReport:
    """Paired comparison of the two shape-interval methods.

    Both methods see the identical simulated sample in each replication;
    one W* table per n (size cfg.wstar_reps) is shared by all cells at
    that n.
    """
    methods = cfg.methods or (METHOD_EXACT, METHOD_WU)
    if not set(methods) <= {METHOD_EXACT, METHOD_WU}:
        raise ConfigurationError(
            f"table2 methods must be among ({METHOD_EXACT!r}, {METHOD_WU!r}), got {methods}"
        )
    ceiling = resolve_budget(cfg.budget)
    if max(cfg.reps, cfg.wstar_reps) > ceiling:
        raise ConfigurationError(f"budget ceiling {ceiling} exceeded")
    gamma = 1.0 - cfg.level
    probs = (gamma / 2.0, 1.0 - gamma / 2.0)
    tables = {}
    if METHOD_WU in methods:
        for n in cfg.ns:
            tables[n] = wstar_table(
                n, probs=probs, reps=cfg.wstar_reps,
                seed=RngStream(cfg.seed).substream(_NS_WSTAR, n),
            )
    cells = []
    for cell_index, (scale, shape, n) in enumerate(product(cfg.scales, cfg.shapes, cfg.ns)):
        arrays = _run_chunked(
            _table2_chunk,
            (cfg.seed, cell_index, scale, shape, n, cfg.level, tables.get(n), methods),
            cfg.reps,
            cfg.parallelism,
        )
        m = len(methods)
        for k, method in enumerate(methods):
            cov, cov_se = _mean_se(arrays[k].astype(float))
            mean_len, len_se = _mean_se(arrays[m + k])
            cell = SimulationCell(scale, shape, n, method,
                                  cov, cov_se, mean_len, len_se, cfg.reps)
            cells.append(cell)
            logger.info("table2 cell done: scale=%g shape=%g n=%d %s coverage=%.4f length=%.4f",
                        scale, shape, n, method, cov, mean_len)
            if on_cell:
                on_cell(cell)
    return SimulationReport(tuple(cells), cfg.seed, cfg.level, cfg.M, "table2")


# ----------------------------------------------------------------- table 3


def _table3_chunk(seed, cell_index, scale, shape, n, level, specs, area_tol, lo, hi):
    m = len(specs)
    covered = np.empty((m, hi - lo), dtype=bool)
    areas = np.empty((m, hi - lo), dtype=float)
    base = RngStream(seed)
    for i, l in enumerate(range(lo, hi)):
        sub = base.substream(_NS_TABLE3, cell_index, l)
        sample = simulate_records_direct(scale, shape, n, sub)
        for k, (kind, j) in enumerate(specs):
            region = region_b(sample, level) if kind == "b" else region_aj(sample, j, level)
            covered[k, i] = region.contains(scale, shape)
            areas[k, i] = region_area(region, abs_tolerance=area_tol).value
    return tuple(covered) + tuple(areas)


def _table3_specs(methods: tuple[str, ...], n: int) -> list[tuple[str, int | None]]:
    specs: list[tuple[str, int | None]] = []
    for method in methods:
        if method == METHOD_REGION_B:
            specs.append(("b", None))
        else:
            for j in default_j_pair(n):
                if ("aj", j) not in specs:
                    specs.append(("aj", j))
    return specs


def run_table3(cfg: SimulationConfig, on_cell: Callable | None = None) -> SimulationReport:
    """Coverage and expected area of the joint regions.

    ``region-aj`` expands to the two default j indices for each n (for
    n=4 that is A1/A2, for n=14 A3/A4, matching floor((n+1)/5) and its
    successor).  Per-replication areas use the relaxed quadrature
    tolerance cfg.area_tolerance; averaging over replications washes out
    the per-replicate error.
    """
    methods = cfg.methods or (METHOD_REGION_B, METHOD_REGION_AJ)
    if not set(methods) <= {METHOD_REGION_B, METHOD_REGION_AJ}:
        raise ConfigurationError(
            f"table3 methods must be among ({METHOD_REGION_B!r}, {METHOD_REGION_AJ!r}), got {methods}"
        )
    ceiling = resolve_budget(cfg.budget)
    if cfg.reps > ceiling:
        raise ConfigurationError(f"budget ceiling {ceiling} exceeded")
    cells = []
    for cell_index, (scale, shape, n) in enumerate(product(cfg.scales, cfg.shapes, cfg.ns)):
        specs = _table3_specs(methods, n)
        arrays = _run_chunked(
            _table3_chunk,
            (cfg.seed, cell_index, scale, shape, n, cfg.level, specs, cfg.area_tolerance),
            cfg.reps,
            cfg.parallelism,
        )
        m = len(specs)
        for k, (kind, j) in enumerate(specs):
            label = "b" if kind == "b" else f"a{j}"
            cov, cov_se = _mean_se(arrays[k].astype(float))
            mean_area, area_se = _mean_se(arrays[m + k])
            cell = SimulationCell(scale, shape, n, label,
                                  cov, cov_se, mean_area, area_se, cfg.reps)
            cells.append(cell)
            logger.info("table3 cell done: scale=%g shape=%g n=%d %s coverage=%.4f area=%.4f",
                        scale, shape, n, label, cov, mean_area)
            if on_cell:
                on_cell(cell)
    return SimulationReport(tuple(cells), cfg.seed, cfg.level, cfg.M, "table3")
