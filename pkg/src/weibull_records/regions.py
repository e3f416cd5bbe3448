"""Joint confidence regions for the Weibull (scale, shape) pair.

Both region families share one geometry: an interval for the shape crossed
with a shape-indexed band for the scale,

    r_n * m_lo^(1/shape) < scale < r_n * m_hi^(1/shape),

where the multipliers m = 2 / chi-square(2n+2) quantile come from the last
record's pivotal.  They differ in the shape interval:

* family "aj" (index j in 1..n) uses F-distribution quantiles of the ratio
  built from records j-1 and n, so only two records enter the shape bounds;
* region "b" uses the chi-square(2n) pivotal of the log-ratio sum, so all
  records enter.

Each marginal constraint is taken at confidence sqrt(level), which
multiplies out to the joint level by the independence of the two pivotals.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .distributions import ChiSquare, FDist
from .errors import ParameterDomainError
from .quadrature import adaptive_simpson
from .records import RecordSample

__all__ = [
    "JointRegion",
    "RegionArea",
    "region_b",
    "region_aj",
    "default_j_pair",
    "contains",
    "area",
    "boundary_polyline",
    "export_boundary_csv",
    "DEFAULT_AREA_TOLERANCE",
]

DEFAULT_AREA_TOLERANCE = 1e-4

# CSV header for boundary exports (consumed by external plotting)
BOUNDARY_CSV_HEADER = ("beta", "alpha_lower", "alpha_upper")


@dataclass(frozen=True)
class JointRegion:
    """A shape interval crossed with shape-indexed scale boundary curves.

    Open region: membership uses strict inequalities on all four
    boundaries.
    """

    shape_lower: float
    shape_upper: float
    multiplier_lower: float
    multiplier_upper: float
    last_record: float
    level: float
    method: str  # "b" or "aj"
    j: int | None = None

    def __post_init__(self):
        if not self.shape_lower < self.shape_upper:
            raise ParameterDomainError(
                f"shape interval requires lower < upper, got ({self.shape_lower}, {self.shape_upper})"
            )
        if not 0.0 < self.multiplier_lower < self.multiplier_upper:
            raise ParameterDomainError("multipliers must satisfy 0 < m_lo < m_hi")

    def scale_lower_at(self, shape):
        return self.last_record * self.multiplier_lower ** (1.0 / np.asarray(shape, dtype=float))

    def scale_upper_at(self, shape):
        return self.last_record * self.multiplier_upper ** (1.0 / np.asarray(shape, dtype=float))

    def contains(self, scale: float, shape: float) -> bool:
        if not (self.shape_lower < shape < self.shape_upper):
            return False
        return bool(self.scale_lower_at(shape) < scale < self.scale_upper_at(shape))


@dataclass(frozen=True)
class RegionArea:
    value: float
    abs_tolerance: float
    evaluations: int


def _split_levels(level: float) -> tuple[float, float]:
    """Quantile probabilities (1 -/+ sqrt(level)) / 2 for the two marginals."""
    if not 0.0 < level < 1.0:
        raise ParameterDomainError(f"level must be in (0, 1), got {level}")
    root = sqrt(level)
    return (1.0 - root) / 2.0, (1.0 + root) / 2.0


def _scale_band_multipliers(n: int, level: float) -> tuple[float, float]:
    p_lo, p_hi = _split_levels(level)
    chi = ChiSquare(2 * n + 2)
    return 2.0 / chi.quantile(p_hi), 2.0 / chi.quantile(p_lo)


def region_b(sample: RecordSample, level: float) -> JointRegion:
    """Joint region from the two independent chi-square pivotals.

    Shape bounds: chi-square(2n) quantiles at the split levels over 2S.
    Uses every record through S (unlike the "aj" family).
    """
    p_lo, p_hi = _split_levels(level)
    n = sample.n
    chi = ChiSquare(2 * n)
    two_s = 2.0 * sample.log_ratio_sum
    m_lo, m_hi = _scale_band_multipliers(n, level)
    return JointRegion(
        shape_lower=chi.quantile(p_lo) / two_s,
        shape_upper=chi.quantile(p_hi) / two_s,
        multiplier_lower=m_lo,
        multiplier_upper=m_hi,
        last_record=sample.last,
        level=level,
        method="b",
    )


def region_aj(sample: RecordSample, j: int, level: float) -> JointRegion:
    """Joint region with F-quantile shape bounds built from records j-1 and n.

    shape bound = log(((n-j+1)/j) k + 1) / log(r_n / r_{j-1}) with k the
    F(2n-2j+2, 2j) quantile at each split level.
    """
    n = sample.n
    if not 1 <= j <= n:
        raise ParameterDomainError(f"j must be in [1, {n}], got {j}")
    p_lo, p_hi = _split_levels(level)
    fdist = FDist(2 * n - 2 * j + 2, 2 * j)
    k1, k2 = fdist.quantile(p_lo), fdist.quantile(p_hi)
    ratio = (n - j + 1) / j
    denom = np.log(sample.last / sample.values[j - 1])
    m_lo, m_hi = _scale_band_multipliers(n, level)
    return JointRegion(
        shape_lower=float(np.log(ratio * k1 + 1.0) / denom),
        shape_upper=float(np.log(ratio * k2 + 1.0) / denom),
        multiplier_lower=m_lo,
        multiplier_upper=m_hi,
        last_record=sample.last,
        level=level,
        method="aj",
        j=j,
    )


def default_j_pair(n: int) -> tuple[int, int]:
    """The two region indices that tend to give the smallest areas.

    floor((n+1)/5) and its successor, clamped to the valid range [1, n].
    """
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    j0 = max(1, min(n, (n + 1) // 5))
    j1 = max(1, min(n, j0 + 1))
    return j0, j1


def contains(region: JointRegion, scale: float, shape: float) -> bool:
    """Strict membership of (scale, shape) in the open region."""
    return region.contains(scale, shape)


def area(
    region: JointRegion,
    abs_tolerance: float = DEFAULT_AREA_TOLERANCE,
    max_evals: int = 1_000_000,
) -> RegionArea:
    """Region area by adaptive Simpson quadrature over the shape interval.

    Integrand: r_n * (m_hi^(1/shape) - m_lo^(1/shape)), the width of the
    scale band at each shape.
    """
    if abs_tolerance <= 0:
        raise ParameterDomainError(f"abs_tolerance must be positive, got {abs_tolerance}")
    rn = region.last_record
    log_lo = np.log(region.multiplier_lower)
    log_hi = np.log(region.multiplier_upper)

    def width(shape: float) -> float:
        inv = 1.0 / shape
        return rn * (np.exp(log_hi * inv) - np.exp(log_lo * inv))

    value, evals = adaptive_simpson(
        width, region.shape_lower, region.shape_upper, abs_tolerance, max_evals
    )
    return RegionArea(value=float(value), abs_tolerance=abs_tolerance, evaluations=evals)


def boundary_polyline(region: JointRegion, points: int) -> np.ndarray:
    """(shape, scale_lower, scale_upper) rows on a geometric shape grid.

    Geometric spacing concentrates points at small shape values where the
    boundary curves vary fastest; endpoints are the exact region bounds.
    """
    if points < 2:
        raise ParameterDomainError(f"points must be >= 2, got {points}")
    grid = np.geomspace(region.shape_lower, region.shape_upper, points)
    grid[0] = region.shape_lower
    grid[-1] = region.shape_upper
    return np.column_stack((grid, region.scale_lower_at(grid), region.scale_upper_at(grid)))


def export_boundary_csv(region: JointRegion, points: int, path) -> None:
    """Write the boundary polyline as UTF-8 CSV with the documented header."""
    rows = boundary_polyline(region, points)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(BOUNDARY_CSV_HEADER)
        for shape, lo, hi in rows:
            writer.writerow([repr(float(shape)), repr(float(lo)), repr(float(hi))])
