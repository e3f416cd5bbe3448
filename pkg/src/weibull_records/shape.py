"""Confidence intervals and tests for the Weibull shape parameter.

Two interval constructions:

* exact chi-square: U = 2 * shape * S is chi-square(2n), so dividing the
  chi-square quantiles by 2S gives an exact interval in closed form;
* the Wu-Tseng pivotal W(b) = sum r_i^b / ((n+1) (prod r_i)^(b/(n+1))),
  increasing in b with a parameter-free distribution; its percentiles have
  no tractable form and come from a Monte Carlo reference table, and the
  interval endpoints are the roots of W(b) = table percentile.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping

import numpy as np

from .distributions import ChiSquare
from .errors import BracketingError, ConfigurationError, NumericError, ParameterDomainError
from .records import RecordSample
from .rng import RngStream, as_stream
from .util import interpolated_percentile

__all__ = [
    "CiMethod",
    "Alternative",
    "ConfidenceInterval",
    "TestResult",
    "WStarTable",
    "exact_ci_shape",
    "exact_test_shape",
    "w_statistic",
    "wstar_table",
    "wu_ci_shape",
    "DEFAULT_WSTAR_PROBS",
    "DEFAULT_WSTAR_REPS",
]

DEFAULT_WSTAR_PROBS = (0.005, 0.01, 0.025, 0.05, 0.1, 0.9, 0.95, 0.975, 0.99, 0.995)
DEFAULT_WSTAR_REPS = 100_000

# log-space W values above this overflow float64 when exponentiated
_LOG_OVERFLOW = 709.0


class CiMethod(str, Enum):
    EXACT_CHI_SQUARE = "exact-chi-square"
    WU_TSENG = "wu-tseng"
    GENERALIZED_PIVOTAL = "generalized-pivotal"


class Alternative(str, Enum):
    ONE_SIDED_UPPER = "one-sided-upper"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    method: CiMethod

    def __post_init__(self):
        if not 0.0 < self.level < 1.0:
            raise ParameterDomainError(f"confidence level must be in (0, 1), got {self.level}")
        if not self.lower < self.upper:
            raise ParameterDomainError(f"interval requires lower < upper, got ({self.lower}, {self.upper})")

    def contains(self, value: float) -> bool:
        return self.lower < value < self.upper

    @property
    def length(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    reject: bool
    level: float
    alternative: Alternative


@dataclass(frozen=True)
class WStarTable:
    """Monte Carlo percentile table of the reference statistic W*.

    W* is W evaluated on unit-exponential records, whose distribution the
    pivotal shares for every (scale, shape).  All values are >= 1 because
    W is an arithmetic mean over a geometric mean.
    """

    n: int
    percentiles: Mapping[float, float]
    reps: int
    seed: int

    def percentile(self, p: float) -> float:
        for key, value in self.percentiles.items():
            if abs(key - p) < 1e-12:
                return value
        raise ConfigurationError(
            f"probability {p} not in W* table (available: {sorted(self.percentiles)})"
        )

    def to_json(self) -> str:
        probs = sorted(self.percentiles)
        return json.dumps(
            {
                "format": "wstar-table",
                "version": 1,
                "n": self.n,
                "reps": self.reps,
                "seed": self.seed,
                "probs": probs,
                "values": [self.percentiles[p] for p in probs],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "WStarTable":
        obj = json.loads(text)
        if obj.get("format") != "wstar-table" or obj.get("version") != 1:
            raise ConfigurationError("not a version-1 wstar-table JSON document")
        return cls(
            n=int(obj["n"]),
            percentiles=dict(zip((float(p) for p in obj["probs"]), (float(v) for v in obj["values"]))),
            reps=int(obj["reps"]),
            seed=int(obj["seed"]),
        )

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "WStarTable":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def exact_ci_shape(sample: RecordSample, level: float) -> ConfidenceInterval:
    """Exact interval for the shape parameter from chi-square(2n) quantiles.

    (q(gamma/2) / 2S, q(1 - gamma/2) / 2S) with gamma = 1 - level.
    """
    if not 0.0 < level < 1.0:
        raise ParameterDomainError(f"level must be in (0, 1), got {level}")
    gamma = 1.0 - level
    chi = ChiSquare(2 * sample.n)
    two_s = 2.0 * sample.log_ratio_sum
    return ConfidenceInterval(
        lower=chi.quantile(gamma / 2.0) / two_s,
        upper=chi.quantile(1.0 - gamma / 2.0) / two_s,
        level=level,
        method=CiMethod.EXACT_CHI_SQUARE,
    )


def exact_test_shape(
    sample: RecordSample,
    shape0: float,
    level: float = 0.05,
    alternative: Alternative = Alternative.TWO_SIDED,
) -> TestResult:
    """Exact chi-square test about the shape parameter.

    Statistic U0 = 2 * shape0 * S.  One-sided (H1: shape > shape0) rejects
    when U0 exceeds the upper chi-square(2n) quantile; two-sided rejects
    outside the central quantile pair.
    """
    if not shape0 > 0:
        raise ParameterDomainError(f"shape0 must be positive, got {shape0}")
    if not 0.0 < level < 1.0:
        raise ParameterDomainError(f"level must be in (0, 1), got {level}")
    alternative = Alternative(alternative)
    chi = ChiSquare(2 * sample.n)
    u0 = 2.0 * shape0 * sample.log_ratio_sum
    cdf = chi.cdf(u0)
    if alternative is Alternative.ONE_SIDED_UPPER:
        p = 1.0 - cdf
        reject = u0 > chi.quantile(1.0 - level)
    else:
        p = min(1.0, 2.0 * min(cdf, 1.0 - cdf))
        reject = u0 < chi.quantile(level / 2.0) or u0 > chi.quantile(1.0 - level / 2.0)
    return TestResult(statistic=u0, p_value=p, reject=reject, level=level, alternative=alternative)


def _log_w(log_values: np.ndarray, shape: float) -> float:
    """log W(shape) via log-sum-exp; safe where r_i^shape would overflow."""
    t = shape * log_values
    m = float(np.max(t))
    return (
        m
        + float(np.log(np.sum(np.exp(t - m))))
        - float(np.log(t.size))
        - shape * float(np.mean(log_values))
    )


def w_statistic(sample: RecordSample, shape: float) -> float:
    """W(shape) = sum r_i^shape / ((n+1) (prod r_i)^(shape/(n+1))).

    Strictly increasing in shape, >= 1 (arithmetic over geometric mean),
    invariant under rescaling the records.  Raises NumericError if the
    value itself overflows float64 even though the log-space evaluation
    is finite.
    """
    if not shape > 0:
        raise ParameterDomainError(f"shape must be positive, got {shape}")
    lw = _log_w(np.log(np.asarray(sample.values)), shape)
    if lw > _LOG_OVERFLOW:
        raise NumericError(f"W overflows float64 at shape={shape} (log W = {lw:.1f})")
    return float(np.exp(lw))


def wstar_table(
    n: int,
    probs=DEFAULT_WSTAR_PROBS,
    reps: int = DEFAULT_WSTAR_REPS,
    seed: int | RngStream = 0,
) -> WStarTable:
    """Simulate the W* reference distribution and tabulate its percentiles.

    Unit-exponential records are partial sums of unit exponentials, so one
    (reps, n+1) cumulative-sum array per table.  reps >= 10^4 recommended;
    the default 10^5 puts the tabulated 2.5%/97.5% points well inside the
    tolerance the real-data interval needs.
    """
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    if reps < 2:
        raise ParameterDomainError(f"reps must be >= 2, got {reps}")
    probs = tuple(float(p) for p in probs)
    for p in probs:
        if not 0.0 < p < 1.0:
            raise ParameterDomainError(f"table probability {p} outside (0, 1)")
    stream = as_stream(seed)
    gen = stream.generator
    values = np.empty(reps)
    # chunk to bound memory for very large tables
    chunk = 100_000
    done = 0
    while done < reps:
        block = min(chunk, reps - done)
        t = np.cumsum(gen.standard_exponential(size=(block, n + 1)), axis=1)
        values[done : done + block] = t.sum(axis=1) / (
            (n + 1) * np.exp(np.log(t).sum(axis=1) / (n + 1))
        )
        done += block
    values.sort()
    table = {p: interpolated_percentile(values, p) for p in probs}
    return WStarTable(n=n, percentiles=table, reps=reps, seed=stream.master_seed)


def _solve_w_equation(log_values: np.ndarray, target: float) -> float:
    """Smallest shape with W(shape) = target, by bisection on log shape.

    W(0+) = 1 <= target and W is increasing, so the initial bracket
    [1e-6, hi] with hi doubled from 1 until the sign changes (capped at
    1e3) always contains exactly one root when one exists.
    """
    log_target = float(np.log(target))
    lo = 1e-6
    if _log_w(log_values, lo) - log_target > 0:
        raise BracketingError(f"W({lo}) already exceeds target {target}")
    hi = 1.0
    while _log_w(log_values, hi) - log_target < 0:
        hi *= 2.0
        if hi > 1e3:
            raise BracketingError(f"no sign change for W(shape) = {target} below shape = 1e3")
    llo, lhi = np.log(lo), np.log(hi)
    while lhi - llo > 1e-12:
        mid = 0.5 * (llo + lhi)
        if _log_w(log_values, float(np.exp(mid))) - log_target < 0:
            llo = mid
        else:
            lhi = mid
    return float(np.exp(0.5 * (llo + lhi)))


def wu_ci_shape(sample: RecordSample, level: float, table: WStarTable) -> ConfidenceInterval:
    """Wu-Tseng interval: roots of W(shape) = W* percentiles.

    Lower endpoint from the gamma/2 percentile, upper from 1 - gamma/2;
    both equations are monotone so the roots are unique.
    """
    if not 0.0 < level < 1.0:
        raise ParameterDomainError(f"level must be in (0, 1), got {level}")
    if table.n != sample.n:
        raise ConfigurationError(f"W* table built for n={table.n}, sample has n={sample.n}")
    gamma = 1.0 - level
    log_values = np.log(np.asarray(sample.values))
    lower = _solve_w_equation(log_values, table.percentile(gamma / 2.0))
    upper = _solve_w_equation(log_values, table.percentile(1.0 - gamma / 2.0))
    return ConfidenceInterval(lower=lower, upper=upper, level=level, method=CiMethod.WU_TSENG)
