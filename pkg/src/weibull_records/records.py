"""Record-value data model, simulators, likelihood and pivotal quantities.

An upper record is an observation strictly exceeding everything before it.
For n+1 records r_0 < ... < r_n from a Weibull(scale, shape) population the
sample enters every inference formula only through the last record r_n and
the log-ratio sum S = sum_i log(r_n / r_i).  The two pivotal quantities

    U = 2 * shape * S            ~ chi-square(2n)
    V = 2 * (r_n / scale)^shape  ~ chi-square(2n + 2)

are independent, which is what the exact intervals, the generalized scale
pivotal and the joint regions are built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    DataError,
    InsufficientRecordsError,
    ParameterDomainError,
)
from .rng import RngStream

__all__ = [
    "RecordSample",
    "SufficientStats",
    "MleEstimate",
    "extract_records",
    "simulate_records_direct",
    "simulate_records_naive",
    "log_joint_density",
    "mle",
    "pivotal_u",
    "pivotal_v",
]

DEFAULT_MAX_DRAWS = 1_000_000


def _check_positive(name: str, value: float) -> float:
    if not (value > 0 and np.isfinite(value)):
        raise ParameterDomainError(f"{name} must be a positive finite number, got {value}")
    return float(value)


@dataclass(frozen=True)
class RecordSample:
    """An ordered tuple of upper record values r_0 < r_1 < ... < r_n.

    Holds n+1 records; n >= 1 is enforced because every downstream method
    divides by the log-ratio sum, which is zero for a single record.
    """

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise InsufficientRecordsError(
                f"need at least 2 records (n >= 1), got {len(vals)}"
            )
        arr = np.asarray(vals)
        if not np.all(np.isfinite(arr)):
            raise DataError("record values must be finite")
        if arr[0] <= 0:
            raise DataError("record values must be strictly positive")
        if not np.all(np.diff(arr) > 0):
            raise DataError("record values must be strictly increasing")

    @property
    def n(self) -> int:
        """Index of the last record; the sample holds n+1 records."""
        return len(self.values) - 1

    @property
    def last(self) -> float:
        return self.values[-1]

    @property
    def log_ratio_sum(self) -> float:
        """S = sum_i log(r_n / r_i); strictly positive for n >= 1."""
        arr = np.asarray(self.values)
        return float(np.sum(np.log(arr[-1] / arr)))

    @property
    def log_sum(self) -> float:
        return float(np.sum(np.log(np.asarray(self.values))))

    def scaled(self, c: float) -> "RecordSample":
        """The sample with every record multiplied by c > 0."""
        _check_positive("scale factor", c)
        return RecordSample(tuple(c * v for v in self.values))


@dataclass(frozen=True)
class SufficientStats:
    """(r_n, S, sum log r_i) - everything inference needs from a sample."""

    last_record: float
    log_ratio_sum: float
    log_sum: float
    n: int


@dataclass(frozen=True)
class MleEstimate:
    """Closed-form maximum likelihood estimates for (shape, scale)."""

    shape: float
    scale: float


def sufficient_stats(sample: RecordSample) -> SufficientStats:
    return SufficientStats(
        last_record=sample.last,
        log_ratio_sum=sample.log_ratio_sum,
        log_sum=sample.log_sum,
        n=sample.n,
    )


def extract_records(raw: Sequence[float]) -> RecordSample:
    """Extract the upper records (running strict maxima) of a raw sequence.

    The first observation is always a record; ties are not records.  Raises
    if the stream yields fewer than two records or contains nonpositive or
    nonfinite values.
    """
    arr = np.asarray(list(raw), dtype=float)
    if arr.size == 0:
        raise DataError("raw sequence is empty")
    if not np.all(np.isfinite(arr)):
        raise DataError("raw sequence contains nonfinite values")
    if np.any(arr <= 0):
        raise DataError("raw sequence contains nonpositive values")
    records = [float(arr[0])]
    for x in arr[1:]:
        if x > records[-1]:
            records.append(float(x))
    if len(records) < 2:
        raise InsufficientRecordsError(
            f"found {len(records)} record(s); need at least 2 (n >= 1)"
        )
    return RecordSample(tuple(records))


def simulate_records_direct(scale: float, shape: float, n: int, rng: RngStream) -> RecordSample:
    """Simulate n+1 Weibull records through the record-time representation.

    Partial sums T_i of iid unit exponentials are the records of a unit
    exponential sequence, and r_i = scale * T_i^(1/shape) maps them to
    Weibull records.  O(n) draws instead of the exponentially many raw
    observations the naive simulator consumes.
    """
    _check_positive("scale", scale)
    _check_positive("shape", shape)
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    e = rng.generator.standard_exponential(size=n + 1)
    t = np.cumsum(e)
    values = scale * t ** (1.0 / shape)
    return RecordSample(tuple(float(v) for v in values))


def simulate_records_naive(
    scale: float,
    shape: float,
    n: int,
    rng: RngStream,
    max_draws: int = DEFAULT_MAX_DRAWS,
    return_raw: bool = False,
):
    """Simulate n+1 Weibull records by brute force.

    Streams iid Weibull draws and keeps the running strict maxima until
    n+1 records have appeared.  Record times grow exponentially with n, so
    a draw budget guards the loop; exceeding it raises BudgetExceededError.
    With ``return_raw`` the consumed raw stream (up to and including the
    final record) is returned alongside the sample.
    """
    _check_positive("scale", scale)
    _check_positive("shape", shape)
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    if max_draws <= 0:
        raise ParameterDomainError(f"max_draws must be positive, got {max_draws}")
    gen = rng.generator
    inv_shape = 1.0 / shape
    records: list[float] = []
    raw: list[float] = []
    current = 0.0
    drawn = 0
    chunk = 1024
    while len(records) < n + 1:
        if drawn >= max_draws:
            raise BudgetExceededError(
                f"exhausted {max_draws} draws with only {len(records)} of {n + 1} records"
            )
        block = min(chunk, max_draws - drawn)
        u = gen.random(size=block)
        xs = scale * (-np.log1p(-u)) ** inv_shape
        drawn += block
        # element i is a record iff it exceeds everything before it
        prev_max = np.maximum.accumulate(np.concatenate(([current], xs)))[:-1]
        rec_idx = np.nonzero(xs > prev_max)[0]
        needed = n + 1 - len(records)
        if rec_idx.size >= needed:
            stop = int(rec_idx[needed - 1])
            records.extend(float(x) for x in xs[rec_idx[:needed]])
            if return_raw:
                raw.extend(float(x) for x in xs[: stop + 1])
        else:
            records.extend(float(x) for x in xs[rec_idx])
            if return_raw:
                raw.extend(float(x) for x in xs)
            current = max(current, float(xs.max()))
        chunk = min(chunk * 2, 1 << 20)
    sample = RecordSample(tuple(records))
    if return_raw:
        return sample, raw
    return sample


def log_joint_density(sample: RecordSample, scale: float, shape: float) -> float:
    """Log joint density of the observed records at (scale, shape).

    (n+1) log shape - shape (n+1) log scale - (r_n/scale)^shape
        + (shape - 1) sum_i log r_i
    """
    _check_positive("scale", scale)
    _check_positive("shape", shape)
    n = sample.n
    return float(
        (n + 1) * np.log(shape)
        - shape * (n + 1) * np.log(scale)
        - (sample.last / scale) ** shape
        + (shape - 1.0) * sample.log_sum
    )


def mle(sample: RecordSample) -> MleEstimate:
    """Closed-form MLEs: shape = (n+1)/S, scale = r_n * (n+1)^(-1/shape)."""
    s = sample.log_ratio_sum
    n = sample.n
    shape_hat = (n + 1) / s
    scale_hat = sample.last * (n + 1) ** (-1.0 / shape_hat)
    return MleEstimate(shape=float(shape_hat), scale=float(scale_hat))


def pivotal_u(sample: RecordSample, shape: float) -> float:
    """U = 2 * shape * S; chi-square with 2n df at the true shape."""
    _check_positive("shape", shape)
    return 2.0 * shape * sample.log_ratio_sum


def pivotal_v(sample: RecordSample, scale: float, shape: float) -> float:
    """V = 2 * (r_n / scale)^shape; chi-square with 2n+2 df at the truth."""
    _check_positive("scale", scale)
    _check_positive("shape", shape)
    return float(2.0 * (sample.last / scale) ** shape)
