"""Probability distributions used by the inference layer.

Chi-square, F, exponential, Weibull and gamma, each with density, cdf,
quantile and seeded sampling.  cdf/quantile are evaluated through the
regularized incomplete gamma/beta functions; sampling is inverse-cdf for
exponential/Weibull (one uniform per draw) and gamma-based for chi-square,
gamma and F.

Not a general special-function library: only the operations the record
inference needs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ParameterDomainError
from .rng import RngStream

__all__ = ["ChiSquare", "FDist", "Exponential", "Weibull", "Gamma"]


def _check_prob(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0.0) | (p >= 1.0)):
        raise ParameterDomainError("probability must lie strictly in (0, 1)")
    return p


def _scalar(x, scalar_in: bool):
    return float(x) if scalar_in else x


@dataclass(frozen=True)
class ChiSquare:
    """Chi-square distribution with ``df`` degrees of freedom."""

    df: int

    def __post_init__(self):
        if int(self.df) != self.df or self.df <= 0:
            raise ParameterDomainError(f"chi-square df must be a positive integer, got {self.df}")

    def pdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        k = self.df / 2.0
        out = np.where(
            x > 0,
            np.exp((k - 1) * np.log(np.where(x > 0, x, 1.0)) - x / 2.0 - k * np.log(2.0) - special.gammaln(k)),
            0.0,
        )
        return _scalar(out, scalar)

    def cdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0, special.gammainc(self.df / 2.0, np.maximum(x, 0.0) / 2.0), 0.0)
        return _scalar(out, scalar)

    def quantile(self, p):
        scalar = np.isscalar(p)
        p = _check_prob(p)
        return _scalar(2.0 * special.gammaincinv(self.df / 2.0, p), scalar)

    def sample(self, rng: RngStream, size=None):
        # gamma(shape df/2, scale 2)
        draws = 2.0 * rng.generator.standard_gamma(self.df / 2.0, size=size)
        return float(draws) if size is None else draws


@dataclass(frozen=True)
class FDist:
    """F distribution with ``df1`` and ``df2`` degrees of freedom."""

    df1: int
    df2: int

    def __post_init__(self):
        for d in (self.df1, self.df2):
            if int(d) != d or d <= 0:
                raise ParameterDomainError(f"F degrees of freedom must be positive integers, got ({self.df1}, {self.df2})")

    def pdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        a, b = self.df1 / 2.0, self.df2 / 2.0
        xs = np.where(x > 0, x, 1.0)
        log_pdf = (
            a * np.log(self.df1 / self.df2)
            + (a - 1.0) * np.log(xs)
            - (a + b) * np.log1p(self.df1 * xs / self.df2)
            - special.betaln(a, b)
        )
        out = np.where(x > 0, np.exp(log_pdf), 0.0)
        return _scalar(out, scalar)

    def cdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        a, b = self.df1 / 2.0, self.df2 / 2.0
        xx = np.maximum(x, 0.0)
        t = self.df1 * xx / (self.df1 * xx + self.df2)
        out = np.where(x > 0, special.betainc(a, b, t), 0.0)
        return _scalar(out, scalar)

    def quantile(self, p):
        scalar = np.isscalar(p)
        p = _check_prob(p)
        t = special.betaincinv(self.df1 / 2.0, self.df2 / 2.0, p)
        return _scalar(self.df2 * t / (self.df1 * (1.0 - t)), scalar)

    def sample(self, rng: RngStream, size=None):
        gen = rng.generator
        num = gen.standard_gamma(self.df1 / 2.0, size=size) / self.df1
        den = gen.standard_gamma(self.df2 / 2.0, size=size) / self.df2
        draws = num / den
        return float(draws) if size is None else draws


@dataclass(frozen=True)
class Exponential:
    """Exponential distribution with the given ``rate``."""

    rate: float

    def __post_init__(self):
        if not (self.rate > 0 and np.isfinite(self.rate)):
            raise ParameterDomainError(f"exponential rate must be positive, got {self.rate}")

    def pdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)
        return _scalar(out, scalar)

    def cdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)
        return _scalar(out, scalar)

    def quantile(self, p):
        scalar = np.isscalar(p)
        p = _check_prob(p)
        return _scalar(-np.log1p(-p) / self.rate, scalar)

    def sample(self, rng: RngStream, size=None):
        u = rng.generator.random(size=size)
        draws = -np.log1p(-u) / self.rate
        return float(draws) if size is None else draws


@dataclass(frozen=True)
class Weibull:
    """Weibull distribution with ``scale`` and ``shape`` parameters.

    cdf(x) = 1 - exp(-(x / scale)^shape) for x > 0.
    """

    scale: float
    shape: float

    def __post_init__(self):
        if not (self.scale > 0 and np.isfinite(self.scale)):
            raise ParameterDomainError(f"Weibull scale must be positive, got {self.scale}")
        if not (self.shape > 0 and np.isfinite(self.shape)):
            raise ParameterDomainError(f"Weibull shape must be positive, got {self.shape}")

    def pdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        xs = np.where(x > 0, x, 1.0) / self.scale
        out = np.where(
            x > 0,
            (self.shape / self.scale) * xs ** (self.shape - 1.0) * np.exp(-(xs ** self.shape)),
            0.0,
        )
        return _scalar(out, scalar)

    def cdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0, -np.expm1(-((np.maximum(x, 0.0) / self.scale) ** self.shape)), 0.0)
        return _scalar(out, scalar)

    def quantile(self, p):
        scalar = np.isscalar(p)
        p = _check_prob(p)
        return _scalar(self.scale * (-np.log1p(-p)) ** (1.0 / self.shape), scalar)

    def sample(self, rng: RngStream, size=None):
        u = rng.generator.random(size=size)
        draws = self.scale * (-np.log1p(-u)) ** (1.0 / self.shape)
        return float(draws) if size is None else draws


@dataclass(frozen=True)
class Gamma:
    """Gamma distribution with ``shape`` and ``scale`` parameters."""

    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and np.isfinite(self.shape)):
            raise ParameterDomainError(f"gamma shape must be positive, got {self.shape}")
        if not (self.scale > 0 and np.isfinite(self.scale)):
            raise ParameterDomainError(f"gamma scale must be positive, got {self.scale}")

    def pdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        k = self.shape
        xs = np.where(x > 0, x, 1.0) / self.scale
        out = np.where(
            x > 0,
            np.exp((k - 1) * np.log(xs) - xs - special.gammaln(k)) / self.scale,
            0.0,
        )
        return _scalar(out, scalar)

    def cdf(self, x):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0, special.gammainc(self.shape, np.maximum(x, 0.0) / self.scale), 0.0)
        return _scalar(out, scalar)

    def quantile(self, p):
        scalar = np.isscalar(p)
        p = _check_prob(p)
        return _scalar(self.scale * special.gammaincinv(self.shape, p), scalar)

    def sample(self, rng: RngStream, size=None):
        draws = self.scale * rng.generator.standard_gamma(self.shape, size=size)
        return float(draws) if size is None else draws
