"""Small shared numeric helpers."""

from __future__ import annotations

import hashlib

import numpy as np


def interpolated_percentile(values: np.ndarray, p: float) -> float:
    """Empirical percentile with linear interpolation between order statistics.

    This is the single percentile convention used everywhere in the package
    (Monte Carlo reference tables, pivotal draw sets): for m sorted values
    the percentile at probability p sits at fractional rank p*(m-1).
    """
    v = np.sort(np.asarray(values, dtype=float))
    m = v.size
    if m == 0:
        raise ValueError("percentile of empty array")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    h = p * (m - 1)
    i = int(np.floor(h))
    if i >= m - 1:
        return float(v[-1])
    frac = h - i
    return float(v[i] + frac * (v[i + 1] - v[i]))


def sample_digest(values) -> str:
    """Stable hex digest of a float sequence (identifies a record sample)."""
    arr = np.asarray(values, dtype=np.float64)
    return hashlib.sha256(arr.tobytes()).hexdigest()[:16]
