import csv
import math

import numpy as np
import pytest

from weibull_records import (
    Alternative,
    CiMethod,
    ConfigurationError,
    ParameterDomainError,
    PivotalDrawCache,
    RecordSample,
    ResolutionError,
    RngStream,
    draw_pivotal_t,
    export_draws_csv,
    generalized_ci_scale,
    gpv_scale,
    gpv_test_properties,
    pivotal_t_values,
    simulate_records_direct,
)
from weibull_records.util import interpolated_percentile


def test_pivotal_transform_identity():
    # base (2/V) = 1 makes the draw equal the last record for any exponent
    assert pivotal_t_values(41.0, 0.9, u=2.0 * 0.9, v=2.0) == pytest.approx(41.0, rel=1e-15)
    u = np.array([1.0, 3.0, 10.0])
    out = pivotal_t_values(41.0, 0.9, u=u, v=np.full(3, 2.0))
    assert np.allclose(out, 41.0, rtol=1e-15)


def test_draws_reproducible(real_sample):
    d1 = draw_pivotal_t(real_sample, 2000, RngStream(5))
    d2 = draw_pivotal_t(real_sample, 2000, RngStream(5))
    assert np.array_equal(d1.draws, d2.draws)
    assert d1.seed == 5 and d1.M == 2000
    assert d1.sample_digest == d2.sample_digest


def test_draws_positive_finite(real_sample):
    d = draw_pivotal_t(real_sample, 50_000, RngStream(6))
    assert np.all(d.draws > 0) and np.all(np.isfinite(d.draws))


def test_minimum_draw_count(real_sample):
    with pytest.raises(ParameterDomainError):
        draw_pivotal_t(real_sample, 999, RngStream(1))


def _nudge_to_equal_stats(reference: RecordSample, first: float) -> RecordSample:
    """Build a different n=2 sample with bitwise-equal (r_n, S)."""
    rn = reference.last
    target = reference.log_ratio_sum
    l0 = math.log(rn / first)
    second = rn / math.exp(target - l0)
    for _ in range(200):
        cand = RecordSample((first, second, rn))
        if cand.log_ratio_sum == target:
            return cand
        second = math.nextafter(second, math.inf if cand.log_ratio_sum > target else -math.inf)
    raise AssertionError("could not match the log-ratio sum bitwise")


def test_draws_depend_only_on_last_record_and_log_ratio_sum():
    base = RecordSample((10.0, 20.0, 41.0))
    other = _nudge_to_equal_stats(base, first=12.0)
    assert other.values != base.values
    assert other.last == base.last and other.log_ratio_sum == base.log_ratio_sum
    d1 = draw_pivotal_t(base, 2000, RngStream(7))
    d2 = draw_pivotal_t(other, 2000, RngStream(7))
    assert np.array_equal(d1.draws, d2.draws)


def test_generalized_ci_real_data(real_sample):
    draws = draw_pivotal_t(real_sample, 10_000, RngStream(1))
    ci = generalized_ci_scale(draws, 0.95)
    assert ci.method is CiMethod.GENERALIZED_PIVOTAL
    # reported values from the worked example, 5% Monte Carlo tolerance
    assert ci.lower == pytest.approx(5.4869, rel=0.05)
    assert ci.upper == pytest.approx(39.9734, rel=0.05)


def test_generalized_ci_exact_scale_equivariance(real_sample):
    draws = draw_pivotal_t(real_sample, 5_000, RngStream(2))
    scaled_draws = draw_pivotal_t(real_sample.scaled(2.0), 5_000, RngStream(2))
    ci = generalized_ci_scale(draws, 0.95)
    scaled = generalized_ci_scale(scaled_draws, 0.95)
    assert scaled.lower == 2.0 * ci.lower
    assert scaled.upper == 2.0 * ci.upper


def test_generalized_ci_nested_levels(real_sample):
    draws = draw_pivotal_t(real_sample, 5_000, RngStream(3))
    inner = generalized_ci_scale(draws, 0.5)
    outer = generalized_ci_scale(draws, 0.95)
    assert outer.lower < inner.lower < inner.upper < outer.upper


def test_generalized_ci_resolution_guard(real_sample):
    draws = draw_pivotal_t(real_sample, 1000, RngStream(4))
    with pytest.raises(ResolutionError):
        generalized_ci_scale(draws, 0.9999)


def test_gpv_real_data(real_sample):
    draws = draw_pivotal_t(real_sample, 10_000, RngStream(1))
    res = gpv_scale(draws, 5.0, Alternative.ONE_SIDED_UPPER)
    # reported p-value from the worked example
    assert res.p_value == pytest.approx(0.0227, abs=0.006)
    assert res.mc_se == pytest.approx(math.sqrt(res.p_value * (1 - res.p_value) / 10_000), rel=1e-12)
    assert res.p_value < 0.05


def test_gpv_tiny_scale0(real_sample):
    draws = draw_pivotal_t(real_sample, 2000, RngStream(8))
    assert gpv_scale(draws, 1e-9).p_value == 0.0


def test_gpv_two_sided_at_median(real_sample):
    draws = draw_pivotal_t(real_sample, 2000, RngStream(9))
    median = interpolated_percentile(draws.draws, 0.5)
    res = gpv_scale(draws, median, Alternative.TWO_SIDED)
    assert res.p_value == 1.0


def test_gpv_scale0_domain(real_sample):
    draws = draw_pivotal_t(real_sample, 2000, RngStream(9))
    with pytest.raises(ParameterDomainError):
        gpv_scale(draws, 0.0)


def test_draw_interval_coverage_at_true_scale():
    # central 95% draw interval covers the true scale at the nominal rate
    scale, shape, n, reps = 1.0, 1.0, 7, 2000
    stream = RngStream(44)
    covered = 0
    for _ in range(reps):
        sample = simulate_records_direct(scale, shape, n, stream)
        ci = generalized_ci_scale(draw_pivotal_t(sample, 2000, stream), 0.95)
        covered += ci.contains(scale)
    assert covered / reps == pytest.approx(0.95, abs=0.01)


def test_gpv_size_at_null_boundary():
    report = gpv_test_properties(1.0, 1.0, 7, reps=2000, M=2000, rng=RngStream(45), level=0.05)
    cell = report.cells[0]
    assert cell.coverage == pytest.approx(0.05, abs=0.01)
    assert cell.reps == 2000


def test_gpv_power_grows_with_scale():
    # truth at twice the null value; shape 3 pins the scale well enough
    # for the n=14 test to reject most of the time
    power = gpv_test_properties(
        2.0, 3.0, 14, reps=300, M=2000, rng=RngStream(46), scale0=1.0, level=0.05
    ).cells[0].coverage
    size = gpv_test_properties(
        1.0, 3.0, 14, reps=300, M=2000, rng=RngStream(47), scale0=1.0, level=0.05
    ).cells[0].coverage
    assert power > 0.5
    assert power > size


def test_gpv_test_properties_configuration_errors():
    with pytest.raises(ConfigurationError):
        gpv_test_properties(1.0, 1.0, 3, reps=0, M=2000)
    with pytest.raises(ConfigurationError):
        gpv_test_properties(1.0, 1.0, 3, reps=100, M=2000, budget=1000)


def test_draw_cache_reuses_sets(real_sample):
    cache = PivotalDrawCache()
    d1 = cache.get(real_sample, 2000, 5)
    d2 = cache.get(real_sample, 2000, 5)
    assert d1 is d2
    d3 = cache.get(real_sample, 2000, 6)
    assert d3 is not d1


def test_export_draws_csv(tmp_path, real_sample):
    draws = draw_pivotal_t(real_sample, 1000, RngStream(5))
    path = tmp_path / "draws.csv"
    export_draws_csv(draws, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t"]
    values = np.array([float(r[0]) for r in rows[1:]])
    assert np.array_equal(values, draws.draws)
