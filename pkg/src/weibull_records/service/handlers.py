"""Transport-independent request handlers.

Each handler maps a request model to a response model by calling the core
package.  The FastAPI routes and the CLI both delegate here, which keeps
their outputs identical.
"""

from __future__ import annotations

from dataclasses import asdict

from .. import records as rec
from .. import regions as reg
from .. import scale as sc
from .. import shape as sh
from .. import simulate as sim
from . import schemas as sm

# shared across requests: one draw set serves the interval and any p-values
_draw_cache = sc.PivotalDrawCache()
# W* tables are expensive enough to keep per (n, reps, seed, probs-key)
_wstar_cache: dict[tuple, sh.WStarTable] = {}


def records_from_payload(payload: sm.RecordsPayload) -> rec.RecordSample:
    if payload.raw is not None:
        return rec.extract_records(payload.raw)
    return rec.RecordSample(tuple(payload.records))


def handle_extract(req: sm.ExtractRequest) -> sm.ExtractResponse:
    sample = rec.extract_records(req.raw)
    return sm.ExtractResponse(records=list(sample.values), count=len(sample.values))


def handle_fit(req: sm.RecordsPayload) -> sm.FitResponse:
    sample = records_from_payload(req)
    est = rec.mle(sample)
    return sm.FitResponse(
        shape=est.shape,
        scale=est.scale,
        n=sample.n,
        last_record=sample.last,
        log_ratio_sum=sample.log_ratio_sum,
    )


def _wstar_for(n: int, level: float, reps: int, seed: int) -> sh.WStarTable:
    gamma = 1.0 - level
    probs = (gamma / 2.0, 1.0 - gamma / 2.0)
    key = (n, reps, seed, probs)
    table = _wstar_cache.get(key)
    if table is None:
        table = sh.wstar_table(n, probs=probs, reps=reps, seed=seed)
        if len(_wstar_cache) > 32:
            _wstar_cache.pop(next(iter(_wstar_cache)))
        _wstar_cache[key] = table
    return table


def handle_shape_interval(req: sm.ShapeIntervalRequest) -> sm.IntervalResponse:
    sample = records_from_payload(req)
    if req.method == "exact":
        ci = sh.exact_ci_shape(sample, req.level)
    else:
        table = _wstar_for(sample.n, req.level, req.wstar_reps, req.seed)
        ci = sh.wu_ci_shape(sample, req.level, table)
    return sm.IntervalResponse(lower=ci.lower, upper=ci.upper, level=ci.level, method=ci.method.value)


def handle_shape_test(req: sm.ShapeTestRequest) -> sm.ShapeTestResponse:
    sample = records_from_payload(req)
    result = sh.exact_test_shape(sample, req.shape0, req.level, sh.Alternative(req.alternative))
    return sm.ShapeTestResponse(
        statistic=result.statistic,
        p_value=result.p_value,
        reject=result.reject,
        level=result.level,
        alternative=result.alternative.value,
    )


def handle_scale_interval(req: sm.ScaleIntervalRequest) -> sm.IntervalResponse:
    sample = records_from_payload(req)
    draws = _draw_cache.get(sample, req.draws, req.seed)
    ci = sc.generalized_ci_scale(draws, req.level)
    return sm.IntervalResponse(lower=ci.lower, upper=ci.upper, level=ci.level, method=ci.method.value)


def handle_scale_test(req: sm.ScaleTestRequest) -> sm.ScaleTestResponse:
    sample = records_from_payload(req)
    draws = _draw_cache.get(sample, req.draws, req.seed)
    result = sc.gpv_scale(draws, req.scale0, sh.Alternative(req.alternative))
    return sm.ScaleTestResponse(
        p_value=result.p_value,
        mc_se=result.mc_se,
        scale0=result.scale0,
        alternative=result.alternative.value,
        draws=result.M,
        seed=req.seed,
    )


def _build_region(req: sm.RegionRequest) -> reg.JointRegion:
    sample = records_from_payload(req)
    if req.method == "b":
        return reg.region_b(sample, req.level)
    j = req.j if req.j is not None else reg.default_j_pair(sample.n)[0]
    return reg.region_aj(sample, j, req.level)


def _region_response(region: reg.JointRegion) -> sm.RegionResponse:
    return sm.RegionResponse(
        method=region.method,
        j=region.j,
        level=region.level,
        shape_lower=region.shape_lower,
        shape_upper=region.shape_upper,
        multiplier_lower=region.multiplier_lower,
        multiplier_upper=region.multiplier_upper,
        last_record=region.last_record,
    )


def handle_region(req: sm.RegionRequest) -> sm.RegionResponse:
    return _region_response(_build_region(req))


def handle_area(req: sm.AreaRequest) -> sm.AreaResponse:
    region = _build_region(req)
    result = reg.area(region, abs_tolerance=req.tolerance)
    return sm.AreaResponse(
        area=result.value,
        abs_tolerance=result.abs_tolerance,
        evaluations=result.evaluations,
        region=_region_response(region),
    )


def handle_boundary(req: sm.BoundaryRequest) -> sm.BoundaryResponse:
    region = _build_region(req)
    rows = reg.boundary_polyline(region, req.points)
    return sm.BoundaryResponse(
        region=_region_response(region),
        rows=[
            sm.BoundaryRow(shape=float(s), scale_lower=float(lo), scale_upper=float(hi))
            for s, lo, hi in rows
        ],
    )


_RUNNERS = {1: sim.run_table1, 2: sim.run_table2, 3: sim.run_table3}


def handle_simulate(req: sm.SimulateRequest, on_cell=None) -> sm.SimulationResponse:
    cfg = sim.SimulationConfig.from_mapping(req.config.model_dump())
    report = _RUNNERS[req.table](cfg, on_cell=on_cell)
    return sm.SimulationResponse(
        kind=report.kind,
        seed=report.seed,
        level=report.level,
        M=report.M,
        cells=[sm.SimulationCellModel(**asdict(cell)) for cell in report.cells],
    )
