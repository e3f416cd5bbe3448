"""Pydantic request/response models for the HTTP service.

The CLI reuses these models for its ``--json`` output, so both transports
emit identical documents.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

DEFAULT_SEED = 2026


class RecordsPayload(BaseModel):
    """Input data: either already-extracted records or a raw sequence.

    ``records`` must be strictly increasing positive values; ``raw`` is an
    arbitrary positive sequence routed through record extraction.
    """

    records: Optional[list[float]] = None
    raw: Optional[list[float]] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.records is None) == (self.raw is None):
            raise ValueError("provide exactly one of 'records' or 'raw'")
        return self


class ExtractRequest(BaseModel):
    raw: list[float]


class ExtractResponse(BaseModel):
    records: list[float]
    count: int


class FitResponse(BaseModel):
    shape: float
    scale: float
    n: int
    last_record: float
    log_ratio_sum: float


class ShapeIntervalRequest(RecordsPayload):
    level: float = 0.95
    method: Literal["exact", "wu"] = "exact"
    wstar_reps: int = Field(default=100_000, ge=1000)
    seed: int = Field(default=DEFAULT_SEED, ge=0)


class IntervalResponse(BaseModel):
    lower: float
    upper: float
    level: float
    method: str


class ShapeTestRequest(RecordsPayload):
    shape0: float = Field(gt=0)
    level: float = 0.05
    alternative: Literal["one-sided-upper", "two-sided"] = "two-sided"


class ShapeTestResponse(BaseModel):
    statistic: float
    p_value: float
    reject: bool
    level: float
    alternative: str


class ScaleIntervalRequest(RecordsPayload):
    level: float = 0.95
    draws: int = Field(default=10_000, ge=1000, description="Monte Carlo size M")
    seed: int = Field(default=DEFAULT_SEED, ge=0)


class ScaleTestRequest(RecordsPayload):
    scale0: float = Field(gt=0)
    alternative: Literal["one-sided-upper", "two-sided"] = "one-sided-upper"
    draws: int = Field(default=10_000, ge=1000)
    seed: int = Field(default=DEFAULT_SEED, ge=0)


class ScaleTestResponse(BaseModel):
    p_value: float
    mc_se: float
    scale0: float
    alternative: str
    draws: int
    seed: int


class RegionRequest(RecordsPayload):
    method: Literal["b", "aj"] = "b"
    j: Optional[int] = Field(default=None, ge=1)
    level: float = 0.95


class RegionResponse(BaseModel):
    method: str
    j: Optional[int]
    level: float
    shape_lower: float
    shape_upper: float
    multiplier_lower: float
    multiplier_upper: float
    last_record: float


class AreaRequest(RegionRequest):
    tolerance: float = Field(default=1e-4, gt=0)


class AreaResponse(BaseModel):
    area: float
    abs_tolerance: float
    evaluations: int
    region: RegionResponse


class BoundaryRequest(RegionRequest):
    points: int = Field(default=200, ge=2)


class BoundaryRow(BaseModel):
    shape: float
    scale_lower: float
    scale_upper: float


class BoundaryResponse(BaseModel):
    region: RegionResponse
    rows: list[BoundaryRow]


class SimulationConfigModel(BaseModel):
    scales: list[float] = [1.0]
    shapes: list[float] = [1.0]
    ns: list[int] = [3]
    methods: list[str] = []
    reps: int = 2000
    level: float = 0.95
    M: int = 10_000
    seed: int = DEFAULT_SEED
    parallelism: int = 1
    wstar_reps: int = 100_000
    area_tolerance: float = 1e-2
    budget: Optional[int] = None


class SimulateRequest(BaseModel):
    table: Literal[1, 2, 3]
    config: SimulationConfigModel = SimulationConfigModel()


class SimulationCellModel(BaseModel):
    scale: float
    shape: float
    n: int
    method: str
    coverage: float
    coverage_se: float
    expected_measure: float
    measure_se: float
    reps: int


class SimulationResponse(BaseModel):
    kind: str
    seed: int
    level: float
    M: int
    cells: list[SimulationCellModel]


class HealthResponse(BaseModel):
    status: str
    version: str
