"""Inference on Weibull scale and shape parameters from upper record values.

Point estimation, exact and generalized confidence intervals, hypothesis
tests, joint confidence regions and a reproducible simulation harness, all
driven by the two independent chi-square pivotals of the record sample.
Also ships a FastAPI service (``weibull_records.service``) and a CLI
(``weibull-records``).
"""

from .distributions import ChiSquare, Exponential, FDist, Gamma, Weibull
from .errors import (
    BracketingError,
    BudgetExceededError,
    ConfigurationError,
    DataError,
    InsufficientRecordsError,
    IntegrationError,
    NumericError,
    ParameterDomainError,
    ResolutionError,
    WeibullRecordsError,
)
from .records import (
    MleEstimate,
    RecordSample,
    SufficientStats,
    extract_records,
    log_joint_density,
    mle,
    pivotal_u,
    pivotal_v,
    simulate_records_direct,
    simulate_records_naive,
    sufficient_stats,
)
from .regions import (
    JointRegion,
    RegionArea,
    area,
    boundary_polyline,
    contains,
    default_j_pair,
    export_boundary_csv,
    region_aj,
    region_b,
)
from .rng import RngStream
from .scale import (
    GpvResult,
    PivotalDrawCache,
    PivotalDrawSet,
    draw_pivotal_t,
    export_draws_csv,
    generalized_ci_scale,
    gpv_scale,
    gpv_test_properties,
    pivotal_t_values,
)
from .shape import (
    Alternative,
    CiMethod,
    ConfidenceInterval,
    TestResult,
    WStarTable,
    exact_ci_shape,
    exact_test_shape,
    w_statistic,
    wstar_table,
    wu_ci_shape,
)
from .simulate import (
    SimulationCell,
    SimulationConfig,
    SimulationReport,
    report_to_dict,
    run_table1,
    run_table2,
    run_table3,
    write_report_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ChiSquare", "FDist", "Exponential", "Weibull", "Gamma", "RngStream",
    "RecordSample", "SufficientStats", "MleEstimate", "extract_records",
    "simulate_records_direct", "simulate_records_naive", "log_joint_density",
    "mle", "pivotal_u", "pivotal_v", "sufficient_stats",
    "CiMethod", "Alternative", "ConfidenceInterval", "TestResult", "WStarTable",
    "exact_ci_shape", "exact_test_shape", "w_statistic", "wstar_table", "wu_ci_shape",
    "PivotalDrawSet", "GpvResult", "PivotalDrawCache", "pivotal_t_values",
    "draw_pivotal_t", "generalized_ci_scale", "gpv_scale", "gpv_test_properties",
    "export_draws_csv",
    "JointRegion", "RegionArea", "region_b", "region_aj", "default_j_pair",
    "contains", "area", "boundary_polyline", "export_boundary_csv",
    "SimulationConfig", "SimulationCell", "SimulationReport",
    "run_table1", "run_table2", "run_table3", "write_report_csv", "report_to_dict",
    "WeibullRecordsError", "ParameterDomainError", "DataError",
    "InsufficientRecordsError", "BudgetExceededError", "BracketingError",
    "ResolutionError", "IntegrationError", "NumericError", "ConfigurationError",
]
