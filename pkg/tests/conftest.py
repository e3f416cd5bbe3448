import numpy as np
import pytest

from weibull_records import RecordSample

# sulfur-dioxide October records from the worked real example
REAL_RECORDS = (26.0, 27.0, 40.0, 41.0)


@pytest.fixture
def real_sample() -> RecordSample:
    return RecordSample(REAL_RECORDS)


@pytest.fixture
def real_log_ratio_sum() -> float:
    r = np.asarray(REAL_RECORDS)
    return float(np.sum(np.log(r[-1] / r)))
