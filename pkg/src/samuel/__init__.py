"""
Samuel package: Hilbert-Samuel counting, dimension and the q > d threshold.
"""
from samuel.domain import (
    BlockCensus,
    CountingFunction,
    NoStabilizationError,
    SamuelError,
    SamuelReport,
    ThresholdCheck,
    ThresholdReport,
    encode_fraction,
)
from samuel.counting import (
    DEFAULT_COUNT_CAP,
    block_census,
    counting_function,
    dimension,
    fit_polynomial,
    quotient_count,
    quotient_shell_count,
)
from samuel.threshold import threshold_consistency

__all__ = [
    "BlockCensus",
    "CountingFunction",
    "NoStabilizationError",
    "SamuelError",
    "SamuelReport",
    "ThresholdCheck",
    "ThresholdReport",
    "encode_fraction",
    "DEFAULT_COUNT_CAP",
    "block_census",
    "counting_function",
    "dimension",
    "fit_polynomial",
    "quotient_count",
    "quotient_shell_count",
    "threshold_consistency",
]
