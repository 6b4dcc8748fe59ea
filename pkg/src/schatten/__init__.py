"""
Schatten package: shell spectra, partial sums, decay fits and verdicts.
"""
from schatten.domain import (
    MIN_FIT_SHELLS,
    ZERO_SINGULAR_VALUE,
    CompactnessVerdict,
    ConditionReport,
    DecayFit,
    FiniteRankTailError,
    InsufficientShellsError,
    SchattenError,
    SchattenOverflowError,
    ShellSum,
    ShellSumSeries,
    Verdict,
)
from schatten.spectra import ShellSpectra, schatten_partial, shell_singular_values
from schatten.fitting import (
    critical_exponent,
    default_window,
    estimate_critical_exponent,
    fit_decay,
    verdict,
)
from schatten.conditions import (
    CONDITIONS,
    ConditionEvaluator,
    StarChecker,
    StarStarChecker,
    StarStarSupChecker,
    check_condition,
)

__all__ = [
    "MIN_FIT_SHELLS",
    "ZERO_SINGULAR_VALUE",
    "CompactnessVerdict",
    "ConditionReport",
    "DecayFit",
    "FiniteRankTailError",
    "InsufficientShellsError",
    "SchattenError",
    "SchattenOverflowError",
    "ShellSum",
    "ShellSumSeries",
    "Verdict",
    "ShellSpectra",
    "schatten_partial",
    "shell_singular_values",
    "critical_exponent",
    "default_window",
    "estimate_critical_exponent",
    "fit_decay",
    "verdict",
    "CONDITIONS",
    "ConditionEvaluator",
    "StarChecker",
    "StarStarChecker",
    "StarStarSupChecker",
    "check_condition",
]
