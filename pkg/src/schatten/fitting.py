"""
Log-log decay fits and extrapolated compactness / Schatten verdicts.

Verdicts are extrapolations from finitely many shells: a shell sum that
decays like ``n^s`` is summable exactly when ``s < -1``, and a compact
operator has shell norms tending to zero.
"""
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import linregress

from config.settings import DEFAULT_MARGIN, DEFAULT_MAX_DEGREE
from schatten.domain import (
    MIN_FIT_SHELLS,
    CompactnessVerdict,
    DecayFit,
    FiniteRankTailError,
    InsufficientShellsError,
    SchattenError,
    ShellSumSeries,
    Verdict,
)
from schatten.spectra import ShellSpectra
from shiftops import LatticeOperator
from utils.logger import get_logger

logger = get_logger(__name__)

Window = Tuple[int, int]


def default_window(max_degree: int) -> Window:
    """The tail window ``[max(5, N // 6), N]``."""
    return (max(MIN_FIT_SHELLS, max_degree // 6), max_degree)


def _check_window(window: Window, max_degree: int) -> Window:
    lo, hi = int(window[0]), int(window[1])
    if lo < 0 or hi < lo:
        raise SchattenError(f"invalid window [{lo}, {hi}]")
    if hi > max_degree:
        raise SchattenError(f"window [{lo}, {hi}] exceeds computed shells 0..{max_degree}")
    return lo, hi


def _fit_points(degrees: Sequence[int], values: Sequence[float], window: Window) -> DecayFit:
    lo, hi = window
    inside = [(n, v) for n, v in zip(degrees, values) if lo <= n <= hi]
    usable = [(n, v) for n, v in inside if n >= 1 and v > 0]
    if inside and not usable and all(v == 0 for _, v in inside):
        raise FiniteRankTailError(window)
    if len(usable) < MIN_FIT_SHELLS:
        raise InsufficientShellsError(
            f"window [{lo}, {hi}] has {len(usable)} positive shells, need {MIN_FIT_SHELLS}"
        )
    x = np.log([n for n, _ in usable])
    y = np.log([v for _, v in usable])
    result = linregress(x, y)
    return DecayFit(
        window=(lo, hi),
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=float(result.rvalue ** 2),
        used_shells=len(usable),
    )


def fit_decay(series: ShellSumSeries, window: Optional[Window] = None) -> DecayFit:
    """
    Fit ``log shellsum = intercept + slope * log n`` over a window.

    Args:
        series: Shell-sum series
        window: Inclusive ``(lo, hi)``; defaults to the tail window of the series

    Returns:
        DecayFit

    Raises:
        FiniteRankTailError: Every shell in the window vanishes
        InsufficientShellsError: Fewer than five positive shells
    """
    window = _check_window(window or default_window(series.max_degree), series.max_degree)
    fit = _fit_points(series.degrees(), series.sums(), window)
    logger.debug(f"p={series.p} window {window}: slope {fit.slope:.4f}, r2 {fit.r_squared:.4f}")
    return fit


def critical_exponent(fits: Sequence[Tuple[float, DecayFit]]) -> float:
    """
    Order where the extrapolated shell-sum slope crosses -1.

    Fits ``slope(p) = a - b p`` across the given orders and returns ``(a + 1) / b``.
    """
    if len(fits) < 3:
        raise SchattenError("critical exponent needs fits at three or more orders")
    ps = np.array([p for p, _ in fits], dtype=float)
    slopes = np.array([f.slope for _, f in fits], dtype=float)
    line = linregress(ps, slopes)
    b = -float(line.slope)
    if b <= 0:
        raise SchattenError("shell-sum slopes do not decrease with the order")
    return (float(line.intercept) + 1.0) / b


def estimate_critical_exponent(
    source: Union[LatticeOperator, ShellSpectra],
    ps: Sequence[float],
    window: Optional[Window] = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
    threads: int = 1,
) -> float:
    """
    Estimate the Schatten threshold ``p*`` of an operator.

    Args:
        source: Operator, or precomputed spectra
        ps: Three or more orders
        window: Fit window
        max_degree: Last shell when spectra must be computed
        threads: Worker threads when spectra must be computed

    Returns:
        Estimated p*
    """
    spectra = source if isinstance(source, ShellSpectra) else ShellSpectra(source, max_degree, threads)
    fits = [(float(p), fit_decay(spectra.series(p), window)) for p in ps]
    return critical_exponent(fits)


def _schatten_from_slope(slope: float, margin: float) -> Verdict:
    if slope < -1.0 - margin:
        return Verdict.CONVERGED
    if slope >= -1.0 + margin:
        return Verdict.DIVERGED
    return Verdict.INCONCLUSIVE


def verdict(
    op: Union[LatticeOperator, ShellSpectra],
    p: float,
    max_degree: int = DEFAULT_MAX_DEGREE,
    margin: float = DEFAULT_MARGIN,
    window: Optional[Window] = None,
    threads: int = 1,
) -> CompactnessVerdict:
    """
    Compactness and Schatten-class verdict for one operator.

    Compactness: the shell operator norms must decay with slope below
    ``-margin``. Schatten: the shell-sum slope is compared with -1; inside
    ``[-1 - margin, -1 + margin)`` the verdict is inconclusive. A
    non-compact operator is diverged at every order.

    Args:
        op: Operator, or spectra already computed for it
        p: Schatten order (p > 0)
        max_degree: Last shell
        margin: Half-width of the inconclusive band
        window: Fit window, defaults to ``[max(5, N // 6), N]``
        threads: Worker threads for shell evaluation

    Returns:
        CompactnessVerdict
    """
    if isinstance(op, ShellSpectra):
        spectra = op
        max_degree = spectra.max_degree
    else:
        spectra = ShellSpectra(op, max_degree, threads)
    window = _check_window(window or default_window(max_degree), max_degree)
    series = spectra.series(p)
    notes: List[str] = []
    described = spectra.op.describe()

    try:
        norm_fit = _fit_points(range(max_degree + 1), spectra.shell_norms().tolist(), window)
    except FiniteRankTailError:
        notes.append("finite-rank tail")
        logger.info(f"{spectra.op.label}: finite-rank tail in window {window}")
        return CompactnessVerdict(
            verdict=Verdict.CONVERGED,
            p=float(p),
            margin=margin,
            max_degree=max_degree,
            compactness=Verdict.CONVERGED,
            schatten=Verdict.CONVERGED,
            partial_sum=series.partial,
            notes=notes,
            operator=described,
        )

    compactness = Verdict.CONVERGED if norm_fit.slope < -margin else Verdict.DIVERGED
    sum_fit = fit_decay(series, window)
    schatten = _schatten_from_slope(sum_fit.slope, margin)
    try:
        fits = [(float(p), sum_fit)] + [
            (float(p) + step, fit_decay(spectra.series(p + step), window)) for step in (1.0, 2.0)
        ]
        sum_fit = replace(sum_fit, p_star=critical_exponent(fits))
    except SchattenError as e:
        notes.append(f"no critical exponent: {e}")

    if compactness is Verdict.DIVERGED:
        overall = Verdict.DIVERGED
        notes.append("shell norms do not decay")
    else:
        overall = schatten

    if overall is Verdict.INCONCLUSIVE:
        logger.warning(
            f"{spectra.op.label}: slope {sum_fit.slope:.4f} within margin {margin} of -1 at p={p}"
        )
    logger.info(f"{spectra.op.label}: p={p} slope {sum_fit.slope:.4f} -> {overall.value}")

    return CompactnessVerdict(
        verdict=overall,
        p=float(p),
        margin=margin,
        max_degree=max_degree,
        compactness=compactness,
        schatten=schatten,
        compactness_fit=norm_fit,
        schatten_fit=sum_fit,
        partial_sum=series.partial,
        notes=notes,
        operator=described,
    )
