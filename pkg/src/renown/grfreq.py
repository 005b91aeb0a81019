"""Cumulative event-frequency curves and Gutenberg-Richter-style fits.

For a metric sample (say, news items per person over some months), the curve
F(x) = annualized count of people with value >= x falls off like a magnitude-
frequency law.  The three-parameter form fit here is

    f(x) = 1 / (a + x**nu / b),

which rolls off at small x (1/a caps the frequency) and decays like a power
law b * x**-nu at large x.  Fitting happens in log-log space, where both
regimes carry comparable weight across the decades the data spans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .data import DataError, MetricDataset, MetricKind

__all__ = [
    "FrequencyCurve",
    "GRFit",
    "cumulative_frequency",
    "eval_gr",
    "fit_gutenberg_richter",
    "frequency_curve",
]

# a = exp(la); this floor stands in for a = 0 (pure power-law rolloff absent).
_LOG_A_FLOOR = -30.0


@dataclass(frozen=True)
class FrequencyCurve:
    """Annualized cumulative frequencies: points are (x, f) with f the
    events-per-year count of samples >= x, strictly increasing in x and
    non-increasing in f."""

    points: tuple[tuple[float, float], ...]
    annualization_factor: float = 1.0

    def __post_init__(self):
        if not self.points:
            raise ValueError("curve must have at least one point")
        if self.annualization_factor <= 0:
            raise ValueError("annualization_factor must be positive")
        xs = np.array([p[0] for p in self.points])
        fs = np.array([p[1] for p in self.points])
        if np.any(xs <= 0) or np.any(fs <= 0):
            raise ValueError("curve points must be positive")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("x values must be strictly increasing")
        if np.any(np.diff(fs) > 0):
            raise ValueError("frequencies must be non-increasing in x")

    @property
    def x(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def f(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


@dataclass(frozen=True)
class GRFit:
    """Fitted rolloff a, scale b, exponent nu, and the RMS log-space residual."""

    a: float
    b: float
    nu: float
    residual: float

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("a must be >= 0")
        if self.b <= 0 or self.nu <= 0:
            raise ValueError("b and nu must be positive")
        if self.residual < 0:
            raise ValueError("residual must be >= 0")


def frequency_curve(values: Sequence[float], annualization_factor: float = 1.0) -> FrequencyCurve:
    """Build the annualized cumulative curve from raw positive sample values.

    At the smallest sample the curve reaches annualization_factor * n, since
    every sample counts there.
    """
    arr = np.asarray(values, dtype=float)
    arr = arr[arr > 0]
    if arr.size == 0:
        raise ValueError("no positive values to build a curve from")
    vals, counts = np.unique(arr, return_counts=True)
    at_least = counts[::-1].cumsum()[::-1]
    points = tuple(
        (float(v), float(c * annualization_factor)) for v, c in zip(vals, at_least)
    )
    return FrequencyCurve(points=points, annualization_factor=annualization_factor)


def cumulative_frequency(dataset: MetricDataset, kind: MetricKind) -> FrequencyCurve:
    """Annualized cumulative curve for one metric kind of a dataset, using the
    dataset's coverage and sampling metadata for the events-per-year factor."""
    values = list(dataset.values(kind).values())
    if not values:
        raise DataError(f"dataset {dataset.name} has no {kind.value} snapshots")
    return frequency_curve(values, dataset.annualization_factor)


def eval_gr(fit: GRFit, x) -> np.ndarray | float:
    """f(x) = 1 / (a + x**nu / b); scalar in, scalar out."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise ValueError("x must be positive")
    out = 1.0 / (fit.a + arr**fit.nu / fit.b)
    return float(out) if np.isscalar(x) else out


def fit_gutenberg_richter(curve: FrequencyCurve) -> GRFit:
    """Least-squares fit of log f(x) = -log(a + x**nu / b) to the curve.

    The objective is optimized over (log a, log b, nu) with Nelder-Mead from a
    small grid of starts (nu in {1, 1.5, 2, 3}, rolloff present or absent),
    since the surface has a flat valley when a is negligible.  Needs at least
    4 distinct points to constrain 3 parameters.
    """
    xs, fs = curve.x, curve.f
    if xs.size < 4:
        raise ValueError(f"need >= 4 distinct curve points, got {xs.size}")
    log_f = np.log(fs)

    def objective(params: np.ndarray) -> float:
        la, lb, nu = params
        if nu <= 0 or nu > 20 or la > 50 or abs(lb) > 80:
            return 1e12
        model = np.exp(la) + xs**nu / np.exp(lb)
        return float(np.sum((log_f + np.log(model)) ** 2))

    x_med = float(np.median(xs))
    f_med = float(np.median(fs))
    f_max = float(fs.max())
    best = None
    for nu0 in (1.0, 1.5, 2.0, 3.0):
        # b start from the power-law regime (f ~ b * x**-nu at the median point).
        lb0 = nu0 * np.log(x_med) + np.log(f_med)
        for la0 in (_LOG_A_FLOOR, np.log(1.0 / f_max)):
            res = minimize(
                objective,
                np.array([la0, lb0, nu0]),
                method="Nelder-Mead",
                options={"maxiter": 4000, "xatol": 1e-10, "fatol": 1e-12},
            )
            if best is None or res.fun < best.fun:
                best = res

    la, lb, nu = best.x
    a = float(np.exp(la)) if la > _LOG_A_FLOOR + 1 else 0.0
    return GRFit(
        a=a,
        b=float(np.exp(lb)),
        nu=float(nu),
        residual=float(np.sqrt(best.fun / xs.size)),
    )
