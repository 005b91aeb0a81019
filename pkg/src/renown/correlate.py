"""Log-log correlation and regression between fame measures.

Fame metrics span decades, so association is measured between logarithms:
Pearson r of (ln x, ln y) plus the least-squares slope of ln y on ln x, whose
value is the effective power-law exponent relating the two measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = ["LogLogFit", "loglog_fit"]


@dataclass(frozen=True)
class LogLogFit:
    """Pearson r and OLS line for ln y on ln x.

    dropped_nonpositive counts input pairs excluded because either coordinate
    was <= 0 (logs undefined); n is the number of pairs actually used.
    """

    r: float
    slope: float
    slope_se: float
    intercept: float
    n: int
    dropped_nonpositive: int

    def __post_init__(self):
        if not -1.0 - 1e-12 <= self.r <= 1.0 + 1e-12:
            raise ValueError(f"r must lie in [-1, 1], got {self.r}")
        if self.n < 3:
            raise ValueError("fit needs at least 3 points")
        if self.slope_se < 0:
            raise ValueError("slope_se must be >= 0")


def loglog_fit(pairs: Iterable[tuple[float, float]]) -> LogLogFit:
    """Correlate two positive measures on log scales.

    Pairs with a non-positive coordinate are dropped (and counted); at least
    3 usable pairs are required, and ln x must not be constant.
    """
    data = np.asarray(list(pairs), dtype=float)
    if data.ndim != 2 or (data.size and data.shape[1] != 2):
        raise ValueError("pairs must be (x, y) tuples")
    usable = data[(data[:, 0] > 0) & (data[:, 1] > 0)] if data.size else data
    dropped = len(data) - len(usable)
    n = len(usable)
    if n < 3:
        raise ValueError(f"need at least 3 positive pairs, got {n}")

    lx = np.log(usable[:, 0])
    ly = np.log(usable[:, 1])
    dx = lx - lx.mean()
    dy = ly - ly.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0:
        raise ValueError("ln x is constant; slope is undefined")
    sxy = float(dx @ dy)

    slope = sxy / sxx
    intercept = float(ly.mean() - slope * lx.mean())
    r = sxy / np.sqrt(sxx * syy) if syy > 0 else 0.0
    ss_resid = syy - slope * sxy
    # Guard tiny negative residuals from cancellation on exact fits.
    ss_resid = max(ss_resid, 0.0)
    slope_se = float(np.sqrt(ss_resid / (n - 2) / sxx)) if n > 2 else float("nan")
    return LogLogFit(
        r=float(r),
        slope=float(slope),
        slope_se=slope_se,
        intercept=intercept,
        n=n,
        dropped_nonpositive=dropped,
    )
