"""Same-day and near-day death coincidence probabilities.

Generalizes the birthday problem: given N deaths spread uniformly over a
year, what is the chance that some k of them fall within a window of
window_days of each other?  The classic pair/same-day case has a closed form;
everything else is estimated by vectorized Monte Carlo.

The Monte Carlo uses common random numbers: trial draws are laid out so that
the first N rows of the (N+1)-death draw are exactly the N-death draw, and
the same day matrix serves every (window, multiplicity) query.  Estimated
probabilities are therefore exactly monotone in N, in the window, and from
k=2 to k=3, which downstream threshold searches rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CoincidenceResult",
    "CoincidenceSpec",
    "coincidence_probability",
    "min_deaths_for",
    "pair_same_day_exact",
]

_BATCH = 1 << 16


@dataclass(frozen=True)
class CoincidenceSpec:
    """One coincidence query.

    topology "circular" joins Dec 31 to Jan 1 when measuring day gaps (the
    steady-state view of an ongoing process); "linear" treats the year as a
    segment with ends.  Same-day queries (window_days=0) are identical under
    both.
    """

    n_deaths: int
    window_days: int = 0
    multiplicity: int = 2
    year_days: int = 365
    topology: str = "circular"
    trials: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if self.n_deaths < 1:
            raise ValueError("n_deaths must be >= 1")
        if self.year_days < 2:
            raise ValueError("year_days must be >= 2")
        if not 0 <= self.window_days < self.year_days:
            raise ValueError("window_days must lie in [0, year_days)")
        if self.multiplicity < 2:
            raise ValueError("multiplicity must be >= 2")
        if self.topology not in ("circular", "linear"):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class CoincidenceResult:
    probability: float
    std_error: float
    method: str   # "exact" or "monte_carlo"

    def __post_init__(self):
        if not 0 <= self.probability <= 1:
            raise ValueError("probability must lie in [0, 1]")
        if self.std_error < 0:
            raise ValueError("std_error must be >= 0")


def pair_same_day_exact(n_deaths: int, year_days: int = 365) -> float:
    """Exact P(some two of n_deaths share a day): 1 - prod_{k<n}(1 - k/year)."""
    if n_deaths < 1:
        raise ValueError("n_deaths must be >= 1")
    if year_days < 2:
        raise ValueError("year_days must be >= 2")
    if n_deaths > year_days:
        return 1.0
    k = np.arange(1, n_deaths)
    return float(1.0 - np.prod(1.0 - k / year_days))


def _mc_hits(spec: CoincidenceSpec) -> int:
    """Count Monte Carlo trials containing a qualifying cluster."""
    n, k = spec.n_deaths, spec.multiplicity
    year = spec.year_days
    seed = spec.seed & 0xFFFFFFFFFFFFFFFF
    hits = 0
    done = 0
    batch_index = 0
    while done < spec.trials:
        size = min(_BATCH, spec.trials - done)
        rng = np.random.default_rng([seed, batch_index])
        # Full-width draw + column slice keeps trial j's days identical across
        # every n (row-major fill), which is what makes estimates monotone.
        # int16 covers a calendar year with room for the +year wrap shift;
        # exotic year lengths fall back to int32.
        dtype = np.int16 if year <= 1 << 14 else np.int32
        days = rng.integers(0, year, size=(n, _BATCH), dtype=dtype)[:, :size]
        days.sort(axis=0)
        if spec.topology == "circular":
            ext = np.vstack([days, days[: k - 1] + year])
        else:
            ext = days
        spans = ext[k - 1 :] - ext[: ext.shape[0] - (k - 1)]
        hits += int((spans.min(axis=0) <= spec.window_days).sum())
        done += size
        batch_index += 1
    return hits


def coincidence_probability(spec: CoincidenceSpec, method: str = "auto") -> CoincidenceResult:
    """P(some multiplicity-subset of the deaths falls within the window).

    method "auto" uses the exact same-day pair formula when it applies and
    Monte Carlo otherwise; "exact" insists on the closed form (and raises
    where none exists); "monte_carlo" forces simulation even at window 0.
    """
    if method not in ("auto", "exact", "monte_carlo"):
        raise ValueError(f"unknown method {method!r}")
    exact_available = spec.multiplicity == 2 and spec.window_days == 0
    if method == "exact" and not exact_available:
        raise ValueError("no closed form for this spec; use Monte Carlo")
    if method in ("auto", "exact") and exact_available:
        return CoincidenceResult(
            probability=pair_same_day_exact(spec.n_deaths, spec.year_days),
            std_error=0.0,
            method="exact",
        )
    if spec.n_deaths < spec.multiplicity:
        return CoincidenceResult(probability=0.0, std_error=0.0, method="exact")
    hits = _mc_hits(spec)
    p = hits / spec.trials
    se = float(np.sqrt(p * (1.0 - p) / spec.trials))
    return CoincidenceResult(probability=p, std_error=se, method="monte_carlo")


def min_deaths_for(
    target: float,
    *,
    window_days: int = 0,
    multiplicity: int = 2,
    year_days: int = 365,
    topology: str = "circular",
    trials: int = 10**6,
    seed: int = 0,
    method: str = "auto",
) -> int:
    """Smallest N whose coincidence probability reaches the target.

    Doubles N until the probability clears the target, then bisects.  Common
    random numbers make the Monte Carlo estimate monotone in N, so bisection
    is sound even at fixed trial budgets.
    """
    if not 0 < target < 1:
        raise ValueError("target must lie strictly between 0 and 1")

    def prob(n: int) -> float:
        spec = CoincidenceSpec(
            n_deaths=n,
            window_days=window_days,
            multiplicity=multiplicity,
            year_days=year_days,
            topology=topology,
            trials=trials,
            seed=seed,
        )
        return coincidence_probability(spec, method=method).probability

    lo, hi = 0, 1
    while prob(hi) < target:
        lo, hi = hi, hi * 2
        if hi > 100 * year_days * multiplicity:
            raise RuntimeError(f"target {target} not reached by N = {hi}")
    while hi - lo > 1:   # invariant: prob(lo) < target <= prob(hi)
        mid = (lo + hi) // 2
        if prob(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi
