"""Bradley-Terry fame ratings with bootstrap uncertainties.

The model assigns each individual a positive strength p_i, normalized so that
sum(p) = 1, with

    P(i preferred over j) = p_i / (p_i + p_j).

Maximum-likelihood strengths are found by minorization-maximization
(Zermelo's iteration), which is globally convergent whenever the comparison
graph is strongly connected.  Uncertainties come from a nonparametric
bootstrap over records (or over survey subjects).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .data import DataError, PreferenceDataset, PreferenceRecord

__all__ = [
    "BTConfig",
    "BTFitResult",
    "ConnectivityError",
    "ConnectivityReport",
    "ConvergenceError",
    "FameScores",
    "Score",
    "bootstrap_uncertainties",
    "check_connectivity",
    "fit_bradley_terry",
    "likelihood_fractions",
    "null_llr",
    "win_probability",
]

_NORM_TOL = 1e-10


class ConnectivityError(ValueError):
    """Comparison graph is not strongly connected; the MLE does not exist."""


class ConvergenceError(RuntimeError):
    """Iteration hit max_iterations without meeting tolerance."""


def win_probability(p_i: float, p_j: float) -> float:
    """P(i preferred over j) = p_i / (p_i + p_j) for positive strengths."""
    if p_i <= 0 or p_j <= 0:
        raise ValueError(f"strengths must be positive, got ({p_i}, {p_j})")
    return p_i / (p_i + p_j)


@dataclass(frozen=True)
class Score:
    """Fitted strength p and its bootstrap standard error delta_p (if known)."""

    p: float
    delta_p: float | None = None


@dataclass(frozen=True)
class FameScores:
    """Normalized strength estimates for a roster, ordered arbitrarily.

    Invariants: every p > 0, sum(p) = 1 within 1e-10, and delta_p >= 0
    wherever present.
    """

    entries: dict[str, Score]

    def __post_init__(self):
        ps = np.array([s.p for s in self.entries.values()])
        if ps.size == 0:
            raise ValueError("scores must be non-empty")
        if np.any(ps <= 0):
            raise ValueError("all strengths must be positive")
        if abs(ps.sum() - 1.0) > _NORM_TOL:
            raise ValueError(f"strengths must sum to 1 within {_NORM_TOL}, got {ps.sum()!r}")
        for ident, s in self.entries.items():
            if s.delta_p is not None and s.delta_p < 0:
                raise ValueError(f"{ident}: delta_p must be non-negative")

    def p(self, ident: str) -> float:
        return self.entries[ident].p

    def delta_p(self, ident: str) -> float | None:
        return self.entries[ident].delta_p

    def by_rank(self) -> list[tuple[str, Score]]:
        """Entries sorted by descending strength (ties by id for stability)."""
        return sorted(self.entries.items(), key=lambda kv: (-kv[1].p, kv[0]))


@dataclass(frozen=True)
class BTConfig:
    """Fit and bootstrap settings.

    pseudo_count adds that many virtual wins in both directions on every
    observed pair, which regularizes fits on disconnected or near-degenerate
    data (0 = pure MLE).  bootstrap_unit chooses what gets resampled:
    individual comparison records, or whole survey subjects.
    """

    tolerance: float = 1e-10
    max_iterations: int = 10_000
    pseudo_count: float = 0.0
    bootstrap_samples: int = 2000
    seed: int = 0
    bootstrap_unit: str = "records"   # or "subjects"
    none_half_win: bool = False

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.pseudo_count < 0:
            raise ValueError("pseudo_count must be >= 0")
        if self.bootstrap_samples < 2:
            raise ValueError("bootstrap_samples must be >= 2")
        if self.bootstrap_unit not in ("records", "subjects"):
            raise ValueError(f"unknown bootstrap_unit {self.bootstrap_unit!r}")


@dataclass(frozen=True)
class BTFitResult:
    """MLE output: scores plus the per-record likelihoods behind them.

    comparison_likelihoods[r] is P(observed choice of decided record r) under
    the fitted strengths, in record order.  log_likelihood is the sum of their
    logs; llr_vs_null is the log-likelihood ratio against the fair-coin model
    that assigns every comparison probability 1/2.
    """

    scores: FameScores
    iterations: int
    log_likelihood: float
    llr_vs_null: float
    comparison_likelihoods: np.ndarray

    def __post_init__(self):
        if np.any(self.comparison_likelihoods <= 0) or np.any(self.comparison_likelihoods > 1):
            raise ValueError("comparison likelihoods must lie in (0, 1]")


@dataclass(frozen=True)
class ConnectivityReport:
    strongly_connected: bool
    components: tuple[tuple[str, ...], ...]


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _match_records(dataset: PreferenceDataset, none_half_win: bool) -> tuple[PreferenceRecord, ...]:
    """Records that enter the fit: decided ones, plus NONE when half-win is on."""
    if none_half_win:
        return dataset.records
    return dataset.decided_records()


def _win_matrix(
    records: Sequence[PreferenceRecord], index: dict[str, int], n: int, none_half_win: bool
) -> np.ndarray:
    """W[i, j] = (possibly fractional) number of times i beat j."""
    W = np.zeros((n, n))
    for rec in records:
        a, b = index[rec.id_a], index[rec.id_b]
        if rec.choice == "A":
            W[a, b] += 1.0
        elif rec.choice == "B":
            W[b, a] += 1.0
        elif none_half_win:
            W[a, b] += 0.5
            W[b, a] += 0.5
    return W


def _components_from_matrix(W: np.ndarray) -> tuple[int, np.ndarray]:
    n_comp, labels = connected_components(csr_matrix(W > 0), directed=True, connection="strong")
    return n_comp, labels


def _fit_strengths(
    W: np.ndarray, config: BTConfig, start: np.ndarray | None = None
) -> tuple[np.ndarray, int]:
    """Zermelo MM iteration on a win matrix.  Returns (p, iterations)."""
    n = W.shape[0]
    if config.pseudo_count > 0:
        # Virtual wins both ways on every observed pair keep the graph connected.
        observed = ((W + W.T) > 0).astype(float)
        W = W + config.pseudo_count * observed
    wins = W.sum(axis=1)
    if np.any(wins == 0) or np.any(W.sum(axis=0) == 0):
        raise ConnectivityError(
            "some individual has no wins or no losses; comparison graph is not strongly connected"
        )
    N = W + W.T
    p = np.full(n, 1.0 / n) if start is None else start.copy()
    eye = np.eye(n)
    for iteration in range(1, config.max_iterations + 1):
        # eye keeps the i == j term finite; N's zero diagonal removes it.
        denom = (N / (p[:, None] + p[None, :] + eye)).sum(axis=1)
        p_new = wins / denom
        p_new /= p_new.sum()
        delta = np.max(np.abs(p_new - p) / p)
        p = p_new
        if delta < config.tolerance:
            return p, iteration
    raise ConvergenceError(
        f"no convergence after {config.max_iterations} iterations (max relative step {delta:.3e})"
    )


def _likelihoods(
    records: Sequence[PreferenceRecord], index: dict[str, int], p: np.ndarray
) -> np.ndarray:
    """P(observed choice) per decided record, in record order."""
    out = np.empty(len(records))
    for k, rec in enumerate(records):
        pa, pb = p[index[rec.id_a]], p[index[rec.id_b]]
        out[k] = pa / (pa + pb) if rec.choice == "A" else pb / (pa + pb)
    return out


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def check_connectivity(dataset: PreferenceDataset, *, none_half_win: bool = False) -> ConnectivityReport:
    """Strong connectivity of the directed beats-graph (i -> j when i beat j)."""
    ids = dataset.ids
    index = {ident: k for k, ident in enumerate(ids)}
    W = _win_matrix(_match_records(dataset, none_half_win), index, len(ids), none_half_win)
    n_comp, labels = _components_from_matrix(W)
    comps: list[list[str]] = [[] for _ in range(n_comp)]
    for ident, lab in zip(ids, labels):
        comps[lab].append(ident)
    return ConnectivityReport(
        strongly_connected=(n_comp == 1),
        components=tuple(tuple(c) for c in comps),
    )


def fit_bradley_terry(dataset: PreferenceDataset, config: BTConfig = BTConfig()) -> BTFitResult:
    """Maximum-likelihood strengths for a preference dataset.

    Raises ConnectivityError when the comparison graph is not strongly
    connected and pseudo_count is 0, and ConvergenceError when the iteration
    fails to reach tolerance within max_iterations.
    """
    ids = dataset.ids
    if not ids:
        raise DataError("dataset has an empty roster")
    index = {ident: k for k, ident in enumerate(ids)}
    match = _match_records(dataset, config.none_half_win)
    if not match:
        raise DataError("dataset has no usable preference records")
    W = _win_matrix(match, index, len(ids), config.none_half_win)
    if config.pseudo_count == 0:
        n_comp, _ = _components_from_matrix(W)
        if n_comp != 1:
            raise ConnectivityError(
                f"comparison graph has {n_comp} strongly connected components; "
                "the MLE is not identifiable (consider pseudo_count > 0)"
            )
    p, iterations = _fit_strengths(W, config)
    decided = [r for r in match if r.choice != "NONE"]
    lik = _likelihoods(decided, index, p)
    log_l = float(np.log(lik).sum())
    scores = FameScores({ident: Score(p=float(p[k])) for k, ident in enumerate(ids)})
    return BTFitResult(
        scores=scores,
        iterations=iterations,
        log_likelihood=log_l,
        llr_vs_null=log_l - len(lik) * np.log(0.5),
        comparison_likelihoods=lik,
    )


def null_llr(fit: BTFitResult, dataset: PreferenceDataset) -> float:
    """Log-likelihood ratio of the fit against the coin-flip null on the same data.

    The null assigns every decided comparison probability 1/2, so the ratio is
    log_likelihood - n * ln(1/2) for the n decided records.
    """
    n = len(dataset.decided_records())
    if n != len(fit.comparison_likelihoods):
        raise ValueError(
            f"fit covers {len(fit.comparison_likelihoods)} records but dataset has {n} decided"
        )
    return fit.log_likelihood - n * float(np.log(0.5))


def likelihood_fractions(
    fit: BTFitResult, threshold: float = 0.5, bins: int = 20
) -> tuple[float, np.ndarray, np.ndarray]:
    """Fraction of comparisons the fitted model gets right at a likelihood
    threshold, plus a histogram of per-record likelihoods.

    Returns (fraction above threshold, counts, bin edges) with ``bins`` equal
    bins on [0, 1].
    """
    if not 0 <= threshold <= 1:
        raise ValueError("threshold must lie in [0, 1]")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    lik = fit.comparison_likelihoods
    fraction = float(np.mean(lik > threshold))
    counts, edges = np.histogram(lik, bins=bins, range=(0.0, 1.0))
    return fraction, counts, edges


def bootstrap_uncertainties(dataset: PreferenceDataset, config: BTConfig = BTConfig()) -> FameScores:
    """Full-data strengths with bootstrap standard errors attached.

    Resamples records (or subjects) with replacement config.bootstrap_samples
    times, refits each resample warm-started from the full fit, and reports
    the per-individual standard deviation (ddof=1) of the resampled strengths
    as delta_p.  Resample r uses the independent stream
    ``np.random.default_rng([seed, r])``, so runs are reproducible and
    individual resamples can be re-derived in isolation.

    A resample can lose strong connectivity even when the full data has it;
    such resamples are refit with pseudo_count = 0.5 virtual wins on every
    pair observed in the full dataset, which restores identifiability without
    drifting far from the resampled likelihood.
    """
    full = fit_bradley_terry(dataset, config)
    ids = dataset.ids
    index = {ident: k for k, ident in enumerate(ids)}
    n = len(ids)
    match = _match_records(dataset, config.none_half_win)
    p_full = np.array([full.scores.p(ident) for ident in ids])

    # Pairs observed anywhere in the full data, used to regularize
    # disconnected resamples.
    W_full = _win_matrix(match, index, n, config.none_half_win)
    observed_full = ((W_full + W_full.T) > 0).astype(float)

    # Flatten every record into weighted (winner, loser) rows so resampled win
    # matrices build with one np.add.at instead of a per-record Python loop.
    # A NONE record under half-win expands to two rows of weight 0.5.
    w_idx: list[int] = []
    l_idx: list[int] = []
    wt: list[float] = []
    unit_rows: list[np.ndarray] = []
    for rec in match:
        a, b = index[rec.id_a], index[rec.id_b]
        first = len(wt)
        if rec.choice == "A":
            w_idx.append(a); l_idx.append(b); wt.append(1.0)
        elif rec.choice == "B":
            w_idx.append(b); l_idx.append(a); wt.append(1.0)
        else:
            w_idx.extend((a, b)); l_idx.extend((b, a)); wt.extend((0.5, 0.5))
        unit_rows.append(np.arange(first, len(wt)))
    if config.bootstrap_unit == "subjects":
        by_subject: dict[str, list[np.ndarray]] = {}
        for rec, rows in zip(match, unit_rows):
            by_subject.setdefault(rec.subject, []).append(rows)
        unit_rows = [np.concatenate(chunks) for _, chunks in sorted(by_subject.items())]
    w_arr, l_arr, wt_arr = np.array(w_idx), np.array(l_idx), np.array(wt)
    m = len(unit_rows)
    single = all(len(rows) == 1 for rows in unit_rows)
    first_row = np.array([rows[0] for rows in unit_rows]) if single else None

    seed = config.seed & 0xFFFFFFFFFFFFFFFF
    samples = np.empty((config.bootstrap_samples, n))
    refit = replace(config, pseudo_count=0.0)
    for r in range(config.bootstrap_samples):
        rng = np.random.default_rng([seed, r])
        pick = rng.integers(0, m, size=m)
        if single:
            rows = first_row[pick]
        else:
            rows = np.concatenate([unit_rows[u] for u in pick])
        W = np.zeros((n, n))
        np.add.at(W, (w_arr[rows], l_arr[rows]), wt_arr[rows])
        n_comp, _ = _components_from_matrix(W)
        if n_comp != 1:
            W = W + 0.5 * observed_full
        p, _ = _fit_strengths(W, refit, start=p_full)
        samples[r] = p

    delta = samples.std(axis=0, ddof=1)
    return FameScores(
        {ident: Score(p=float(p_full[k]), delta_p=float(delta[k])) for k, ident in enumerate(ids)}
    )
