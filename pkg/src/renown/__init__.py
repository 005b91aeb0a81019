"""Quantifying fame: survey ratings, heavy-tail fits, and coincidence odds.

The package turns pairwise "which name do you know better?" survey data into
Bradley-Terry fame ratings with bootstrap uncertainties, relates those
ratings to internet metrics (Wikipedia edits and views, news items, search
hits) through log-log correlation, characterizes the population-level
distribution of fame with discrete power-law tails and Gutenberg-Richter
style cumulative-frequency fits, and answers "how surprising is it that k
celebrities died within d days?" with birthday-problem machinery.

Modules
-------
data         dataset types and CSV ingestion/serialization
datasets     bundled reference table and synthetic-survey generation
btrank       Bradley-Terry fitting, connectivity checks, bootstrap errors
tailfit      discrete power-law pmf/MLE/x_min selection/sampling
grfreq       annualized cumulative frequencies and f = 1/(a + x**nu/b) fits
correlate    log-log Pearson correlation and regression
coincidence  same-day / near-day death clustering probabilities
wiki         Wikipedia edit-count and page-view retrieval (offline-capable)
cli          command-line entry points over all of the above
"""

from .btrank import (
    BTConfig,
    BTFitResult,
    ConnectivityError,
    ConvergenceError,
    FameScores,
    Score,
    bootstrap_uncertainties,
    check_connectivity,
    fit_bradley_terry,
    likelihood_fractions,
    null_llr,
    win_probability,
)
from .coincidence import (
    CoincidenceResult,
    CoincidenceSpec,
    coincidence_probability,
    min_deaths_for,
    pair_same_day_exact,
)
from .correlate import LogLogFit, loglog_fit
from .data import (
    DataError,
    Individual,
    MetricDataset,
    MetricKind,
    MetricSnapshot,
    PreferenceDataset,
    PreferenceRecord,
    load_individuals,
    load_metrics,
    load_preferences,
    save_individuals,
    save_metrics,
    save_preferences,
)
from .grfreq import (
    FrequencyCurve,
    GRFit,
    cumulative_frequency,
    eval_gr,
    fit_gutenberg_richter,
    frequency_curve,
)
from .tailfit import (
    PowerLawFit,
    fit_alpha,
    gof_pvalue,
    hurwitz_zeta,
    ks_distance,
    powerlaw_pmf,
    sample_powerlaw,
    select_xmin,
    survival_points,
)

__version__ = "0.1.0"
