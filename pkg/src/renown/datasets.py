"""Bundled reference data and synthetic survey generation.

Two fixtures ship with the package:

* a table of twenty renowned individuals who died in 2016-2017, with their
  survey-derived fame ratings and a panel of internet metrics (edit counts,
  news items, search hits, page views, and their growth rates);
* a synthetic pairwise-preference survey over those twenty names, generated
  from the published ratings, sized like the original survey (50 subjects x
  50 pairs, with a matching share of "no preference" responses).

The synthetic survey exists so that the full rank-and-bootstrap pipeline can
run end to end without the original (non-redistributable) response sheets.
"""

from __future__ import annotations

import csv
from datetime import date
from importlib import resources
from typing import Mapping, Sequence

import numpy as np

from .data import (
    Individual,
    MetricDataset,
    MetricKind,
    MetricSnapshot,
    PreferenceDataset,
    PreferenceRecord,
    load_preferences,
)

__all__ = [
    "SOURCE_COVERAGE",
    "generate_survey",
    "synthetic_survey",
    "table1_individuals",
    "table1_metrics",
    "table1_published_scores",
]

_DATA = resources.files("renown") / "_data"

# (coverage_months, sample_fraction) for the deceased-persons populations the
# cumulative-frequency analyses draw on.  Wiki is 78 names sampled from the
# 642 January-2017 deaths; the others are complete lists for their windows.
SOURCE_COVERAGE: dict[str, tuple[float, float]] = {
    "NBC": (12.0, 1.0),
    "Wiki": (1.0, 78.0 / 642.0),
    "NYT": (2.0, 1.0),
    "NYT1": (1.0, 1.0),
    "NYT2": (1.0, 1.0),
}

# Metric snapshot dates for the bundled table: page views were recorded later
# than the other metrics.
_RETRIEVED = {
    MetricKind.WE: date(2017, 3, 8),
    MetricKind.GN: date(2017, 3, 8),
    MetricKind.GH: date(2017, 3, 8),
    MetricKind.WV: date(2017, 6, 29),
    MetricKind.DWE_DT: date(2017, 3, 8),
    MetricKind.DWV_DT: date(2017, 6, 29),
}

_METRIC_COLUMNS = {
    "we": MetricKind.WE,
    "gn": MetricKind.GN,
    "gh": MetricKind.GH,
    "wv": MetricKind.WV,
    "dwe_dt": MetricKind.DWE_DT,
    "dwv_dt": MetricKind.DWV_DT,
}


def _table1_rows() -> list[dict[str, str]]:
    text = (_DATA / "table1.csv").read_text(encoding="utf-8")
    return list(csv.DictReader(text.splitlines()))


def table1_individuals() -> tuple[Individual, ...]:
    """Roster of the twenty surveyed individuals, in published order."""
    return tuple(
        Individual(
            id=row["id"],
            name=row["name"],
            dob=date.fromisoformat(row["dob"]),
            dod=date.fromisoformat(row["dod"]),
        )
        for row in _table1_rows()
    )


def table1_published_scores() -> dict[str, tuple[float, float]]:
    """Published (p, delta_p) fame ratings, keyed by individual id.

    These are the rounded values as printed, so they sum to roughly but not
    exactly 1; normalize before using them as model strengths.
    """
    return {row["id"]: (float(row["p"]), float(row["delta_p"])) for row in _table1_rows()}


def table1_metrics() -> MetricDataset:
    """All internet-metric snapshots for the twenty individuals.

    The roster is a curated selection rather than a sampled death population,
    so the coverage metadata is neutral (annualization factor 1).
    """
    snapshots = []
    for row in _table1_rows():
        for column, kind in _METRIC_COLUMNS.items():
            snapshots.append(
                MetricSnapshot(
                    id=row["id"],
                    kind=kind,
                    value=float(row[column]),
                    retrieved_on=_RETRIEVED[kind],
                )
            )
    return MetricDataset(
        name="table1",
        snapshots=tuple(snapshots),
        coverage_months=12.0,
        sample_fraction=1.0,
    )


def generate_survey(
    strengths: Mapping[str, float],
    *,
    n_subjects: int = 50,
    pairs_per_subject: int = 50,
    none_rate: float = 0.0,
    seed: int = 0,
    roster: Sequence[Individual] | None = None,
) -> PreferenceDataset:
    """Simulate a pairwise-preference survey from known strengths.

    Each subject receives pairs_per_subject ordered pairs drawn without
    replacement from all n*(n-1) orderings; each presentation independently
    yields "no preference" with probability none_rate, and otherwise a choice
    drawn from the strength model P(A) = p_a / (p_a + p_b).  NONE records are
    kept in the returned dataset; drop them (or not) at analysis time.
    """
    ids = list(strengths)
    if len(ids) < 2:
        raise ValueError("need at least 2 individuals")
    p = np.array([strengths[i] for i in ids], dtype=float)
    if np.any(p <= 0):
        raise ValueError("strengths must be positive")
    p = p / p.sum()
    if not 0 <= none_rate < 1:
        raise ValueError("none_rate must lie in [0, 1)")
    ordered = [(i, j) for i in range(len(ids)) for j in range(len(ids)) if i != j]
    if not 1 <= pairs_per_subject <= len(ordered):
        raise ValueError(f"pairs_per_subject must lie in [1, {len(ordered)}]")

    if roster is None:
        roster = tuple(Individual(id=ident, name=ident) for ident in ids)
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    records = []
    for s in range(n_subjects):
        subject = f"s{s + 1:02d}"
        pick = rng.choice(len(ordered), size=pairs_per_subject, replace=False)
        for k in pick:
            a, b = ordered[k]
            if rng.random() < none_rate:
                choice = "NONE"
            else:
                choice = "A" if rng.random() < p[a] / (p[a] + p[b]) else "B"
            records.append(PreferenceRecord(subject, ids[a], ids[b], choice))
    return PreferenceDataset(roster=tuple(roster), records=tuple(records))


def synthetic_survey(*, drop_none: bool = True) -> PreferenceDataset:
    """The bundled synthetic survey over the table1 roster.

    Generated once by generate_survey from the published ratings and frozen
    as package data, so analyses built on it are stable across platforms and
    library versions.
    """
    with resources.as_file(_DATA / "synthetic_survey.csv") as path:
        return load_preferences(path, roster=table1_individuals(), drop_none=drop_none)
