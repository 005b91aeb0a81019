"""Shared helpers for the test suite."""

from __future__ import annotations

from renown.data import Individual, PreferenceDataset, PreferenceRecord


def make_roster(*ids: str) -> tuple[Individual, ...]:
    return tuple(Individual(id=i, name=f"Person {i.upper()}") for i in ids)


def make_dataset(rows, ids=None) -> PreferenceDataset:
    """Build a dataset from (subject, id_a, id_b, choice) tuples."""
    records = tuple(PreferenceRecord(*row) for row in rows)
    if ids is None:
        ids = sorted({r.id_a for r in records} | {r.id_b for r in records})
    return PreferenceDataset(roster=make_roster(*ids), records=records)
