"""Domain types and CSV ingestion for fame survey and metric datasets.

File formats
------------
preferences.csv   header ``subject,id_a,id_b,choice`` with choice in {A, B, NONE}.
individuals.csv   header ``id,name,dob,dod,occupation`` (dob/dod/occupation may
                  be empty; dates are ISO-8601).
metrics.csv       header ``id,kind,value,retrieved_on`` preceded by a comment
                  block ``# name=``, ``# coverage_months=``, ``# sample_fraction=``.

A converter is provided for the winner/loser survey shape (columns
``subject,winner,loser``), which maps every row to choice = A.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Sequence


class DataError(ValueError):
    """Raised when an input file violates the dataset contracts."""


CHOICES = ("A", "B", "NONE")


def _parse_iso_date(token: str, where: str) -> date | None:
    if not token:
        return None
    try:
        return date.fromisoformat(token)
    except ValueError as exc:
        raise DataError(f"{where}: invalid ISO date {token!r}") from exc


@dataclass(frozen=True)
class Individual:
    """One person in a roster, identified by a short unique token."""

    id: str
    name: str
    dob: date | None = None
    dod: date | None = None
    occupation: str | None = None

    def __post_init__(self):
        if not self.id:
            raise DataError("individual id must be non-empty")
        if not self.name:
            raise DataError(f"individual {self.id}: name must be non-empty")
        if self.dob is not None and self.dod is not None and not self.dob < self.dod:
            raise DataError(f"individual {self.id}: dob must precede dod")


@dataclass(frozen=True)
class PreferenceRecord:
    """One pairwise comparison: a subject prefers id_a (A), id_b (B), or neither."""

    subject: str
    id_a: str
    id_b: str
    choice: str

    def __post_init__(self):
        if self.id_a == self.id_b:
            raise DataError(f"subject {self.subject}: id_a and id_b are both {self.id_a!r}")
        if self.choice not in CHOICES:
            raise DataError(f"subject {self.subject}: malformed choice {self.choice!r}")

    @property
    def winner(self) -> str | None:
        if self.choice == "A":
            return self.id_a
        if self.choice == "B":
            return self.id_b
        return None

    @property
    def loser(self) -> str | None:
        if self.choice == "A":
            return self.id_b
        if self.choice == "B":
            return self.id_a
        return None


@dataclass(frozen=True)
class PreferenceDataset:
    """A roster plus the pairwise-preference records taken over it.

    Immutable after construction and safe to share across concurrent readers.
    """

    roster: tuple[Individual, ...]
    records: tuple[PreferenceRecord, ...]
    dropped_none_count: int = 0

    def __post_init__(self):
        seen: set[str] = set()
        for ind in self.roster:
            if ind.id in seen:
                raise DataError(f"duplicate individual id {ind.id!r} in roster")
            seen.add(ind.id)
        for rec in self.records:
            for token in (rec.id_a, rec.id_b):
                if token not in seen:
                    raise DataError(f"record references unknown individual id {token!r}")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(ind.id for ind in self.roster)

    @property
    def subjects(self) -> tuple[str, ...]:
        out, seen = [], set()
        for rec in self.records:
            if rec.subject not in seen:
                seen.add(rec.subject)
                out.append(rec.subject)
        return tuple(out)

    def decided_records(self) -> tuple[PreferenceRecord, ...]:
        return tuple(r for r in self.records if r.choice != "NONE")


class MetricKind(str, Enum):
    """Internet fame metrics: cumulative counts and their time derivatives."""

    WE = "WE"            # total Wikipedia page edits
    GN = "GN"            # total Google news items
    GH = "GH"            # total Google hits
    WV = "WV"            # total Wikipedia page views
    DWE_DT = "DWE_DT"    # mean WE added per month
    DWV_DT = "DWV_DT"    # mean WV added per day

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.value


COUNT_KINDS = frozenset({MetricKind.WE, MetricKind.GN, MetricKind.GH, MetricKind.WV})


@dataclass(frozen=True)
class MetricSnapshot:
    """One metric value for one individual at the date it was retrieved."""

    id: str
    kind: MetricKind
    value: float
    retrieved_on: date | None = None

    def __post_init__(self):
        if self.value < 0:
            raise DataError(f"{self.id}/{self.kind.value}: negative value {self.value}")
        if self.kind in COUNT_KINDS and self.value != int(self.value):
            raise DataError(f"{self.id}/{self.kind.value}: count kinds must be integers")


@dataclass(frozen=True)
class MetricDataset:
    """Per-individual metric snapshots plus the coverage metadata needed to
    annualize event counts (months spanned and the fraction of the source
    population that was sampled)."""

    name: str
    snapshots: tuple[MetricSnapshot, ...]
    coverage_months: float
    sample_fraction: float

    def __post_init__(self):
        if self.coverage_months <= 0:
            raise DataError(f"dataset {self.name}: coverage_months must be > 0")
        if not 0 < self.sample_fraction <= 1:
            raise DataError(f"dataset {self.name}: sample_fraction must be in (0, 1]")
        seen: set[tuple[str, MetricKind]] = set()
        for snap in self.snapshots:
            key = (snap.id, snap.kind)
            if key in seen:
                raise DataError(f"dataset {self.name}: duplicate ({snap.id}, {snap.kind.value})")
            seen.add(key)

    @property
    def annualization_factor(self) -> float:
        """Events-per-year multiplier: (12 / coverage_months) / sample_fraction."""
        return (12.0 / self.coverage_months) / self.sample_fraction

    def values(self, kind: MetricKind) -> dict[str, float]:
        return {s.id: s.value for s in self.snapshots if s.kind == kind}

    def ids(self) -> tuple[str, ...]:
        out, seen = [], set()
        for s in self.snapshots:
            if s.id not in seen:
                seen.add(s.id)
                out.append(s.id)
        return tuple(out)


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------

def _read_rows(path: Path, expected_header: Sequence[str]):
    """Yield non-comment CSV rows after checking the header line."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = csv.reader(fh)
        header = None
        for row in rows:
            if row and row[0].startswith("#"):
                continue
            header = row
            break
        if header is None:
            return
        if [h.strip() for h in header] != list(expected_header):
            raise DataError(
                f"{path}: expected header {','.join(expected_header)!r}, got {','.join(header)!r}"
            )
        for row in rows:
            if not row or row[0].startswith("#"):
                continue
            yield [cell.strip() for cell in row]


def load_individuals(path: str | Path) -> tuple[Individual, ...]:
    """Load a roster from individuals.csv (header ``id,name,dob,dod,occupation``)."""
    path = Path(path)
    roster = []
    for row in _read_rows(path, ("id", "name", "dob", "dod", "occupation")):
        if len(row) != 5:
            raise DataError(f"{path}: expected 5 columns, got {len(row)}: {row}")
        ident, name, dob, dod, occ = row
        roster.append(
            Individual(
                id=ident,
                name=name,
                dob=_parse_iso_date(dob, f"{path}:{ident}"),
                dod=_parse_iso_date(dod, f"{path}:{ident}"),
                occupation=occ or None,
            )
        )
    seen = set()
    for ind in roster:
        if ind.id in seen:
            raise DataError(f"{path}: duplicate individual id {ind.id!r} in roster file")
        seen.add(ind.id)
    return tuple(roster)


def load_preferences(
    path: str | Path,
    roster: str | Path | Sequence[Individual] | None = None,
    *,
    drop_none: bool = True,
    winner_loser: bool = False,
) -> PreferenceDataset:
    """Load pairwise preferences and validate them against a roster.

    ``roster`` may be a loaded roster, a path to an individuals.csv, or None,
    in which case an ``individuals.csv`` next to ``path`` is used.  With
    ``winner_loser`` the file is read in the survey-export shape
    ``subject,winner,loser`` and every row becomes choice = A.

    NONE rows are removed when ``drop_none`` is set (the default) and counted
    in ``dropped_none_count``.
    """
    path = Path(path)
    if roster is None:
        sibling = path.parent / "individuals.csv"
        if not sibling.exists():
            raise DataError(f"{path}: no roster given and {sibling} does not exist")
        roster = sibling
    if isinstance(roster, (str, Path)):
        roster = load_individuals(roster)
    roster = tuple(roster)

    records = []
    if winner_loser:
        for row in _read_rows(path, ("subject", "winner", "loser")):
            if len(row) != 3:
                raise DataError(f"{path}: expected 3 columns, got {len(row)}: {row}")
            subject, winner, loser = row
            records.append(PreferenceRecord(subject, winner, loser, "A"))
    else:
        for row in _read_rows(path, ("subject", "id_a", "id_b", "choice")):
            if len(row) != 4:
                raise DataError(f"{path}: expected 4 columns, got {len(row)}: {row}")
            subject, id_a, id_b, choice = row
            records.append(PreferenceRecord(subject, id_a, id_b, choice))

    dropped = 0
    if drop_none:
        kept = [r for r in records if r.choice != "NONE"]
        dropped = len(records) - len(kept)
        records = kept
    return PreferenceDataset(roster=roster, records=tuple(records), dropped_none_count=dropped)


def load_metrics(path: str | Path) -> MetricDataset:
    """Load metrics.csv with its leading ``# key=value`` metadata block."""
    path = Path(path)
    meta: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line.startswith("#"):
                break
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
    missing = [k for k in ("name", "coverage_months", "sample_fraction") if k not in meta]
    if missing:
        raise DataError(f"{path}: missing metadata key(s) {', '.join(missing)}")

    snapshots = []
    for row in _read_rows(path, ("id", "kind", "value", "retrieved_on")):
        if len(row) != 4:
            raise DataError(f"{path}: expected 4 columns, got {len(row)}: {row}")
        ident, kind_token, value_token, retrieved = row
        try:
            kind = MetricKind(kind_token)
        except ValueError as exc:
            raise DataError(f"{path}: unknown metric kind {kind_token!r}") from exc
        try:
            value = float(value_token)
        except ValueError as exc:
            raise DataError(f"{path}: bad value {value_token!r} for {ident}") from exc
        snapshots.append(
            MetricSnapshot(
                id=ident,
                kind=kind,
                value=value,
                retrieved_on=_parse_iso_date(retrieved, f"{path}:{ident}"),
            )
        )
    return MetricDataset(
        name=meta["name"],
        snapshots=tuple(snapshots),
        coverage_months=float(meta["coverage_months"]),
        sample_fraction=float(meta["sample_fraction"]),
    )


# ---------------------------------------------------------------------------
# Canonical serialization (byte-stable: ingest -> save -> ingest round-trips)
# ---------------------------------------------------------------------------

def _fmt_value(snap: MetricSnapshot) -> str:
    if snap.kind in COUNT_KINDS:
        return str(int(snap.value))
    return repr(snap.value)


def save_individuals(roster: Sequence[Individual], path: str | Path) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("id", "name", "dob", "dod", "occupation"))
    for ind in roster:
        w.writerow(
            (
                ind.id,
                ind.name,
                ind.dob.isoformat() if ind.dob else "",
                ind.dod.isoformat() if ind.dod else "",
                ind.occupation or "",
            )
        )
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def save_preferences(dataset: PreferenceDataset, path: str | Path) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("subject", "id_a", "id_b", "choice"))
    for rec in dataset.records:
        w.writerow((rec.subject, rec.id_a, rec.id_b, rec.choice))
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def save_metrics(dataset: MetricDataset, path: str | Path) -> None:
    """Write metrics.csv with snapshots in canonical (id, kind) order."""
    buf = io.StringIO()
    buf.write(f"# name={dataset.name}\n")
    buf.write(f"# coverage_months={repr(dataset.coverage_months)}\n")
    buf.write(f"# sample_fraction={repr(dataset.sample_fraction)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("id", "kind", "value", "retrieved_on"))
    for snap in sorted(dataset.snapshots, key=lambda s: (s.id, s.kind.value)):
        w.writerow(
            (
                snap.id,
                snap.kind.value,
                _fmt_value(snap),
                snap.retrieved_on.isoformat() if snap.retrieved_on else "",
            )
        )
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def convert_winner_loser(src: str | Path, dst: str | Path) -> int:
    """Convert a ``subject,winner,loser`` file to the canonical preference CSV.

    Returns the number of rows converted.  Winner/loser exports carry no
    NONE rows, so every output row has choice = A.
    """
    rows = list(_read_rows(Path(src), ("subject", "winner", "loser")))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("subject", "id_a", "id_b", "choice"))
    for subject, winner, loser in rows:
        w.writerow((subject, winner, loser, "A"))
    Path(dst).write_text(buf.getvalue(), encoding="utf-8")
    return len(rows)
