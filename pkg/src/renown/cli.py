"""Command-line interface: seeded, reproducible analysis runs.

Sub-commands
------------
rank        Bradley-Terry scores (optionally bootstrapped) from preferences
bootstrap   scores with bootstrap uncertainties (always resamples)
powerlaw    discrete power-law tail fit of a metric column
grfit       Gutenberg-Richter fit of the annualized cumulative curve
coincide    death-coincidence probability for one N or a sweep
correlate   log-log correlation between two measures
fetch       Wikipedia edit counts / page views for a list of titles
report      run the full bundled-data pipeline into one directory

Every output file starts with ``#`` comment lines recording the exact command
line, the seed, and a sha256 digest of each input file, and contains no
timestamps, so identical invocations on identical inputs are byte-identical.
Options may also come from a ``--config`` file of ``key=value`` lines (keys
are the option names with underscores); explicit flags win.

Exit codes: 0 success, 2 usage error, 3 input error, 4 numerical failure,
5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import re
import shlex
import sys
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _svg
from .btrank import (
    BTConfig,
    ConnectivityError,
    ConvergenceError,
    bootstrap_uncertainties,
    fit_bradley_terry,
    likelihood_fractions,
)
from .coincidence import CoincidenceSpec, coincidence_probability
from .correlate import loglog_fit
from .data import (
    DataError,
    MetricDataset,
    MetricKind,
    PreferenceDataset,
    load_individuals,
    load_metrics,
    load_preferences,
)
from .datasets import table1_published_scores
from .grfreq import cumulative_frequency, eval_gr, fit_gutenberg_richter
from .tailfit import select_xmin, survival_points
from .wiki import (
    DisambiguationError,
    FixtureMissingError,
    NetworkError,
    PageNotFoundError,
    WikiClient,
    WikiError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4
EXIT_IO = 5

_BUNDLED = resources.files("renown") / "_data"


class CommandError(Exception):
    """Failure with a specific exit code; message goes to stderr."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    """One resolved CLI invocation: command, its options, and run plumbing."""

    command: str
    argv: tuple[str, ...]
    out_dir: Path
    seed: int = 0
    format: str = "csv"
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------

def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return str(v)


def _header_lines(config: RunConfig, inputs: Sequence[Path]) -> list[str]:
    lines = [
        f"# command: renown {shlex.join(config.argv)}",
        f"# seed: {config.seed}",
    ]
    for p in inputs:
        lines.append(f"# input: {p.name} sha256={_sha256(p)}")
    return lines


def _write_csv(
    path: Path,
    header_lines: Sequence[str],
    columns: Sequence[str],
    rows: Sequence[Sequence],
    extra_comments: Sequence[str] = (),
) -> None:
    buf = io.StringIO()
    for line in list(header_lines) + list(extra_comments):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    try:
        path.write_text(buf.getvalue(), encoding="utf-8")
    except OSError as exc:
        raise CommandError(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _write_svg(fn, path: Path, *args, **kwargs) -> None:
    try:
        fn(path, *args, **kwargs)
    except OSError as exc:
        raise CommandError(EXIT_IO, f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Input plumbing
# ---------------------------------------------------------------------------

def _load_prefs(config: RunConfig) -> tuple[PreferenceDataset, list[Path]]:
    prefs = config.options.get("prefs")
    if prefs is None:
        # Bundled synthetic survey over the reference roster.
        with resources.as_file(_BUNDLED / "synthetic_survey.csv") as sp, resources.as_file(
            _BUNDLED / "individuals.csv"
        ) as ip:
            ds = load_preferences(sp, roster=ip)
            return ds, [Path(sp), Path(ip)]
    path = Path(prefs)
    roster = config.options.get("roster")
    if roster is not None:
        ds = load_preferences(path, roster=Path(roster))
        return ds, [path, Path(roster)]
    ds = load_preferences(path)
    return ds, [path, path.parent / "individuals.csv"]


def _load_metrics(config: RunConfig) -> tuple[MetricDataset, list[Path]]:
    metrics = config.options.get("metrics")
    if metrics is None:
        with resources.as_file(_BUNDLED / "table1_metrics.csv") as mp:
            return load_metrics(mp), [Path(mp)]
    path = Path(metrics)
    return load_metrics(path), [path]


def _parse_kind(token: str) -> MetricKind:
    try:
        return MetricKind(token.upper())
    except ValueError as exc:
        known = ", ".join(k.value for k in MetricKind)
        raise CommandError(EXIT_INPUT, f"unknown metric kind {token!r} (known: {known})") from exc


def _int_values(dataset: MetricDataset, kind: MetricKind, name: str) -> list[int]:
    values = list(dataset.values(kind).values())
    if not values:
        raise CommandError(EXIT_INPUT, f"{name} has no {kind.value} snapshots")
    return [int(v) for v in values]


# ---------------------------------------------------------------------------
# Sub-commands
# ---------------------------------------------------------------------------

def _cmd_rank(config: RunConfig) -> None:
    ds, inputs = _load_prefs(config)
    header = _header_lines(config, inputs)
    n_boot = int(config.options.get("bootstrap") or 0)
    fit = fit_bradley_terry(ds)
    if n_boot:
        scores = bootstrap_uncertainties(
            ds, BTConfig(bootstrap_samples=n_boot, seed=config.seed)
        )
    else:
        scores = fit.scores
    rows = [(ident, s.p, s.delta_p) for ident, s in scores.by_rank()]
    _write_csv(config.out_dir / "scores.csv", header, ("id", "p", "delta_p"), rows)

    fraction, counts, edges = likelihood_fractions(fit)
    hist_rows = list(zip(edges[:-1], edges[1:], counts))
    _write_csv(
        config.out_dir / "likelihoods.csv",
        header,
        ("bin_lo", "bin_hi", "count"),
        hist_rows,
        extra_comments=[f"# fraction_above_0.5: {repr(fraction)}"],
    )
    if config.format == "svg":
        _write_svg(
            _svg.histogram,
            config.out_dir / "likelihoods.svg",
            edges.tolist(),
            counts.tolist(),
            title="Per-comparison likelihoods under the fitted model",
            xlabel="likelihood of the observed choice",
        )


def _cmd_bootstrap(config: RunConfig) -> None:
    # Same artifacts as rank, but resampling is the point, not an option.
    samples = int(config.options.get("samples") or 2000)
    sub = RunConfig(
        command="rank",
        argv=config.argv,
        out_dir=config.out_dir,
        seed=config.seed,
        format=config.format,
        options={**config.options, "bootstrap": samples},
    )
    _cmd_rank(sub)


def _cmd_powerlaw(config: RunConfig) -> None:
    ds, inputs = _load_metrics(config)
    header = _header_lines(config, inputs)
    kind = _parse_kind(config.options.get("kind") or "WE")
    values = _int_values(ds, kind, ds.name)

    xmin_range = None
    raw_range = config.options.get("xmin_range")
    if raw_range:
        m = re.fullmatch(r"(\d+):(\d+)", str(raw_range))
        if not m or int(m.group(1)) > int(m.group(2)):
            raise CommandError(EXIT_USAGE, f"--xmin-range must be LO:HI, got {raw_range!r}")
        xmin_range = (int(m.group(1)), int(m.group(2)))

    fit = select_xmin(values, xmin_range=xmin_range)
    _write_csv(
        config.out_dir / "powerlaw_fit.csv",
        header,
        ("dataset", "alpha", "alpha_se", "x_min", "plateau_lo", "plateau_hi", "ks", "n_tail"),
        [
            (
                ds.name,
                fit.alpha,
                fit.alpha_se,
                fit.x_min,
                fit.x_min_plateau[0],
                fit.x_min_plateau[1],
                fit.ks_distance,
                fit.n_tail,
            )
        ],
    )
    xs, emp, model = survival_points(values, fit.alpha, fit.x_min)
    _write_csv(
        config.out_dir / "powerlaw_cdf.csv",
        header,
        ("x", "empirical_survival", "model_survival"),
        list(zip(xs, emp, model)),
    )
    if config.format == "svg":
        _write_svg(
            _svg.plot,
            config.out_dir / "powerlaw_cdf.svg",
            [
                {"x": xs.tolist(), "y": emp.tolist(), "kind": "points", "label": "data"},
                {"x": xs.tolist(), "y": model.tolist(), "kind": "line",
                 "label": f"alpha={fit.alpha:.2f}"},
            ],
            title=f"{ds.name} {kind.value} tail survival (x_min={fit.x_min})",
            xlabel=kind.value,
            ylabel="P(X >= x)",
        )


def _cmd_grfit(config: RunConfig) -> None:
    ds, inputs = _load_metrics(config)
    header = _header_lines(config, inputs)
    kind = _parse_kind(config.options.get("kind") or "WE")
    curve = cumulative_frequency(ds, kind)
    fit = fit_gutenberg_richter(curve)
    _write_csv(
        config.out_dir / "gr_curve.csv",
        header,
        ("x", "f_per_year"),
        [(x, f) for x, f in curve.points],
    )
    _write_csv(
        config.out_dir / "gr_fit.csv",
        header,
        ("dataset", "a", "b", "nu", "residual"),
        [(ds.name, fit.a, fit.b, fit.nu, fit.residual)],
    )
    if config.format == "svg":
        xs = curve.x
        grid = np.logspace(np.log10(xs.min()), np.log10(xs.max()), 64)
        _write_svg(
            _svg.plot,
            config.out_dir / "gr_curve.svg",
            [
                {"x": xs.tolist(), "y": curve.f.tolist(), "kind": "points", "label": "data"},
                {"x": grid.tolist(), "y": eval_gr(fit, grid).tolist(), "kind": "line",
                 "label": f"nu={fit.nu:.2f}"},
            ],
            title=f"{ds.name} {kind.value} annualized cumulative frequency",
            xlabel=kind.value,
            ylabel="events per year >= x",
        )


def _cmd_coincide(config: RunConfig) -> None:
    header = _header_lines(config, [])
    window = int(config.options.get("window") or 0)
    k = int(config.options.get("k") or 2)
    trials = int(config.options.get("trials") or 10**6)
    sweep = config.options.get("sweep")
    n_single = config.options.get("n")
    if sweep is None and n_single is None:
        raise CommandError(EXIT_USAGE, "coincide needs --n N or --sweep LO..HI")

    if sweep is not None:
        m = re.fullmatch(r"(\d+)\.\.(\d+)", str(sweep))
        if not m or int(m.group(1)) > int(m.group(2)) or int(m.group(1)) < 1:
            raise CommandError(EXIT_USAGE, f"--sweep must be LO..HI with 1 <= LO <= HI, got {sweep!r}")
        n_values = range(int(m.group(1)), int(m.group(2)) + 1)
    else:
        n_values = [int(n_single)]

    rows = []
    for n in n_values:
        spec = CoincidenceSpec(
            n_deaths=n, window_days=window, multiplicity=k, trials=trials, seed=config.seed
        )
        res = coincidence_probability(spec)
        rows.append((n, res.probability, res.std_error))
    _write_csv(
        config.out_dir / "coincide.csv", header, ("n_deaths", "probability", "std_error"), rows
    )
    if config.format == "svg":
        _write_svg(
            _svg.plot,
            config.out_dir / "coincide.svg",
            [
                {
                    "x": [r[0] for r in rows],
                    "y": [r[1] for r in rows],
                    "kind": "line" if len(rows) > 1 else "points",
                    "label": f"window={window} k={k}",
                }
            ],
            title="Probability of a death coincidence",
            xlabel="deaths per year",
            ylabel="probability",
            logx=False,
            logy=False,
        )


def _published_p(config: RunConfig) -> tuple[dict[str, float], list[Path]]:
    """Survey ratings for correlate's pseudo-kind 'p': a scores.csv if given,
    else the bundled published values."""
    scores_file = config.options.get("scores")
    if scores_file:
        path = Path(scores_file)
        out = {}
        with open(path, newline="", encoding="utf-8") as fh:
            rows = csv.reader(fh)
            header = None
            for row in rows:
                if row and row[0].startswith("#"):
                    continue
                if header is None:
                    if [c.strip() for c in row] != ["id", "p", "delta_p"]:
                        raise DataError(f"{path}: expected header id,p,delta_p")
                    header = row
                    continue
                if row:
                    out[row[0].strip()] = float(row[1])
        return out, [path]
    with resources.as_file(_BUNDLED / "table1.csv") as tp:
        digest_path = Path(tp)
        _sha256(digest_path)
    return {i: p for i, (p, _) in table1_published_scores().items()}, [digest_path]


def _cmd_correlate(config: RunConfig) -> None:
    ds, inputs = _load_metrics(config)
    x_token = str(config.options.get("x") or "WE")
    y_token = str(config.options.get("y") or "p")

    def axis(token):
        if token.lower() == "p":
            values, extra = _published_p(config)
            return values, "p", extra
        kind = _parse_kind(token)
        return ds.values(kind), kind.value, []

    x_vals, x_name, extra_x = axis(x_token)
    y_vals, y_name, extra_y = axis(y_token)
    header = _header_lines(config, inputs + extra_x + extra_y)

    ids = sorted(set(x_vals) & set(y_vals))
    if not ids:
        raise CommandError(EXIT_INPUT, f"no individuals carry both {x_name} and {y_name}")
    pairs = [(x_vals[i], y_vals[i]) for i in ids]
    fit = loglog_fit(pairs)

    _write_csv(
        config.out_dir / f"correlate_{x_name}_{y_name}.csv",
        header,
        ("x_metric", "y_metric", "r", "slope", "slope_se", "n"),
        [(x_name, y_name, fit.r, fit.slope, fit.slope_se, fit.n)],
    )
    scatter_rows = [
        (i, x_vals[i], y_vals[i], np.log(x_vals[i]), np.log(y_vals[i]))
        for i in ids
        if x_vals[i] > 0 and y_vals[i] > 0
    ]
    _write_csv(
        config.out_dir / f"scatter_{x_name}_{y_name}.csv",
        header,
        ("id", "x", "y", "ln_x", "ln_y"),
        scatter_rows,
    )
    if config.format == "svg":
        xs = [r[1] for r in scatter_rows]
        lo, hi = min(xs), max(xs)
        grid = np.logspace(np.log10(lo), np.log10(hi), 32)
        line = np.exp(fit.intercept) * grid**fit.slope
        _write_svg(
            _svg.plot,
            config.out_dir / f"correlate_{x_name}_{y_name}.svg",
            [
                {"x": xs, "y": [r[2] for r in scatter_rows], "kind": "points", "label": "data"},
                {"x": grid.tolist(), "y": line.tolist(), "kind": "line",
                 "label": f"r={fit.r:.2f} slope={fit.slope:.2f}"},
            ],
            title=f"{y_name} vs {x_name} (log-log)",
            xlabel=x_name,
            ylabel=y_name,
        )


def _cmd_fetch(config: RunConfig) -> None:
    titles_file = config.options.get("titles")
    if not titles_file:
        raise CommandError(EXIT_USAGE, "fetch needs --titles FILE")
    titles_path = Path(titles_file)
    pairs: list[tuple[str, str]] = []
    with open(titles_path, newline="", encoding="utf-8") as fh:
        rows = csv.reader(fh)
        header = None
        for row in rows:
            if not row or row[0].startswith("#"):
                continue
            if header is None:
                if [c.strip() for c in row] != ["id", "title"]:
                    raise DataError(f"{titles_path}: expected header id,title")
                header = row
                continue
            pairs.append((row[0].strip(), row[1].strip()))
    if not pairs:
        raise CommandError(EXIT_INPUT, f"{titles_path}: no titles listed")

    metric = str(config.options.get("metric") or "we").lower()
    if metric not in ("we", "wv"):
        raise CommandError(EXIT_USAGE, f"--metric must be we or wv, got {metric!r}")
    as_of = config.options.get("as_of")
    today = (lambda: date.fromisoformat(str(as_of))) if as_of else date.today
    offline = config.options.get("offline")
    cache = config.options.get("cache")
    client = WikiClient(
        offline_dir=offline,
        cache_dir=cache,
        today=today,
    )
    header = _header_lines(config, [titles_path])
    meta = [
        "# name=fetched",
        "# coverage_months=12.0",
        "# sample_fraction=1.0",
    ]

    rows = []
    if metric == "we":
        for ident, title in pairs:
            snap = client.edit_count(title)
            rows.append((ident, "WE", int(snap.value), snap.retrieved_on.isoformat()))
    else:
        start_raw, end_raw = config.options.get("start"), config.options.get("end")
        if not start_raw or not end_raw:
            raise CommandError(EXIT_USAGE, "fetch --metric wv needs --start and --end dates")
        try:
            start, end = date.fromisoformat(str(start_raw)), date.fromisoformat(str(end_raw))
        except ValueError as exc:
            raise CommandError(EXIT_USAGE, f"bad date: {exc}") from exc
        series_rows = []
        for ident, title in pairs:
            series = client.pageviews(title, start, end)
            rows.append((ident, "WV", series.total(), end.isoformat()))
            series_rows.extend((ident, d.isoformat(), v) for d, v in series.samples)
        _write_csv(
            config.out_dir / "pageviews.csv", header, ("id", "date", "views"), series_rows
        )
    _write_csv(
        config.out_dir / "fetched_metrics.csv",
        header,
        ("id", "kind", "value", "retrieved_on"),
        rows,
        extra_comments=meta,
    )


def _cmd_report(config: RunConfig) -> None:
    if not config.options.get("all"):
        raise CommandError(EXIT_USAGE, "report requires --all")

    def sub(command: str, **options) -> RunConfig:
        return RunConfig(
            command=command,
            argv=config.argv,
            out_dir=config.out_dir,
            seed=config.seed,
            format=config.format,
            options=options,
        )

    _cmd_rank(sub("rank", prefs=None, roster=None, bootstrap=2000))
    for kind in ("WE", "GN", "GH", "WV"):
        _cmd_correlate(sub("correlate", metrics=None, x=kind, y="p", scores=None))
    _cmd_powerlaw(sub("powerlaw", metrics=None, kind="WE", xmin_range=None))
    _cmd_grfit(sub("grfit", metrics=None, kind="WE"))
    _cmd_coincide(sub("coincide", sweep="1..100", window=0, k=2, trials=10**6, n=None))


_HANDLERS = {
    "rank": _cmd_rank,
    "bootstrap": _cmd_bootstrap,
    "powerlaw": _cmd_powerlaw,
    "grfit": _cmd_grfit,
    "coincide": _cmd_coincide,
    "correlate": _cmd_correlate,
    "fetch": _cmd_fetch,
    "report": _cmd_report,
}


def run(config: RunConfig) -> int:
    """Execute one resolved invocation; returns an exit code, writes artifacts."""
    try:
        try:
            config.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CommandError(EXIT_IO, f"cannot create {config.out_dir}: {exc}") from exc
        handler = _HANDLERS.get(config.command)
        if handler is None:
            raise CommandError(EXIT_USAGE, f"unknown command {config.command!r}")
        try:
            handler(config)
        except CommandError:
            raise
        except DataError as exc:
            raise CommandError(EXIT_INPUT, str(exc)) from exc
        except FileNotFoundError as exc:
            raise CommandError(EXIT_INPUT, str(exc)) from exc
        except (ConnectivityError, ConvergenceError) as exc:
            raise CommandError(EXIT_NUMERICAL, str(exc)) from exc
        except (PageNotFoundError, DisambiguationError, FixtureMissingError) as exc:
            raise CommandError(EXIT_INPUT, str(exc)) from exc
        except NetworkError as exc:
            raise CommandError(EXIT_IO, str(exc)) from exc
        except WikiError as exc:
            raise CommandError(EXIT_INPUT, str(exc)) from exc
        except ValueError as exc:
            raise CommandError(EXIT_NUMERICAL, str(exc)) from exc
        except OSError as exc:
            raise CommandError(EXIT_IO, str(exc)) from exc
        return EXIT_OK
    except CommandError as exc:
        print(f"renown {config.command}: {exc}", file=sys.stderr)
        return exc.code


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

_COERCE = {
    "seed": int,
    "bootstrap": int,
    "samples": int,
    "trials": int,
    "n": int,
    "window": int,
    "k": int,
}

_GLOBAL_DEFAULTS = {"out": "renown-out", "seed": 0, "format": "csv"}

_COMMAND_DEFAULTS: dict[str, dict] = {
    "rank": {"prefs": None, "roster": None, "bootstrap": 0},
    "bootstrap": {"prefs": None, "roster": None, "samples": 2000},
    "powerlaw": {"metrics": None, "kind": "WE", "xmin_range": None},
    "grfit": {"metrics": None, "kind": "WE"},
    "coincide": {"n": None, "window": 0, "k": 2, "trials": 10**6, "sweep": None},
    "correlate": {"metrics": None, "x": "WE", "y": "p", "scores": None},
    "fetch": {
        "titles": None,
        "metric": "we",
        "offline": None,
        "cache": None,
        "start": None,
        "end": None,
        "as_of": None,
    },
    "report": {},
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="output directory (default renown-out)")
    common.add_argument("--seed", type=int, metavar="S", help="RNG seed (default 0)")
    common.add_argument("--format", choices=("csv", "svg"), help="csv only, or csv plus svg plots")
    common.add_argument("--config", metavar="FILE", help="key=value defaults file")

    parser = argparse.ArgumentParser(
        prog="renown", description="Fame survey ratings, tail fits, and coincidence odds."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("rank", parents=[common], help="Bradley-Terry scores from preferences")
    p.add_argument("--prefs", metavar="FILE", help="preferences CSV (default: bundled survey)")
    p.add_argument("--roster", metavar="FILE", help="individuals CSV (default: sibling file)")
    p.add_argument("--bootstrap", type=int, metavar="N", help="bootstrap resamples for delta_p")

    p = sub.add_parser("bootstrap", parents=[common], help="scores with bootstrap uncertainties")
    p.add_argument("--prefs", metavar="FILE")
    p.add_argument("--roster", metavar="FILE")
    p.add_argument("--samples", type=int, metavar="N", help="bootstrap resamples (default 2000)")

    p = sub.add_parser("powerlaw", parents=[common], help="discrete power-law tail fit")
    p.add_argument("--metrics", metavar="FILE", help="metrics CSV (default: bundled table)")
    p.add_argument("--kind", metavar="KIND", help="metric kind, e.g. WE (default)")
    p.add_argument("--xmin-range", dest="xmin_range", metavar="LO:HI", help="restrict cutoff scan")

    p = sub.add_parser("grfit", parents=[common], help="Gutenberg-Richter frequency fit")
    p.add_argument("--metrics", metavar="FILE")
    p.add_argument("--kind", metavar="KIND")

    p = sub.add_parser("coincide", parents=[common], help="death-coincidence probability")
    p.add_argument("--n", type=int, metavar="N", help="deaths per year")
    p.add_argument("--window", type=int, metavar="D", help="max day gap (default 0)")
    p.add_argument("--k", type=int, choices=(2, 3), help="cluster size (default 2)")
    p.add_argument("--trials", type=int, metavar="T", help="Monte Carlo trials (default 1e6)")
    p.add_argument("--sweep", metavar="LO..HI", help="emit a curve over a range of N")

    p = sub.add_parser("correlate", parents=[common], help="log-log correlation of two measures")
    p.add_argument("--metrics", metavar="FILE")
    p.add_argument("--x", metavar="KIND", help="x measure: metric kind or 'p'")
    p.add_argument("--y", metavar="KIND", help="y measure: metric kind or 'p'")
    p.add_argument("--scores", metavar="FILE", help="scores CSV supplying 'p' (default: bundled)")

    p = sub.add_parser("fetch", parents=[common], help="fetch Wikipedia metrics for titles")
    p.add_argument("--titles", metavar="FILE", help="CSV with header id,title")
    p.add_argument("--metric", choices=("we", "wv"), help="we = edit count, wv = page views")
    p.add_argument("--offline", metavar="DIR", help="serve recorded responses; no network")
    p.add_argument("--cache", metavar="DIR", help="result cache directory")
    p.add_argument("--start", metavar="DATE", help="pageviews range start (ISO)")
    p.add_argument("--end", metavar="DATE", help="pageviews range end (ISO)")
    p.add_argument("--as-of", dest="as_of", metavar="DATE", help="stamp edit counts with this date")

    p = sub.add_parser("report", parents=[common], help="full bundled-data pipeline")
    p.add_argument("--all", action="store_true", help="produce every artifact")

    return parser


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(EXIT_INPUT, f"cannot read config {path}: {exc}") from exc
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CommandError(EXIT_INPUT, f"{path}:{ln}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _config_from_args(args: argparse.Namespace, raw_argv: Sequence[str]) -> RunConfig:
    file_cfg = _read_config_file(args.config) if args.config else {}

    def resolve(dest, default):
        value = getattr(args, dest, None)
        if value is None and dest in file_cfg:
            value = file_cfg[dest]
            if dest in _COERCE:
                try:
                    value = _COERCE[dest](value)
                except ValueError as exc:
                    raise CommandError(
                        EXIT_INPUT, f"config key {dest}: expected number, got {value!r}"
                    ) from exc
        return default if value is None else value

    out_dir = Path(resolve("out", _GLOBAL_DEFAULTS["out"]))
    seed = int(resolve("seed", _GLOBAL_DEFAULTS["seed"]))
    fmt = str(resolve("format", _GLOBAL_DEFAULTS["format"]))
    options = {
        dest: resolve(dest, default)
        for dest, default in _COMMAND_DEFAULTS[args.command].items()
    }
    if args.command == "report":
        options["all"] = bool(getattr(args, "all", False))
    return RunConfig(
        command=args.command,
        argv=tuple(raw_argv),
        out_dir=out_dir,
        seed=seed,
        format=fmt,
        options=options,
    )


def main(argv: Sequence[str] | None = None) -> int:
    raw = list(sys.argv[1:]) if argv is None else [str(a) for a in argv]
    parser = _build_parser()
    try:
        args = parser.parse_args(raw)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        config = _config_from_args(args, raw)
    except CommandError as exc:
        print(f"renown: {exc}", file=sys.stderr)
        return exc.code
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
