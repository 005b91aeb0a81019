"""Wikipedia metric retrieval: page edit counts and daily page views.

Edit counts come from the MediaWiki action API (revision history, paginated
500 ids at a time); page views come from the Wikimedia pageviews REST API.
The client is built for reproducible pipelines:

* injectable transport, clock, sleep, and today functions, so tests run with
  canned responses and virtual time;
* an offline mode that serves recorded raw responses from a directory and
  never touches the network;
* a result cache (one small JSON per title/metric/date) that makes repeat
  fetches free and byte-stable;
* a politeness throttle of at least min_interval seconds between live calls.

Raw responses can be recorded with record_dir while online; pointing
offline_dir at the same directory later replays the session exactly.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from datetime import date, datetime
from pathlib import Path
from typing import Callable, Sequence
from urllib.parse import quote, urlencode

from .data import MetricKind, MetricSnapshot

__all__ = [
    "DisambiguationError",
    "FetchRequest",
    "FixtureMissingError",
    "NetworkError",
    "PageNotFoundError",
    "TimeSeries",
    "WikiClient",
    "WikiError",
]

ACTION_API = "https://en.wikipedia.org/w/api.php"
PAGEVIEWS_API = (
    "https://wikimedia.org/api/rest_v1/metrics/pageviews/per-article/"
    "en.wikipedia.org/all-access/user"
)
_USER_AGENT = "renown/0.1 (fame metrics research toolkit)"
_REVISIONS_PER_PAGE = 500


class WikiError(Exception):
    """Base class for retrieval failures."""


class PageNotFoundError(WikiError):
    """The requested title does not exist."""


class DisambiguationError(WikiError):
    """The title resolves to a disambiguation page, not a person's article."""


class NetworkError(WikiError):
    """Transient transport failure; safe to retry later."""


class FixtureMissingError(WikiError):
    """Offline mode has no recorded response for this request."""


@dataclass(frozen=True)
class FetchRequest:
    """One retrieval to perform: a page title plus which metric to pull.

    ``date_range`` is the inclusive (start, end) interval and applies to page
    views only; edit counts are always totals to date.
    """

    title: str
    metric: MetricKind
    date_range: tuple[date, date] | None = None

    def __post_init__(self):
        if not self.title.strip():
            raise ValueError("title must be non-empty")
        if self.metric not in (MetricKind.WE, MetricKind.WV):
            raise ValueError(f"metric must be WE or WV, got {self.metric}")
        if self.metric is MetricKind.WV:
            if self.date_range is None:
                raise ValueError("page views need a date_range")
            start, end = self.date_range
            if end < start:
                raise ValueError("date_range start must not exceed end")
        elif self.date_range is not None:
            raise ValueError("edit counts take no date_range")


@dataclass(frozen=True)
class TimeSeries:
    """Daily samples for one title, sorted by date.  Days the API had no data
    for are absent rather than zero-filled."""

    title: str
    kind: MetricKind
    samples: tuple[tuple[date, int], ...]

    def __post_init__(self):
        days = [d for d, _ in self.samples]
        if any(b <= a for a, b in zip(days, days[1:])):
            raise ValueError("samples must be sorted by date without duplicates")
        if any(v < 0 for _, v in self.samples):
            raise ValueError("sample values must be non-negative")

    def total(self) -> int:
        return sum(v for _, v in self.samples)

    def mean_per_day(self) -> float:
        if not self.samples:
            raise ValueError("empty series has no mean")
        return self.total() / len(self.samples)

    def cumulative(self) -> "TimeSeries":
        running, out = 0, []
        for d, v in self.samples:
            running += v
            out.append((d, running))
        return TimeSeries(title=self.title, kind=self.kind, samples=tuple(out))


def _requests_transport(url: str) -> tuple[int, bytes]:
    import requests

    try:
        resp = requests.get(url, headers={"User-Agent": _USER_AGENT}, timeout=30)
    except requests.RequestException as exc:
        raise NetworkError(f"request failed: {exc}") from exc
    return resp.status_code, resp.content


def _file_key(key: str) -> str:
    return quote(key, safe="") + ".json"


class WikiClient:
    """Fetch edit counts and page views with caching and offline replay.

    Parameters are all injectable for testing: transport(url) returns
    (status, body bytes); clock/sleep implement the throttle; today() dates
    the result-cache entries.
    """

    def __init__(
        self,
        *,
        cache_dir: str | Path | None = None,
        offline_dir: str | Path | None = None,
        record_dir: str | Path | None = None,
        transport: Callable[[str], tuple[int, bytes]] | None = None,
        min_interval: float = 1.0,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
        today: Callable[[], date] = date.today,
        action_api: str = ACTION_API,
        pageviews_api: str = PAGEVIEWS_API,
    ):
        if min_interval < 0:
            raise ValueError("min_interval must be >= 0")
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.offline_dir = Path(offline_dir) if offline_dir else None
        self.record_dir = Path(record_dir) if record_dir else None
        self.transport = transport or _requests_transport
        self.min_interval = min_interval
        self._clock = clock
        self._sleep = sleep
        self._today = today
        self.action_api = action_api
        self.pageviews_api = pageviews_api
        self._last_call: float | None = None
        self._lock = threading.Lock()

    # -- plumbing -----------------------------------------------------------

    def _throttle(self) -> None:
        if self._last_call is not None:
            wait = self.min_interval - (self._clock() - self._last_call)
            if wait > 0:
                self._sleep(wait)

    def _get_json(self, key: str, url: str, *, rest: bool) -> dict:
        """One raw API response, from fixtures in offline mode or live.

        rest marks REST endpoints, where 404 means the resource is absent
        (the action API reports missing pages in a 200 body instead).
        """
        if self.offline_dir is not None:
            path = self.offline_dir / _file_key(key)
            if not path.exists():
                raise FixtureMissingError(f"no recorded response for {key!r} in {self.offline_dir}")
            return json.loads(path.read_text(encoding="utf-8"))

        with self._lock:
            self._throttle()
            status, body = self.transport(url)
            self._last_call = self._clock()
        if status == 404 and rest:
            raise PageNotFoundError(f"{key!r}: resource not found")
        if status != 200:
            raise NetworkError(f"{key!r}: HTTP {status}")
        data = json.loads(body.decode("utf-8"))
        if self.record_dir is not None:
            self.record_dir.mkdir(parents=True, exist_ok=True)
            (self.record_dir / _file_key(key)).write_bytes(body)
        return data

    def _cache_path(self, title: str, kind: MetricKind, stamp: str) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / _file_key(f"{title}__{kind.value}__{stamp}")

    def _cache_load(self, path: Path | None) -> dict | None:
        if path is not None and path.exists():
            return json.loads(path.read_text(encoding="utf-8"))
        return None

    def _cache_store(self, path: Path | None, payload: dict) -> None:
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")

    # -- edit counts --------------------------------------------------------

    def edit_count(self, title: str) -> MetricSnapshot:
        """Total number of revisions of the page, paging through the full
        history.  Raises PageNotFoundError / DisambiguationError when the
        title does not lead to a proper article."""
        today = self._today()
        cache = self._cache_path(title, MetricKind.WE, today.isoformat())
        hit = self._cache_load(cache)
        if hit is not None:
            return MetricSnapshot(
                id=hit["title"],
                kind=MetricKind.WE,
                value=float(hit["value"]),
                retrieved_on=date.fromisoformat(hit["retrieved_on"]),
            )

        params = {
            "action": "query",
            "format": "json",
            "formatversion": "2",
            "prop": "revisions|pageprops",
            "ppprop": "disambiguation",
            "rvprop": "ids",
            "rvlimit": str(_REVISIONS_PER_PAGE),
            "redirects": "1",
            "titles": title,
        }
        count = 0
        page_index = 0
        cont: dict = {}
        while True:
            url = f"{self.action_api}?{urlencode({**params, **cont})}"
            data = self._get_json(f"revisions__{title}__{page_index}", url, rest=False)
            pages = data.get("query", {}).get("pages", [])
            if not pages or pages[0].get("missing") or pages[0].get("invalid"):
                raise PageNotFoundError(f"no Wikipedia page for {title!r}")
            page = pages[0]
            if page_index == 0:
                if "disambiguation" in page.get("pageprops", {}):
                    raise DisambiguationError(f"{title!r} is a disambiguation page")
                redirects = data.get("query", {}).get("redirects", [])
                if len(redirects) > 1:
                    raise WikiError(f"{title!r} enters a redirect chain, refusing to follow")
            count += len(page.get("revisions", ()))
            if "continue" not in data:
                break
            cont = dict(data["continue"])
            page_index += 1

        self._cache_store(
            cache, {"title": title, "value": count, "retrieved_on": today.isoformat()}
        )
        return MetricSnapshot(id=title, kind=MetricKind.WE, value=float(count), retrieved_on=today)

    # -- page views ---------------------------------------------------------

    def pageviews(self, title: str, start: date, end: date) -> TimeSeries:
        """Daily user page views over [start, end] inclusive."""
        if end < start:
            raise ValueError("end must not precede start")
        stamp = f"{start.isoformat()}_{end.isoformat()}"
        cache = self._cache_path(title, MetricKind.WV, stamp)
        hit = self._cache_load(cache)
        if hit is not None:
            samples = tuple((date.fromisoformat(d), int(v)) for d, v in hit["samples"])
            return TimeSeries(title=hit["title"], kind=MetricKind.WV, samples=samples)

        key = f"pageviews__{title}__{start:%Y%m%d}__{end:%Y%m%d}"
        url = (
            f"{self.pageviews_api}/{quote(title.replace(' ', '_'), safe='')}/daily/"
            f"{start:%Y%m%d}00/{end:%Y%m%d}00"
        )
        data = self._get_json(key, url, rest=True)
        samples = []
        for item in data.get("items", []):
            stamp_raw = item["timestamp"][:8]
            day = datetime.strptime(stamp_raw, "%Y%m%d").date()
            samples.append((day, int(item["views"])))
        samples.sort()
        series = TimeSeries(title=title, kind=MetricKind.WV, samples=tuple(samples))
        self._cache_store(
            cache,
            {
                "title": title,
                "samples": [[d.isoformat(), v] for d, v in series.samples],
            },
        )
        return series

    # -- request objects and batches ------------------------------------------

    def fetch(self, request: FetchRequest) -> MetricSnapshot | TimeSeries:
        """Serve one FetchRequest: a WE snapshot or a WV series."""
        if request.metric is MetricKind.WE:
            return self.edit_count(request.title)
        start, end = request.date_range
        return self.pageviews(request.title, start, end)

    def edit_counts(self, titles: Sequence[str]) -> dict[str, MetricSnapshot]:
        return {t: self.edit_count(t) for t in titles}
