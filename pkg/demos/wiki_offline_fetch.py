"""Fetch Wikipedia metrics without touching Wikipedia.

The client's offline mode replays raw API responses recorded earlier with
record_dir.  This script writes a miniature recorded session to a temp
directory by hand, then points the client at it — the same flow works with
real recordings, and it is how the test suite exercises the client.
"""

import json
import tempfile
from datetime import date
from pathlib import Path
from urllib.parse import quote

from renown.data import MetricKind
from renown.wiki import FetchRequest, WikiClient

session = Path(tempfile.mkdtemp(prefix="wiki_session_"))

def record(key, body):
    (session / (quote(key, safe="") + ".json")).write_text(json.dumps(body))

# An edit-count query pages through the revision history 500 ids at a time;
# this fake page has 500 + 123 revisions.
record("revisions__Grace Hopper__0", {
    "continue": {"rvcontinue": "20170101|123", "continue": "||"},
    "query": {"pages": [{"pageid": 1, "title": "Grace Hopper",
                         "revisions": [{"revid": i} for i in range(500)]}]},
})
record("revisions__Grace Hopper__1", {
    "query": {"pages": [{"pageid": 1, "title": "Grace Hopper",
                         "revisions": [{"revid": 500 + i} for i in range(123)]}]},
})

# Three days of page views.
record("pageviews__Grace Hopper__20170601__20170603", {
    "items": [
        {"timestamp": "2017060100", "views": 3200},
        {"timestamp": "2017060200", "views": 2950},
        {"timestamp": "2017060300", "views": 4100},
    ],
})

client = WikiClient(offline_dir=session, today=lambda: date(2017, 6, 29))

count = client.fetch(FetchRequest(title="Grace Hopper", metric=MetricKind.WE))
print(f"edit count for {count.id}: {count.value:.0f} (as of {count.retrieved_on})")

views = client.fetch(FetchRequest(
    title="Grace Hopper",
    metric=MetricKind.WV,
    date_range=(date(2017, 6, 1), date(2017, 6, 3)),
))
print(f"page views {views.samples[0][0]}..{views.samples[-1][0]}: "
      f"total {views.total()}, mean {views.mean_per_day():.0f}/day")

# Asking for anything unrecorded fails loudly instead of going online.
try:
    client.edit_count("Margaret Hamilton")
except Exception as exc:
    print(f"unrecorded title -> {type(exc).__name__}: {exc}")

print(f"\n(recorded session lives in {session}; delete at will)")
