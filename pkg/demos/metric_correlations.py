"""Which internet number best tracks surveyed fame?

Crosses the survey-derived ratings of the bundled twenty-person table with
each internet metric (Wikipedia edits and views, news items, search hits)
on log scales.  Edit count wins.
"""

from renown.correlate import loglog_fit
from renown.data import MetricKind
from renown.datasets import table1_metrics, table1_published_scores

scores = table1_published_scores()
metrics = table1_metrics()

KINDS = [MetricKind.WE, MetricKind.GN, MetricKind.GH, MetricKind.WV]

print("log-log fit of rating p against each metric (n = 20 people):")
print(f"{'metric':<8} {'r':>7} {'slope':>7} {'+-':>6}")
fits = {}
for kind in KINDS:
    values = {s.id: s.value for s in metrics.snapshots if s.kind is kind}
    pairs = [(values[i], scores[i][0]) for i in sorted(scores)]
    fits[kind] = fit = loglog_fit(pairs)
    print(f"{kind.value:<8} {fit.r:7.3f} {fit.slope:7.3f} {fit.slope_se:6.3f}")

best = max(fits, key=lambda k: fits[k].r)
print(f"\nbest proxy for surveyed fame: {best.value} (r = {fits[best].r:.2f})")
print("p grows roughly like WE^%.1f over these two decades of fame"
      % fits[MetricKind.WE].slope)

# The metrics also correlate with each other; edits vs views is the pair
# people usually ask about.
we = {s.id: s.value for s in metrics.snapshots if s.kind is MetricKind.WE}
wv = {s.id: s.value for s in metrics.snapshots if s.kind is MetricKind.WV}
cross = loglog_fit([(we[i], wv[i]) for i in sorted(we)])
print(f"\nedits vs views: r = {cross.r:.2f} "
      "(related, but far from interchangeable)")
