"""How many very famous people die each year?

Earthquake catalogs answer "how many quakes above magnitude M per year" with
the Gutenberg-Richter law f(x) = 1/(a + x^nu/b).  The same form fits the
annual frequency of deaths above a given edit-count level.  Here we fit a
curve generated exactly from published-scale parameters, then read off
yearly rates at round thresholds.
"""

import numpy as np

from renown.grfreq import FrequencyCurve, eval_gr, fit_gutenberg_richter, frequency_curve

# Parameters at the scale reported for a year of broadcast-news obituaries.
a_true, b_true, nu_true = 0.0079, 3e6, 1.5

xs = np.unique(np.round(np.logspace(0, 4.3, 25)).astype(int))
curve = FrequencyCurve(points=tuple((int(x), float(1 / (a_true + x**nu_true / b_true))) for x in xs))

fit = fit_gutenberg_richter(curve)
print("refit of an exactly generated curve:")
print(f"  a  = {fit.a:.5f}   (true {a_true})")
print(f"  b  = {fit.b:.3g}    (true {b_true:.0e})")
print(f"  nu = {fit.nu:.4f}    (true {nu_true})")
print(f"  rms log residual = {fit.residual:.2e}")

print("\npredicted deaths per year above an edit-count level:")
for level in (100, 1_000, 10_000):
    print(f"  WE >= {level:>6}: {eval_gr(fit, level):8.2f} per year")

# The same machinery on raw counts: simulate a year of "deaths" whose sizes
# follow a heavy tail, annualize a two-month sample of them, fit, compare.
rng = np.random.default_rng(11)
sizes = np.round(rng.pareto(1.5, size=400) * 50 + 1).astype(int)
two_months = sizes[:67]  # pretend we only logged a sixth of the year
observed = frequency_curve(two_months, annualization_factor=6.0)
refit = fit_gutenberg_richter(observed)
print(f"\nannualized two-month sample: nu={refit.nu:.2f}, "
      f"f(100)={eval_gr(refit, 100):.1f}/yr vs {np.sum(sizes >= 100) } actually drawn")
