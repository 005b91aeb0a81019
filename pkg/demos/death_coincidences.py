"""Celebrity deaths that fall suspiciously close together: how suspicious?

2016 felt like a cursed year partly because famous deaths kept landing on
or near the same day.  The generalized birthday problem says how little
that means: with N deaths a year, the chance of some close pair grows fast.
"""

from renown.coincidence import (
    CoincidenceSpec,
    coincidence_probability,
    min_deaths_for,
    pair_same_day_exact,
)

# The textbook case first: 23 people suffice for a same-day pair.
print("same-day pair probability (exact):")
for n in (10, 22, 23, 40, 60):
    print(f"  N={n:>3}: {pair_same_day_exact(n):.4f}")

print(f"\nfewest deaths for a >=50% same-day pair: {min_deaths_for(0.5)}")

# Near misses count too.  Widen the window to +-1 and +-2 days (the year is
# treated as circular: Dec 31 and Jan 1 are neighbours).
for window in (1, 2):
    n_star = min_deaths_for(0.5, window_days=window, trials=10**6, seed=0)
    print(f"fewest deaths for a >=50% pair within +-{window} days: {n_star}")

# Triple coincidences need far more traffic.
for window in (0, 2):
    n_star = min_deaths_for(0.5, window_days=window, multiplicity=3, trials=10**6, seed=0)
    print(f"fewest deaths for a >=50% same-window triple (+-{window}d): {n_star}")

# With ~90 prominent deaths a year (roughly a news outlet's annual count),
# same-day pairs are near certain and triples are better than even money.
print("\nat N = 90 deaths per year:")
spec = CoincidenceSpec(n_deaths=90, window_days=0, multiplicity=2)
print(f"  some same-day pair:   {coincidence_probability(spec).probability:.4f}")
spec = CoincidenceSpec(n_deaths=90, window_days=0, multiplicity=3, trials=10**6, seed=0)
result = coincidence_probability(spec)
print(f"  some same-day triple: {result.probability:.4f} +- {result.std_error:.4f}")
