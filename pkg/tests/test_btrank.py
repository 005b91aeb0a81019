"""Bradley-Terry ratings: MLE correctness, connectivity, bootstrap behavior.

Expected values marked with their derivation:
analytic closed forms where they exist, otherwise an independent brute-force
likelihood maximization over the probability simplex (softmax coordinates,
Nelder-Mead multi-start) that shares no code with the fitting iteration.
"""

import numpy as np
import pytest
from scipy.optimize import minimize

from renown.btrank import (
    BTConfig,
    ConnectivityError,
    ConvergenceError,
    bootstrap_uncertainties,
    check_connectivity,
    fit_bradley_terry,
    likelihood_fractions,
    null_llr,
    win_probability,
)
from renown.data import DataError, PreferenceRecord

from conftest import make_dataset


def repeat(subject, a, b, choice, times):
    return [(f"{subject}{k}", a, b, choice) for k in range(times)]


# a beats b 2-1, b beats c 2-1, a beats c 2-1 (9 comparisons)
TRIANGLE = make_dataset(
    repeat("s", "a", "b", "A", 2)
    + repeat("t", "a", "b", "B", 1)
    + repeat("u", "b", "c", "A", 2)
    + repeat("v", "b", "c", "B", 1)
    + repeat("w", "a", "c", "A", 2)
    + repeat("x", "a", "c", "B", 1)
)
# brute-force maximum of the likelihood for TRIANGLE (simplex search)
TRIANGLE_P = {"a": 0.495501689583, "b": 0.310245792243, "c": 0.194252518174}
TRIANGLE_LL = -5.782315054550
TRIANGLE_LLR = 0.456009570489  # TRIANGLE_LL - 9*ln(1/2)

FOUR_WINS = [
    ("a", "b", 5), ("b", "a", 2),
    ("a", "c", 1), ("c", "a", 1),
    ("a", "d", 2), ("d", "a", 1),
    ("b", "c", 4), ("c", "b", 3),
    ("c", "d", 3), ("d", "c", 2),
]
FOUR = make_dataset(
    [(f"s{i}_{k}", w, l, "A") for i, (w, l, n) in enumerate(FOUR_WINS) for k in range(n)]
)
# brute-force maximum for FOUR
FOUR_P = {
    "a": 0.405631016491,
    "b": 0.219333383531,
    "c": 0.213969569712,
    "d": 0.161066030266,
}
FOUR_LL = -15.883263806041


def brute_force_p(dataset):
    """Independent MLE: maximize the likelihood directly over the simplex."""
    ids = dataset.ids
    index = {ident: k for k, ident in enumerate(ids)}
    pairs = [(index[r.winner], index[r.loser]) for r in dataset.decided_records()]

    def nll(t):
        q = np.exp(np.concatenate([[0.0], t]))
        p = q / q.sum()
        return -sum(np.log(p[w] / (p[w] + p[l])) for w, l in pairs)

    best = None
    for scale in (-1.0, 0.0, 1.0):
        r = minimize(
            nll,
            np.full(len(ids) - 1, scale),
            method="Nelder-Mead",
            options={"xatol": 1e-13, "fatol": 1e-14, "maxiter": 50000},
        )
        if best is None or r.fun < best.fun:
            best = r
    q = np.exp(np.concatenate([[0.0], best.x]))
    p = q / q.sum()
    return dict(zip(ids, p))


class TestFitAgainstOracles:
    def test_two_players_closed_form(self):
        # a beats b 7 of 10 times: the MLE win share is exactly 7/10
        ds = make_dataset(repeat("s", "a", "b", "A", 7) + repeat("t", "a", "b", "B", 3))
        fit = fit_bradley_terry(ds)
        np.testing.assert_allclose(fit.scores.p("a"), 0.7, rtol=1e-9)
        np.testing.assert_allclose(fit.scores.p("b"), 0.3, rtol=1e-9)

    def test_symmetric_cycle_is_uniform(self):
        ds = make_dataset(
            [("s1", "a", "b", "A"), ("s2", "b", "c", "A"), ("s3", "c", "a", "A")]
        )
        fit = fit_bradley_terry(ds)
        for ident in "abc":
            np.testing.assert_allclose(fit.scores.p(ident), 1 / 3, rtol=1e-8)

    def test_triangle_matches_simplex_search(self):
        fit = fit_bradley_terry(TRIANGLE)
        for ident, expected in TRIANGLE_P.items():
            np.testing.assert_allclose(fit.scores.p(ident), expected, atol=1e-8)
        np.testing.assert_allclose(fit.log_likelihood, TRIANGLE_LL, atol=1e-9)
        np.testing.assert_allclose(fit.llr_vs_null, TRIANGLE_LLR, atol=1e-9)

    def test_four_players_matches_simplex_search(self):
        fit = fit_bradley_terry(FOUR)
        for ident, expected in FOUR_P.items():
            np.testing.assert_allclose(fit.scores.p(ident), expected, atol=1e-8)
        np.testing.assert_allclose(fit.log_likelihood, FOUR_LL, atol=1e-9)
        # and against a fresh in-test search, not just the frozen numbers
        oracle = brute_force_p(FOUR)
        for ident in FOUR_P:
            np.testing.assert_allclose(fit.scores.p(ident), oracle[ident], atol=1e-7)

    def test_no_perturbation_improves_likelihood(self):
        fit = fit_bradley_terry(FOUR)
        ids = FOUR.ids
        index = {ident: k for k, ident in enumerate(ids)}
        pairs = [(index[r.winner], index[r.loser]) for r in FOUR.decided_records()]
        p_hat = np.array([fit.scores.p(i) for i in ids])

        def ll(p):
            return sum(np.log(p[w] / (p[w] + p[l])) for w, l in pairs)

        base = ll(p_hat)
        rng = np.random.default_rng(5)
        for _ in range(200):
            step = rng.normal(size=len(ids)) * 1e-4
            cand = p_hat * np.exp(step)
            cand /= cand.sum()
            assert ll(cand) <= base + 1e-12

    def test_relabeling_permutes_scores(self):
        fit = fit_bradley_terry(TRIANGLE)
        swapped = make_dataset(
            [
                (r.subject, r.id_a.translate(str.maketrans("ac", "ca")),
                 r.id_b.translate(str.maketrans("ac", "ca")), r.choice)
                for r in TRIANGLE.records
            ]
        )
        fit2 = fit_bradley_terry(swapped)
        np.testing.assert_allclose(fit2.scores.p("c"), fit.scores.p("a"), atol=1e-10)
        np.testing.assert_allclose(fit2.scores.p("a"), fit.scores.p("c"), atol=1e-10)


class TestInvariantsAndAccessors:
    def test_simplex_normalization(self):
        fit = fit_bradley_terry(FOUR)
        values = [s.p for _, s in fit.scores.by_rank()]
        assert all(v > 0 for v in values)
        np.testing.assert_allclose(sum(values), 1.0, atol=1e-10)

    def test_by_rank_descending(self):
        fit = fit_bradley_terry(FOUR)
        ranked = fit.scores.by_rank()
        assert [i for i, _ in ranked] == ["a", "b", "c", "d"]
        ps = [s.p for _, s in ranked]
        assert ps == sorted(ps, reverse=True)

    def test_win_probability(self):
        assert win_probability(0.3, 0.1) == pytest.approx(0.75)
        assert win_probability(0.2, 0.2) == pytest.approx(0.5)

    def test_comparison_likelihoods_in_unit_interval(self):
        fit = fit_bradley_terry(TRIANGLE)
        assert fit.comparison_likelihoods.shape == (9,)
        assert np.all(fit.comparison_likelihoods > 0)
        assert np.all(fit.comparison_likelihoods <= 1)
        np.testing.assert_allclose(
            np.log(fit.comparison_likelihoods).sum(), fit.log_likelihood, atol=1e-10
        )

    def test_null_llr_matches_hand_value(self):
        fit = fit_bradley_terry(TRIANGLE)
        np.testing.assert_allclose(null_llr(fit, TRIANGLE), TRIANGLE_LLR, atol=1e-9)

    def test_likelihood_fractions(self):
        fit = fit_bradley_terry(TRIANGLE)
        fraction, counts, edges = likelihood_fractions(fit)
        assert counts.sum() == 9
        assert edges[0] == 0.0 and edges[-1] == 1.0
        above = (fit.comparison_likelihoods > 0.5).mean()
        np.testing.assert_allclose(fraction, above, atol=1e-12)


class TestDegenerateInputs:
    def test_empty_dataset_rejected(self):
        with pytest.raises(DataError):
            fit_bradley_terry(make_dataset([], ids=["a", "b"]))

    def test_disconnected_graph_raises(self):
        ds = make_dataset([("s1", "a", "b", "A"), ("s2", "c", "d", "A")])
        with pytest.raises(ConnectivityError):
            fit_bradley_terry(ds)

    def test_one_way_sweep_is_not_strongly_connected(self):
        # b never wins, so no path b -> a
        ds = make_dataset(repeat("s", "a", "b", "A", 5))
        with pytest.raises(ConnectivityError):
            fit_bradley_terry(ds)

    def test_check_connectivity_report(self):
        ds = make_dataset([("s1", "a", "b", "A"), ("s2", "c", "d", "A")])
        report = check_connectivity(ds)
        assert not report.strongly_connected
        assert len(report.components) == 4  # each one-way edge splits too

        ok = check_connectivity(TRIANGLE)
        assert ok.strongly_connected
        assert ok.components == (("a", "b", "c"),)

    def test_pseudo_count_rescues_disconnected_data(self):
        ds = make_dataset(repeat("s", "a", "b", "A", 5))
        fit = fit_bradley_terry(ds, BTConfig(pseudo_count=0.5))
        assert fit.scores.p("a") > fit.scores.p("b")

    def test_convergence_error(self):
        with pytest.raises(ConvergenceError):
            fit_bradley_terry(FOUR, BTConfig(max_iterations=1))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            BTConfig(tolerance=0)
        with pytest.raises(ValueError):
            BTConfig(pseudo_count=-1)
        with pytest.raises(ValueError):
            BTConfig(bootstrap_unit="columns")
        with pytest.raises(ValueError):
            BTConfig(bootstrap_samples=1)


class TestNoneHandling:
    def test_none_rows_ignored_by_default(self):
        with_none = make_dataset(
            repeat("s", "a", "b", "A", 7)
            + repeat("t", "a", "b", "B", 3)
            + [("u", "a", "b", "NONE")]
        )
        fit = fit_bradley_terry(with_none)
        np.testing.assert_allclose(fit.scores.p("a"), 0.7, rtol=1e-9)
        assert fit.comparison_likelihoods.shape == (10,)

    def test_none_half_win_closed_form(self):
        # one decided a-win plus one NONE shared half-half: strengths 1.5 : 0.5
        ds = make_dataset([("s1", "a", "b", "A"), ("s2", "a", "b", "NONE")])
        fit = fit_bradley_terry(ds, BTConfig(none_half_win=True))
        np.testing.assert_allclose(fit.scores.p("a"), 0.75, rtol=1e-9)


class TestBootstrap:
    def test_same_seed_reproduces(self):
        cfg = BTConfig(bootstrap_samples=60, seed=11)
        s1 = bootstrap_uncertainties(TRIANGLE, cfg)
        s2 = bootstrap_uncertainties(TRIANGLE, cfg)
        for ident in "abc":
            assert s1.delta_p(ident) == s2.delta_p(ident)
            # central values are the full-data MLE
            np.testing.assert_allclose(s1.p(ident), TRIANGLE_P[ident], atol=1e-8)

    def test_seed_changes_resamples(self):
        a = bootstrap_uncertainties(TRIANGLE, BTConfig(bootstrap_samples=60, seed=1))
        b = bootstrap_uncertainties(TRIANGLE, BTConfig(bootstrap_samples=60, seed=2))
        assert any(a.delta_p(i) != b.delta_p(i) for i in "abc")

    def test_uncertainty_shrinks_with_data(self):
        small = make_dataset(
            repeat("s", "a", "b", "A", 6) + repeat("t", "a", "b", "B", 4)
        )
        big = make_dataset(
            repeat("s", "a", "b", "A", 600) + repeat("t", "a", "b", "B", 400)
        )
        cfg = BTConfig(bootstrap_samples=200, seed=3)
        d_small = bootstrap_uncertainties(small, cfg).delta_p("a")
        d_big = bootstrap_uncertainties(big, cfg).delta_p("a")
        assert d_big < d_small / 3

    def test_disconnected_resamples_are_regularized(self):
        # single bridge record c>a: resamples that miss it are disconnected
        # and must fall back to the pseudo-count refit instead of failing
        ds = make_dataset(
            repeat("s", "a", "b", "A", 8)
            + repeat("t", "b", "a", "A", 8)
            + [("u", "c", "a", "A"), ("v", "a", "c", "A")]
        )
        scores = bootstrap_uncertainties(ds, BTConfig(bootstrap_samples=80, seed=0))
        for ident in "abc":
            d = scores.delta_p(ident)
            assert d is not None and np.isfinite(d) and d >= 0

    def test_subject_resampling(self):
        cfg = BTConfig(bootstrap_samples=60, seed=4, bootstrap_unit="subjects")
        scores = bootstrap_uncertainties(TRIANGLE, cfg)
        assert all(scores.delta_p(i) is not None for i in "abc")

    def test_record_and_subject_units_differ(self):
        # multiple records per subject make the two resampling grains distinct
        rows = []
        rng_choices = ["A", "A", "B", "A", "B", "A", "A", "B", "A", "B", "A", "A"]
        subjects = ["s1", "s2", "s3"]
        k = 0
        for subj in subjects:
            for a, b in [("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")]:
                rows.append((subj, a, b, rng_choices[k % len(rng_choices)]))
                k += 1
        ds = make_dataset(rows)
        by_rec = bootstrap_uncertainties(ds, BTConfig(bootstrap_samples=80, seed=5))
        by_subj = bootstrap_uncertainties(
            ds, BTConfig(bootstrap_samples=80, seed=5, bootstrap_unit="subjects")
        )
        assert any(by_rec.delta_p(i) != by_subj.delta_p(i) for i in "abc")
