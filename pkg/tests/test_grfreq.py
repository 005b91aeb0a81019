"""Cumulative frequency curves and the 1/(a + x^nu/b) saturating fit.

Recovery oracles: curves generated exactly from known (a, b, nu) triples must
refit to those triples; the a = 0 limit is cross-checked against the
independent log-log regression module.
"""

import numpy as np
import pytest

from renown.correlate import loglog_fit
from renown.data import DataError, MetricDataset, MetricKind, MetricSnapshot
from renown.grfreq import (
    FrequencyCurve,
    GRFit,
    cumulative_frequency,
    eval_gr,
    fit_gutenberg_richter,
    frequency_curve,
)


def exact_curve(a, b, nu, lo_exp=0, hi_exp=4.3, n=25):
    xs = np.unique(np.round(np.logspace(lo_exp, hi_exp, n)).astype(int))
    f = 1.0 / (a + xs**nu / b)
    return FrequencyCurve(points=tuple((int(x), float(v)) for x, v in zip(xs, f)))


class TestFrequencyCurve:
    def test_hand_counted_curve(self):
        curve = frequency_curve([5, 3, 3, 1], annualization_factor=2.0)
        assert curve.points == ((1, 8.0), (3, 6.0), (5, 2.0))

    def test_x_strictly_increasing_f_non_increasing(self):
        with pytest.raises(ValueError):
            FrequencyCurve(points=((1, 2.0), (1, 1.0)))
        with pytest.raises(ValueError):
            FrequencyCurve(points=((1, 1.0), (2, 2.0)))
        with pytest.raises(ValueError):
            FrequencyCurve(points=((0, 1.0),))

    def test_from_metric_dataset(self):
        snaps = tuple(
            MetricSnapshot(id=f"i{k}", kind=MetricKind.WE, value=v)
            for k, v in enumerate([10, 40, 40, 200])
        )
        ds = MetricDataset(
            name="d", snapshots=snaps, coverage_months=1.0, sample_fraction=0.125
        )
        curve = cumulative_frequency(ds, MetricKind.WE)
        # factor (12/1)/0.125 = 96 applied to descending counts 4,3,1
        assert curve.annualization_factor == pytest.approx(96.0)
        np.testing.assert_allclose(curve.x, [10, 40, 200])
        np.testing.assert_allclose(curve.f, [384.0, 288.0, 96.0])

    def test_missing_kind_rejected(self):
        ds = MetricDataset(name="d", snapshots=(), coverage_months=1, sample_fraction=1)
        with pytest.raises(DataError):
            cumulative_frequency(ds, MetricKind.WE)


class TestEvalGr:
    def test_hand_value(self):
        fit = GRFit(a=0.25, b=100.0, nu=2.0, residual=0.0)
        assert eval_gr(fit, 10) == pytest.approx(0.8, rel=1e-12)

    def test_published_scale_value(self):
        # frequency of events at WE >= 1000 for the saturating curve with
        # a = 0.0079, b = 3e6, nu = 1.5
        fit = GRFit(a=0.0079, b=3e6, nu=1.5, residual=0.0)
        assert eval_gr(fit, 1000) == pytest.approx(54.22721317116054, rel=1e-12)

    def test_vector_and_scalar(self):
        fit = GRFit(a=1.0, b=1.0, nu=1.0, residual=0.0)
        assert isinstance(eval_gr(fit, 2), float)
        np.testing.assert_allclose(eval_gr(fit, np.array([2.0, 2.0])), [1 / 3, 1 / 3])

    def test_requires_positive_x(self):
        fit = GRFit(a=1.0, b=1.0, nu=1.0, residual=0.0)
        with pytest.raises(ValueError):
            eval_gr(fit, 0)


class TestFit:
    @pytest.mark.parametrize(
        "a,b,nu",
        [(0.0079, 3e6, 1.5), (0.00013, 8e6, 1.7), (0.0011, 4e6, 1.7)],
    )
    def test_recovers_exact_curves(self, a, b, nu):
        fit = fit_gutenberg_richter(exact_curve(a, b, nu))
        assert fit.a == pytest.approx(a, rel=1e-5)
        assert fit.b == pytest.approx(b, rel=1e-5)
        assert fit.nu == pytest.approx(nu, rel=1e-6)
        assert fit.residual < 1e-9

    def test_pure_power_law_matches_loglog_regression(self):
        b, nu = 5e5, 1.6
        curve = exact_curve(0.0, b, nu, lo_exp=1, hi_exp=4, n=20)
        fit = fit_gutenberg_richter(curve)
        assert fit.a == 0.0
        assert fit.nu == pytest.approx(nu, rel=1e-8)
        assert fit.b == pytest.approx(b, rel=1e-6)
        # f = b * x^-nu exactly, so the independent regression sees slope -nu
        reg = loglog_fit(list(zip(curve.x, curve.f)))
        assert reg.slope == pytest.approx(-nu, rel=1e-10)
        assert reg.r == pytest.approx(-1.0, abs=1e-12)

    def test_fit_insensitive_to_start(self):
        # a multi-start search should land on the same optimum from any data
        # ordering of the same points
        curve = exact_curve(0.002, 1e6, 1.66)
        f1 = fit_gutenberg_richter(curve)
        f2 = fit_gutenberg_richter(
            FrequencyCurve(points=curve.points, annualization_factor=1.0)
        )
        assert f1.nu == pytest.approx(f2.nu, rel=1e-12)

    def test_noisy_curve_still_close(self):
        rng = np.random.default_rng(3)
        xs = np.unique(np.round(np.logspace(0.5, 4, 30)).astype(int))
        f = 1.0 / (0.005 + xs**1.6 / 2e6) * np.exp(rng.normal(0, 0.05, xs.size))
        f = np.maximum.accumulate(f[::-1])[::-1]  # keep non-increasing
        curve = FrequencyCurve(points=tuple((int(x), float(v)) for x, v in zip(xs, f)))
        fit = fit_gutenberg_richter(curve)
        assert fit.nu == pytest.approx(1.6, abs=0.15)
        assert 0 < fit.residual < 0.1

    def test_too_few_points_rejected(self):
        curve = FrequencyCurve(points=((1, 3.0), (2, 2.0), (3, 1.0)))
        with pytest.raises(ValueError):
            fit_gutenberg_richter(curve)

    def test_grfit_invariants(self):
        with pytest.raises(ValueError):
            GRFit(a=-0.1, b=1.0, nu=1.0, residual=0.0)
        with pytest.raises(ValueError):
            GRFit(a=0.0, b=0.0, nu=1.0, residual=0.0)
        with pytest.raises(ValueError):
            GRFit(a=0.0, b=1.0, nu=-1.0, residual=0.0)
