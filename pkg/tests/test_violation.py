import math

import numpy as np
import pytest

from benford_xy.errors import EmptyHistogramError
from benford_xy.firstdigit import DigitHistogram, ReferenceDistribution
from benford_xy.violation import Metric, violation

BENFORD_P = [math.log10(1.0 + 1.0 / d) for d in range(1, 10)]


def _hist(counts):
    counts = tuple(int(c) for c in counts)
    return DigitHistogram(counts=counts, total=sum(counts), skipped=0)


class TestMetricValues:
    def test_uniform_counts_against_uniform_law_all_zero(self):
        h = _hist([100] * 9)
        u = ReferenceDistribution.uniform()
        for m in Metric:
            assert violation(h, u, m) == pytest.approx(0.0, abs=1e-12)

    def test_uniform_counts_against_benford(self):
        h = _hist([100] * 9)
        b = ReferenceDistribution.benford()
        mean_ref = sum(abs(100.0 - 900.0 * p) / (900.0 * p) for p in BENFORD_P)
        sd_ref = math.sqrt(sum((1.0 / 9.0 - p) ** 2 for p in BENFORD_P)) / 3.0
        bd_ref = -math.log(sum(math.sqrt(p / 9.0) for p in BENFORD_P))
        assert violation(h, b, Metric.MEAN_DEVIATION) == pytest.approx(mean_ref, rel=1e-12)
        assert violation(h, b, Metric.STANDARD_DEVIATION) == pytest.approx(sd_ref, rel=1e-12)
        assert violation(h, b, Metric.BHATTACHARYA) == pytest.approx(bd_ref, rel=1e-12)
        assert mean_ref == pytest.approx(5.8365, abs=1e-4)

    def test_empty_histogram_rejected(self):
        h = DigitHistogram(counts=(0,) * 9, total=0, skipped=5)
        for m in Metric:
            with pytest.raises(EmptyHistogramError):
                violation(h, ReferenceDistribution.benford(), m)

    def test_near_perfect_benford_sample_scores_near_zero(self):
        n = 9_000_000
        counts = [round(p * n) for p in BENFORD_P]
        h = _hist(counts)
        b = ReferenceDistribution.benford()
        assert violation(h, b, Metric.MEAN_DEVIATION) < 1e-5
        assert violation(h, b, Metric.STANDARD_DEVIATION) < 1e-7
        assert violation(h, b, Metric.BHATTACHARYA) < 1e-12


class TestScaleInvariance:
    @pytest.mark.parametrize("metric", list(Metric))
    def test_sevenfold_sample_size(self, metric):
        counts = [120, 80, 64, 50, 44, 38, 33, 30, 27]
        h1 = _hist(counts)
        h7 = _hist([7 * c for c in counts])
        b = ReferenceDistribution.benford()
        assert violation(h7, b, metric) == pytest.approx(violation(h1, b, metric), rel=1e-12)

    def test_counts_mode_restores_sample_size_dependence(self):
        counts = [120, 80, 64, 50, 44, 38, 33, 30, 27]
        h = _hist(counts)
        b = ReferenceDistribution.benford()
        sd_freq = violation(h, b, Metric.STANDARD_DEVIATION)
        sd_counts = violation(h, b, Metric.STANDARD_DEVIATION, counts_mode=True)
        assert sd_counts == pytest.approx(h.total * sd_freq, rel=1e-12)
        # mean deviation is a ratio of counts either way
        assert violation(h, b, Metric.MEAN_DEVIATION, counts_mode=True) == pytest.approx(
            violation(h, b, Metric.MEAN_DEVIATION), rel=1e-12
        )


class TestAxioms:
    @pytest.mark.parametrize("metric", list(Metric))
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_nonnegative_on_random_histograms(self, metric, seed):
        rng = np.random.default_rng(seed)
        h = _hist(rng.integers(1, 500, 9))
        for dist in (
            ReferenceDistribution.benford(),
            ReferenceDistribution.uniform(),
            ReferenceDistribution.poisson(4.0),
        ):
            assert violation(h, dist, metric) >= 0.0

    @pytest.mark.parametrize("metric", list(Metric))
    def test_zero_iff_match_for_uniform(self, metric):
        u = ReferenceDistribution.uniform()
        assert violation(_hist([50] * 9), u, metric) == pytest.approx(0.0, abs=1e-12)
        off = [50] * 9
        off[0], off[8] = 60, 40
        assert violation(_hist(off), u, metric) > 1e-3

    def test_bhattacharya_grows_as_mass_concentrates(self):
        b = ReferenceDistribution.benford()
        values = []
        for k in range(5):
            counts = [100 - 20 * k] * 8 + [100 + 160 * k]
            values.append(violation(_hist(counts), b, Metric.BHATTACHARYA))
        assert all(x < y for x, y in zip(values, values[1:]))

    def test_mean_deviation_dominates_for_coarse_histograms(self):
        # the count-ratio metric reacts to the rare digits much more strongly
        h = _hist([200, 100, 60, 40, 30, 25, 20, 15, 10])
        b = ReferenceDistribution.benford()
        assert violation(h, b, Metric.MEAN_DEVIATION) > violation(
            h, b, Metric.STANDARD_DEVIATION
        )
        assert violation(h, b, Metric.MEAN_DEVIATION) > violation(h, b, Metric.BHATTACHARYA)
