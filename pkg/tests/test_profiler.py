import math

import numpy as np
import pytest

from clusterkit.dataset import Dataset
from clusterkit.errors import DataError, MissingComplexity
from clusterkit.profiler import (
    ComplexityExpr,
    DimensionCategory,
    NoiseVerdict,
    SizeCategory,
    add_noise,
    dimension_category,
    distance_to_mean,
    dump_histograms,
    noise_assessment,
    rank_computing_velocity,
    size_category,
)
from clusterkit.synthetic import two_blob_dataset, uniform_cloud_dataset


class Row:
    """Minimal duck-typed knowledge row for ranking tests."""

    def __init__(self, name, *expressions):
        self.name = name
        self._exprs = [ComplexityExpr(e) for e in expressions]

    def complexity_expressions(self):
        return list(self._exprs)


# --- complexity expressions --------------------------------------------------


def test_expression_evaluation():
    expr = ComplexityExpr("n*k*m")
    assert expr.evaluate(1000, 2, 2) == pytest.approx(4000.0)
    logn = ComplexityExpr("n*(1+log(n))")
    assert logn.evaluate(100, 1, 1) == pytest.approx(100 * (1 + math.log(100)))
    with pytest.raises(DataError):
        expr.evaluate(0, 1, 1)


def test_expression_validation():
    with pytest.raises(DataError):
        ComplexityExpr("n*q")  # unknown symbol
    with pytest.raises(DataError):
        ComplexityExpr("n +* k")  # unparseable
    with pytest.raises(DataError):
        ComplexityExpr("n - 5")  # negative at the probe point
    with pytest.raises(DataError):
        ComplexityExpr("n*log(n)")  # zero at n=1
    ComplexityExpr("n*(1+log(n))")  # shifted form is fine


def test_routine1_known_answer():
    # {n*k*m, n^2} at n=1000, m=2: steps/sample 4 vs 1000 at k=2,
    # then 2000 vs 1000 at k=1000
    data = Dataset(np.zeros((1000, 2)) + np.arange(1000)[:, None])
    rows = [Row("linear", "n*k*m"), Row("quadratic", "n**2")]
    rankings = rank_computing_velocity(data, rows, k_values=(2, 1000))
    by_k = {r.k: r.ranking for r in rankings}
    assert [name for name, _ in by_k[2]] == ["linear", "quadratic"]
    assert by_k[2][0][1] == pytest.approx(4.0)
    assert by_k[2][1][1] == pytest.approx(1000.0)
    assert [name for name, _ in by_k[1000]] == ["quadratic", "linear"]
    assert by_k[1000][1][1] == pytest.approx(2000.0)


def test_ranking_ties_and_conflicts():
    data = Dataset(np.arange(10.0)[:, None])
    tied = rank_computing_velocity(data, [Row("b", "n"), Row("a", "n")], k_values=(2,))
    assert [name for name, _ in tied[0].ranking] == ["a", "b"]  # name breaks ties
    # a conflicted row is scored by its worst candidate
    conflicted = rank_computing_velocity(
        data, [Row("cob", "n**2", "n"), Row("lin", "n")], k_values=(2,)
    )
    ranking = dict(conflicted[0].ranking)
    assert ranking["cob"] == pytest.approx(10.0)
    with pytest.raises(MissingComplexity):
        rank_computing_velocity(data, [Row("empty")], k_values=(2,))
    with pytest.raises(DataError):
        rank_computing_velocity(data, [Row("lin", "n")], k_values=())
    with pytest.raises(DataError):
        rank_computing_velocity(data, [Row("lin", "n")], k_values=(0,))


# --- categorical profiling ----------------------------------------------------


def test_size_category_thresholds_exact():
    def at(n):
        return size_category(Dataset(np.zeros((n, 1)) + np.arange(n)[:, None]))

    assert at(50) is SizeCategory.SMALL
    assert at(51) is SizeCategory.MEDIUM
    assert at(10000) is SizeCategory.MEDIUM
    assert at(10001) is SizeCategory.LARGE


def test_dimension_category_thresholds_exact():
    assert dimension_category(Dataset(np.ones((3, 10)))) is DimensionCategory.LOW
    assert dimension_category(Dataset(np.ones((3, 11)))) is DimensionCategory.HIGH


# --- noise heuristic -----------------------------------------------------------


def test_add_noise_block_layout():
    data = Dataset([[0.0, 10.0], [1.0, 20.0], [0.5, 15.0]])
    out = add_noise(data, seed=1)
    assert out.n == 6
    np.testing.assert_array_equal(out.values[:3], data.values)
    noise = out.values[3:]
    assert np.all(noise[:, 0] >= 0.0) and np.all(noise[:, 0] <= 1.0)
    assert np.all(noise[:, 1] >= 10.0) and np.all(noise[:, 1] <= 20.0)


def test_distance_to_mean_sorted():
    data = Dataset([[0.0], [10.0], [2.0]])
    gaps = distance_to_mean(data)
    assert np.all(np.diff(gaps) >= 0)
    assert gaps[-1] == pytest.approx(6.0)  # mean is 4.0


def test_noise_verdicts_on_reference_generators():
    blob, _ = two_blob_dataset(n=400, seed=0)
    report = noise_assessment(blob, seed=0)
    assert report.verdict is NoiseVerdict.LIKELY_CLEAN
    assert report.ks_statistic >= 0.25

    cloud = uniform_cloud_dataset(n=400, seed=0)
    report = noise_assessment(cloud, seed=0)
    assert report.verdict is NoiseVerdict.LIKELY_NOISY
    assert report.ks_statistic <= 0.10


def test_noise_small_sample_inconclusive():
    small = Dataset(np.random.default_rng(0).normal(0, 1, size=(12, 2)))
    report = noise_assessment(small, seed=0)
    assert report.verdict is NoiseVerdict.INCONCLUSIVE
    assert report.n == 12


def test_noise_report_shape():
    data, _ = two_blob_dataset(n=100, seed=3)
    report = noise_assessment(data, seed=5)
    # Sturges over the pooled 3n values
    want_bins = math.ceil(math.log2(300) + 1)
    assert report.hist_original.size == want_bins
    assert report.bin_edges.size == want_bins + 1
    assert report.hist_original.sum() == 100
    assert report.hist_noised.sum() == 200
    assert report.seed == 5
    assert report.heuristic is True
    assert report.thresholds == {"noisy_max": 0.10, "clean_min": 0.25}
    with pytest.raises(DataError):
        noise_assessment(data, noisy_max=0.5, clean_min=0.3)


def test_dump_histograms(tmp_path):
    data, _ = two_blob_dataset(n=60, seed=1)
    report = noise_assessment(data)
    out = tmp_path / "hist.dat"
    dump_histograms(report, out)
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == report.hist_original.size + 1
