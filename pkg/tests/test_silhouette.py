import numpy as np
import pytest

from clusterkit.dataset import Dataset, Partition, pairwise_distances
from clusterkit.errors import LabelMismatch
from clusterkit.indices import compute_index, silhouette

from oracles import naive_silhouette


def random_instance(rng, n_max=200, allow_noise=True):
    n = int(rng.integers(6, n_max + 1))
    m = int(rng.integers(1, 5))
    points = rng.normal(0.0, 1.0, size=(n, m))
    k = int(rng.integers(2, 6))
    labels = rng.integers(0, k, size=n)
    if allow_noise and rng.random() < 0.5:
        labels[rng.random(n) < 0.1] = -1
    # keep at least two clusters populated
    labels[0], labels[1] = 0, 1
    return Dataset(points), Partition.from_labels(labels)


def test_matches_naive_reference_on_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(50):
        data, part = random_instance(rng)
        result = silhouette(pairwise_distances(data), part)
        ref_points, ref_avg = naive_silhouette(data.values.tolist(), part.labels.tolist())
        assert result.average == pytest.approx(ref_avg, abs=1e-9)
        for got, want in zip(result.per_point, ref_points):
            if want is None:
                assert np.isnan(got)
            else:
                assert got == pytest.approx(want, abs=1e-9)


def test_hand_example_two_pairs():
    # clusters {0,1} and {4,5} on a line; for the point at 1: a = 1 and
    # b = (3 + 4) / 2, for the point at 0: a = 1 and b = (4 + 5) / 2
    data = Dataset([[0.0], [1.0], [4.0], [5.0]])
    part = Partition([0, 0, 1, 1])
    result = silhouette(pairwise_distances(data), part)
    per = result.per_point
    assert per[1] == pytest.approx((3.5 - 1.0) / 3.5)
    assert per[0] == pytest.approx((4.5 - 1.0) / 4.5)
    assert result.average == pytest.approx((2.5 / 3.5 + 3.5 / 4.5) / 2)


def test_singleton_cluster_convention():
    data = Dataset([[0.0], [1.0], [1.2]])
    part = Partition([0, 1, 1])
    result = silhouette(pairwise_distances(data), part)
    assert result.per_point[0] == 0.0


def test_undefined_below_two_clusters():
    data = Dataset([[0.0], [1.0]])
    result = silhouette(pairwise_distances(data), Partition([0, 0]))
    assert result.average is None
    assert np.all(np.isnan(result.per_point))


def test_noise_rows_are_nan_and_excluded():
    data = Dataset([[0.0], [0.1], [5.0], [5.1], [100.0]])
    part = Partition([0, 0, 1, 1, -1])
    result = silhouette(pairwise_distances(data), part)
    assert np.isnan(result.per_point[4])
    clean = silhouette(
        pairwise_distances(Dataset(data.values[:4])), Partition([0, 0, 1, 1])
    )
    # the far-away noise point changed nothing for the clustered rows
    np.testing.assert_allclose(result.per_point[:4], clean.per_point)


def test_label_count_mismatch():
    data = Dataset([[0.0], [1.0], [2.0]])
    with pytest.raises(LabelMismatch):
        silhouette(pairwise_distances(data), Partition([0, 1]))


def test_compute_index_wrapper():
    data = Dataset([[0.0], [0.1], [5.0], [5.1]])
    part = Partition([0, 0, 1, 1])
    score = compute_index("silhouette", data, part)
    assert score.name == "silhouette"
    assert score.direction == "higher_better"
    assert score.value == pytest.approx(
        silhouette(pairwise_distances(data), part).average
    )
    with pytest.raises(ValueError):
        compute_index("gamma", data, part)
