import numpy as np
import pytest

from clusterkit.dataset import Dataset, Partition
from clusterkit.errors import LabelMismatch
from clusterkit.indices import cdbw
from clusterkit.synthetic import four_blob_dataset, two_blob_dataset


def test_prefers_true_blobs_over_shuffled_labels():
    data, truth = four_blob_dataset(n=200, seed=2)
    rng = np.random.default_rng(0)
    shuffled = Partition(rng.permutation(truth.labels))
    good = cdbw(data, truth).value
    bad = cdbw(data, shuffled).value
    assert good > bad * 5  # structure should dominate, not just edge it out


def test_separation_sensitivity():
    # same blob shapes, growing gap => CDbw should grow with separation
    rng = np.random.default_rng(3)
    blob = rng.normal(0.0, 0.05, size=(60, 2))
    values = []
    for gap in (0.5, 2.0, 8.0):
        data = Dataset(np.vstack((blob, blob + [gap, 0.0])))
        part = Partition(np.repeat([0, 1], 60))
        values.append(cdbw(data, part).value)
    assert values[0] < values[1] < values[2]


def test_positive_when_defined():
    data, truth = two_blob_dataset(n=100, seed=8)
    score = cdbw(data, truth)
    assert score.value is not None and score.value > 0
    assert score.direction == "higher_better"


def test_params_and_determinism():
    data, truth = two_blob_dataset(n=80, seed=1)
    a = cdbw(data, truth)
    b = cdbw(data, truth)
    assert a.value == b.value
    assert a.params["r"] == 10
    assert a.params["shrink_factors"] == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    small = cdbw(data, truth, r=3)
    assert small.params["r"] == 3
    assert small.value is not None


def test_representative_count_clamped_to_cluster_size():
    # clusters of 4 points with the default r=10 must still work
    data = Dataset(
        [[0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [0.1, 0.1],
         [5.0, 5.0], [5.1, 5.0], [5.0, 5.1], [5.1, 5.1]]
    )
    part = Partition(np.repeat([0, 1], 4))
    score = cdbw(data, part)
    assert score.value is not None and score.value > 0


def test_undefined_and_validation():
    data = Dataset([[0.0], [1.0], [2.0]])
    assert cdbw(data, Partition([0, 0, 0])).value is None
    with pytest.raises(LabelMismatch):
        cdbw(data, Partition([0, 1]))
    part = Partition([0, 0, 1])
    with pytest.raises(ValueError):
        cdbw(data, part, r=0)
    with pytest.raises(ValueError):
        cdbw(data, part, shrink_factors=(0.5, 1.0))
    with pytest.raises(ValueError):
        cdbw(data, part, shrink_factors=())


def test_noise_rows_ignored():
    data, truth = two_blob_dataset(n=100, seed=4)
    with_noise = Dataset(np.vstack((data.values, [[0.5, 0.5]])))
    part = Partition.from_labels(list(truth.labels) + [-1])
    base = cdbw(data, truth).value
    noised = cdbw(with_noise, part).value
    # a single distant noise row must not move the score materially
    assert noised == pytest.approx(base, rel=0.05)
