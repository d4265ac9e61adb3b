import itertools

import numpy as np
import pytest

from clusterkit.clusterers import (
    DbscanConfig,
    KMeansConfig,
    dbscan,
    generate_two_ring_dataset,
    kmeans,
    kmeans_fit,
)
from clusterkit.dataset import Dataset, Partition
from clusterkit.errors import DataError, KTooLarge
from clusterkit.synthetic import four_blob_dataset, two_blob_dataset


def same_partition(a: Partition, b: Partition) -> bool:
    """Equality up to cluster renaming; noise must map to noise."""
    fwd, back = {}, {}
    for la, lb in zip(a.labels, b.labels):
        la, lb = int(la), int(lb)
        if (la < 0) != (lb < 0):
            return False
        if la < 0:
            continue
        if fwd.setdefault(la, lb) != lb or back.setdefault(lb, la) != la:
            return False
    return True


# --- k-means ---------------------------------------------------------------


def test_kmeans_recovers_separated_blobs():
    data, truth = two_blob_dataset(n=200, seed=3)
    part = kmeans(data, KMeansConfig(k=2, seed=0))
    assert same_partition(part, truth)
    data4, truth4 = four_blob_dataset(n=200, seed=5)
    part4 = kmeans(data4, KMeansConfig(k=4, seed=0))
    assert same_partition(part4, truth4)


def test_kmeans_unit_square_against_enumeration():
    # 4 corners of the unit square, k=2. Small enough to enumerate every
    # 2-partition and compute its WCSS by hand; the optimum pairs adjacent
    # corners and costs 2 * (2 * 0.5^2) = 1.0.
    points = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]

    def wcss_of(groups):
        total = 0.0
        for group in groups:
            cx = sum(p[0] for p in group) / len(group)
            cy = sum(p[1] for p in group) / len(group)
            total += sum((p[0] - cx) ** 2 + (p[1] - cy) ** 2 for p in group)
        return total

    best = min(
        wcss_of([[points[i] for i in left], [p for j, p in enumerate(points) if j not in left]])
        for size in (1, 2)
        for left in itertools.combinations(range(4), size)
    )
    assert best == pytest.approx(1.0)

    run = kmeans_fit(Dataset(points), KMeansConfig(k=2, seed=0))
    assert run.wcss == pytest.approx(best, abs=1e-12)


def test_kmeans_k1_and_wcss_history():
    data = Dataset([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]])
    run = kmeans_fit(data, KMeansConfig(k=1, seed=0))
    assert run.partition.k == 1
    np.testing.assert_allclose(run.centroids[0], [1.0, 1.0 / 3.0])
    history = run.wcss_history
    assert all(b <= a + 1e-12 for a, b in zip(history, history[1:]))


def test_kmeans_validation():
    data = Dataset([[0.0], [1.0]])
    with pytest.raises(DataError):
        kmeans(data, KMeansConfig(k=0))
    with pytest.raises(KTooLarge):
        kmeans(data, KMeansConfig(k=3))
    with pytest.raises(DataError):
        kmeans(data, KMeansConfig(k=1, restarts=0))
    # more clusters than distinct points cannot be satisfied
    dup = Dataset([[1.0, 1.0]] * 5)
    with pytest.raises(DataError):
        kmeans(dup, KMeansConfig(k=2, seed=0))


def test_kmeans_deterministic_per_seed():
    data, _ = two_blob_dataset(n=60, seed=9)
    a = kmeans(data, KMeansConfig(k=3, seed=42))
    b = kmeans(data, KMeansConfig(k=3, seed=42))
    assert np.array_equal(a.labels, b.labels)


def test_kmeans_every_row_labelled():
    data, _ = four_blob_dataset(n=120, seed=1)
    part = kmeans(data, KMeansConfig(k=5, seed=2))
    assert part.noise_count == 0
    assert part.n == data.n
    assert part.k == 5


# --- DBSCAN ----------------------------------------------------------------


def test_dbscan_two_groups_hand_checkable():
    # two groups of 3 points each, intra-gap 0.05, inter-gap 1.0
    rows = [[0.0], [0.05], [0.1], [1.1], [1.15], [1.2]]
    part = dbscan(Dataset(rows), DbscanConfig(eps=0.1, min_pts=2))
    assert part.k == 2
    assert part.noise_count == 0
    assert same_partition(part, Partition([0, 0, 0, 1, 1, 1]))


def test_dbscan_isolated_point_is_noise():
    rows = [[0.0, 0.0], [0.05, 0.0], [0.0, 0.05], [10.0, 10.0]]
    part = dbscan(Dataset(rows), DbscanConfig(eps=0.1, min_pts=2))
    assert part.labels[3] == Partition.NOISE
    assert part.k == 1


def test_dbscan_permutation_invariance():
    data, _ = two_blob_dataset(n=80, seed=4)
    base = dbscan(data, DbscanConfig(eps=0.15, min_pts=3))
    rng = np.random.default_rng(0)
    for _ in range(20):
        order = rng.permutation(data.n)
        shuffled = dbscan(Dataset(data.values[order]), DbscanConfig(eps=0.15, min_pts=3))
        unshuffled = np.empty(data.n, dtype=int)
        unshuffled[order] = shuffled.labels
        # exact labels, not merely up-to-renaming
        assert np.array_equal(unshuffled, base.labels)


def test_dbscan_validation():
    data = Dataset([[0.0], [1.0]])
    with pytest.raises(DataError):
        dbscan(data, DbscanConfig(eps=-1.0, min_pts=2))
    with pytest.raises(DataError):
        dbscan(data, DbscanConfig(eps=0.1, min_pts=0))
    with pytest.raises(DataError):
        dbscan(data, DbscanConfig(eps=0.1, min_pts=2, metric="cosine"))


# --- two-ring generator ------------------------------------------------------


def test_two_ring_shape_and_truth():
    data, truth = generate_two_ring_dataset(n=300, seed=0)
    assert data.n == 300 and data.m == 2
    assert truth.k == 2 and truth.noise_count == 0
    assert list(truth.sizes()) == [225, 75]
    inner = data.values[truth.labels == 0] - 0.5
    outer = data.values[truth.labels == 1] - 0.5
    inner_radii = np.linalg.norm(inner, axis=1)
    outer_radii = np.linalg.norm(outer, axis=1)
    assert abs(inner_radii.mean() - 0.25) < 0.01
    assert abs(outer_radii.mean() - 0.5) < 0.01
    assert inner_radii.std() < 0.05 and outer_radii.std() < 0.05
    # centered in the unit square; jitter may spill a hair past the edges
    assert np.all(np.abs(data.values - 0.5) <= 0.55)


def test_two_ring_inter_ring_gap_exceeds_eps():
    for seed in range(5):
        data, truth = generate_two_ring_dataset(n=300, seed=seed)
        inner = data.values[truth.labels == 0]
        outer = data.values[truth.labels == 1]
        cross = np.sqrt(((inner[:, None, :] - outer[None, :, :]) ** 2).sum(-1))
        assert cross.min() > 0.1


def test_two_ring_dbscan_recovery():
    data, truth = generate_two_ring_dataset(n=300, seed=0)
    part = dbscan(data, DbscanConfig(eps=0.1, min_pts=2))
    assert same_partition(part, truth)


def test_two_ring_validation():
    with pytest.raises(DataError):
        generate_two_ring_dataset(n=301)
    with pytest.raises(DataError):
        generate_two_ring_dataset(n=18)
