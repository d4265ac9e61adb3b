"""Reference clusterers used by the index experiments.

Both are deliberately plain implementations with hard determinism contracts:
k-means is seeded Lloyd with k-means++ initialization and restart selection
by WCSS; DBSCAN scans rows in a canonical coordinate order so that border
ties resolve identically no matter how the input rows were permuted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from ._numeric import column_mean
from .dataset import Dataset, Partition
from .errors import DataError, KTooLarge


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iters: int = 300
    seed: int = 0
    restarts: int = 10


@dataclass(frozen=True)
class DbscanConfig:
    eps: float
    min_pts: int
    metric: str = "euclidean"


@dataclass(frozen=True, eq=False)
class KMeansRun:
    """Best restart of a k-means fit, with per-iteration WCSS history."""

    partition: Partition
    centroids: np.ndarray
    wcss: float
    wcss_history: list[float]


def _seed_centroids(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ style seeding: spread initial centroids by squared distance."""
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    closest_sq = ((points - points[chosen[0]]) ** 2).sum(axis=1)
    while len(chosen) < k:
        total = closest_sq.sum()
        if total > 0:
            idx = int(rng.choice(n, p=closest_sq / total))
        else:  # all remaining mass on duplicates of chosen points
            idx = int(rng.integers(n))
        chosen.append(idx)
        closest_sq = np.minimum(closest_sq, ((points - points[idx]) ** 2).sum(axis=1))
    return points[chosen].copy()


def _lloyd_once(
    points: np.ndarray, k: int, max_iters: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, float, list[float]]:
    n = points.shape[0]
    centroids = _seed_centroids(points, k, rng)
    labels = np.full(n, -1)
    history: list[float] = []
    for _ in range(max_iters):
        sq = cdist(points, centroids, metric="sqeuclidean")
        new_labels = np.argmin(sq, axis=1)

        # Empty-cluster repair: re-seed at the point farthest from its
        # assigned centroid, excluding points already used for repair.
        empties = [j for j in range(k) if not np.any(new_labels == j)]
        if empties:
            assigned_sq = sq[np.arange(n), new_labels].copy()
            for j in empties:
                far = int(np.argmax(assigned_sq))
                centroids[j] = points[far]
                assigned_sq[far] = -np.inf
            sq = cdist(points, centroids, metric="sqeuclidean")
            new_labels = np.argmin(sq, axis=1)

        for j in range(k):
            members = new_labels == j
            if np.any(members):
                centroids[j] = column_mean(points[members])
        wcss = float(((points - centroids[new_labels]) ** 2).sum())
        history.append(wcss)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return labels, centroids, history[-1], history


def kmeans_fit(data: Dataset, config: KMeansConfig) -> KMeansRun:
    """Run Lloyd k-means with restarts; returns the lowest-WCSS run."""
    if config.k < 1:
        raise DataError(f"k must be >= 1, got {config.k}")
    if config.k > data.n:
        raise KTooLarge(f"k={config.k} exceeds n={data.n}")
    if config.restarts < 1:
        raise DataError("restarts must be >= 1")
    rng = np.random.default_rng(config.seed)
    best: KMeansRun | None = None
    for _ in range(config.restarts):
        labels, centroids, wcss, history = _lloyd_once(
            data.values, config.k, config.max_iters, rng
        )
        if best is None or wcss < best.wcss:
            best = KMeansRun(
                partition=Partition.from_labels(labels),
                centroids=centroids,
                wcss=wcss,
                wcss_history=history,
            )
    assert best is not None
    if best.partition.k != config.k:
        # only reachable when there are fewer distinct points than k
        raise DataError(
            f"could not form {config.k} non-empty clusters "
            f"(got {best.partition.k}); too few distinct points"
        )
    return best


def kmeans(data: Dataset, config: KMeansConfig) -> Partition:
    """Partition rows into exactly k non-empty clusters."""
    return kmeans_fit(data, config).partition


def dbscan(data: Dataset, config: DbscanConfig) -> Partition:
    """Density clustering; unreached points get the noise label -1.

    Rows are visited in lexicographic coordinate order and the result is
    mapped back, so the labelling (cluster ids included) is independent of
    the input row permutation. A point's eps-neighbourhood includes itself.
    """
    if config.eps <= 0:
        raise DataError(f"eps must be positive, got {config.eps}")
    if config.min_pts < 1:
        raise DataError(f"min_pts must be >= 1, got {config.min_pts}")
    if config.metric != "euclidean":
        raise DataError(f"unsupported metric {config.metric!r}")

    points = data.values
    n = data.n
    order = np.lexsort(tuple(points[:, col] for col in reversed(range(data.m))))
    sorted_points = points[order]

    tree = cKDTree(sorted_points)
    neighborhoods = [
        np.array(sorted(tree.query_ball_point(sorted_points[i], config.eps)))
        for i in range(n)
    ]
    is_core = np.array([len(nb) >= config.min_pts for nb in neighborhoods])

    labels = np.full(n, Partition.NOISE)
    cluster_id = 0
    for start in range(n):
        if labels[start] != Partition.NOISE or not is_core[start]:
            continue
        labels[start] = cluster_id
        queue = deque([start])
        while queue:
            point = queue.popleft()
            if not is_core[point]:
                continue  # border points join but do not expand
            for neighbor in neighborhoods[point]:
                if labels[neighbor] == Partition.NOISE:
                    labels[neighbor] = cluster_id
                    queue.append(neighbor)
        cluster_id += 1

    unsorted = np.empty(n, dtype=int)
    unsorted[order] = labels
    return Partition(unsorted)


def generate_two_ring_dataset(n: int = 300, seed: int = 0) -> tuple[Dataset, Partition]:
    """Two concentric noisy rings around (0.5, 0.5), radii 0.25 and 0.5.

    n must be even and >= 20. The inner ring gets 3n/4 points and the outer
    ring the rest: with equal counts the ground-truth partition's per-cluster
    variance vectors are parallel and its cluster centroids coincide, which
    degenerates dispersion-based validity scores (their scatter and density
    terms both pin at 1 regardless of radii). The 3:1 imbalance breaks that
    symmetry while leaving both rings dense enough for eps = 0.1 chaining.

    Angles are drawn one per equal angular stratum (marginally uniform,
    bounded gaps) and radii get Gaussian jitter with sigma 0.01, which keeps
    the rings well inside an inter-ring gap of 0.1. Returns the dataset and
    the ground-truth partition (inner ring 0, outer ring 1).
    """
    if n < 20 or n % 2 != 0:
        raise DataError(f"n must be an even number >= 20, got {n}")
    rng = np.random.default_rng(seed)
    n_inner = 3 * n // 4
    counts = (n_inner, n - n_inner)
    blocks = []
    for radius, count in zip((0.25, 0.5), counts):
        angles = 2 * np.pi * (np.arange(count) + rng.uniform(0.0, 1.0, count)) / count
        radii = radius + rng.normal(0.0, 0.01, count)
        blocks.append(
            np.column_stack(
                (0.5 + radii * np.cos(angles), 0.5 + radii * np.sin(angles))
            )
        )
    labels = np.repeat([0, 1], counts)
    return Dataset(np.vstack(blocks)), Partition(labels)
