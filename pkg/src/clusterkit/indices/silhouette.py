"""Silhouette coefficient.

For a point x in cluster C: a(x) is the mean distance to the other members
of C, b(x) the smallest mean distance to any other cluster, and
s(x) = (b - a) / max(a, b). The sole member of a singleton cluster gets
s = 0 by convention. Noise points are excluded from every mean and marked
NaN in the per-point vector. The partition average is the mean of s over
all non-noise points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._numeric import ordered_mean
from ..dataset import DistanceMatrix, Partition
from ..errors import LabelMismatch


@dataclass(frozen=True, eq=False)
class SilhouetteResult:
    """Per-point silhouette values (NaN for noise) and their average.

    average is None when fewer than two clusters exist.
    """

    per_point: np.ndarray
    average: float | None


def silhouette(dist: DistanceMatrix, part: Partition) -> SilhouetteResult:
    """Vectorized silhouette over a precomputed distance matrix.

    Row sums are accumulated in sorted order, so the result is bit-identical
    under permutation of the samples and renaming of the cluster ids.
    """
    if dist.n != part.n:
        raise LabelMismatch(f"{part.n} labels for a {dist.n}x{dist.n} matrix")
    n = dist.n
    per_point = np.full(n, np.nan)
    if part.k < 2:
        return SilhouetteResult(per_point=per_point, average=None)

    entries = dist.entries
    members = [part.members(j) for j in range(part.k)]
    sizes = np.array([idx.size for idx in members])

    # mean_to[i, j]: mean distance from point i to cluster j. For the own
    # cluster the self-distance 0 is part of the sorted sum (it adds nothing)
    # and the divisor is size - 1.
    sums = np.empty((n, part.k))
    for j, idx in enumerate(members):
        sums[:, j] = np.sort(entries[:, idx], axis=1).sum(axis=1)

    labels = part.labels
    for i in range(n):
        own = labels[i]
        if own == Partition.NOISE:
            continue
        if sizes[own] == 1:
            per_point[i] = 0.0
            continue
        a = sums[i, own] / (sizes[own] - 1)
        other = [sums[i, j] / sizes[j] for j in range(part.k) if j != own]
        b = min(other)
        denom = max(a, b)
        per_point[i] = (b - a) / denom if denom > 0 else 0.0

    scores = per_point[~part.noise_mask]
    average = float(ordered_mean(scores)) if scores.size else None
    return SilhouetteResult(per_point=per_point, average=average)
