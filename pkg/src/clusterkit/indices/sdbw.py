"""S_Dbw: scatter plus between-cluster density. Lower is better.

Scat averages per-cluster variance-vector norms against the dataset's, and
Dens_bw measures how crowded the midpoints between centroid pairs are
relative to the centroids themselves:

    Scat    = (1/k) * sum_j ||var(C_j)|| / ||var(X)||
    stdev   = (1/k) * sqrt(sum_j ||var(C_j)||)
    dens(p) = #points of C_j U C_l within stdev of p
    Dens_bw = 1/(k(k-1)) * sum_{j != l} dens(u_jl) / max(dens(c_j), dens(c_l))

with u_jl the centroid midpoint. A pair whose denominator is zero
contributes 0. Noise rows belong to no cluster but still count toward the
dataset variance var(X).
"""

from __future__ import annotations

import numpy as np

from .._numeric import ordered_sum, sample_variance
from ..dataset import Dataset, Partition, cluster_stats
from ..errors import LabelMismatch
from . import DIRECTIONS, IndexScore


def _count_within(points: np.ndarray, center: np.ndarray, radius: float) -> int:
    gaps = np.sqrt(((points - center) ** 2).sum(axis=1))
    return int((gaps <= radius).sum())


def sdbw(data: Dataset, part: Partition) -> IndexScore:
    if data.n != part.n:
        raise LabelMismatch(f"{part.n} labels for {data.n} rows")
    if part.k < 2:
        return IndexScore("sdbw", None, DIRECTIONS["sdbw"], {})

    k = part.k
    stats = cluster_stats(data, part)
    total_variance = sample_variance(data.values)
    total_norm = float(np.sqrt(ordered_sum(total_variance**2)))
    if total_norm == 0.0:
        return IndexScore("sdbw", None, DIRECTIONS["sdbw"], {"note": "zero variance"})

    norms = [s.variance_norm for s in stats]
    scat = ordered_sum(norms) / (k * total_norm)
    stdev = float(np.sqrt(ordered_sum(norms))) / k

    blocks = [data.values[part.members(j)] for j in range(k)]
    terms = []
    for j in range(k):
        for l in range(k):
            if j == l:
                continue
            pair_points = np.vstack((blocks[j], blocks[l]))
            here = _count_within(pair_points, stats[j].centroid, stdev)
            there = _count_within(pair_points, stats[l].centroid, stdev)
            denom = max(here, there)
            if denom == 0:
                terms.append(0.0)
                continue
            midpoint = (stats[j].centroid + stats[l].centroid) / 2.0
            terms.append(_count_within(pair_points, midpoint, stdev) / denom)
    dens_bw = ordered_sum(terms) / (k * (k - 1))

    return IndexScore("sdbw", float(scat + dens_bw), DIRECTIONS["sdbw"], {})
