"""CDbw: composite density between and within clusters. Higher is better.

Each cluster is summarized by r representative points (farthest-first
traversal seeded at the member closest to the centroid). Between every
cluster pair, mutually-closest representative pairs (RCRs) measure
separation and the crowding at their midpoints; within each cluster the
representatives are shrunk toward the centroid by a ladder of factors and
the density around the shrunken points measures compactness:

    Dist(i,j)    = mean RCR distance            (separation raw material)
    dens(i,j)    = mean over RCRs of d/(2*s_ij) * card(midpoint)
    Inter_dens   = mean_i max_{j!=i} dens(i,j)
    Sep          = mean_i min_{j!=i} Dist(i,j) / (1 + Inter_dens)
    Intra(s)     = mean_i mean_reps card(shrunken rep) / |C_i|
    Compactness  = mean_s Intra(s)
    Intra_change = mean |Intra(s_{t+1}) - Intra(s_t)|
    Cohesion     = Compactness / (1 + Intra_change)
    CDbw         = Sep * Compactness * Cohesion

where card(p) counts cluster/pair members within one stdev of p (stdev of a
cluster is sqrt of its variance-vector norm; pairs use the average s_ij).
The value is positive whenever it is defined on non-degenerate data.
"""

from __future__ import annotations

import numpy as np

from .._numeric import ordered_mean
from ..dataset import Dataset, Partition, cluster_stats
from ..errors import LabelMismatch
from . import DIRECTIONS, IndexScore

DEFAULT_SHRINKS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)


def _farthest_first(points: np.ndarray, centroid: np.ndarray, count: int) -> np.ndarray:
    """Pick `count` spread-out rows, starting nearest the centroid."""
    gaps = np.sqrt(((points - centroid) ** 2).sum(axis=1))
    chosen = [int(np.argmin(gaps))]
    min_gap = np.sqrt(((points - points[chosen[0]]) ** 2).sum(axis=1))
    while len(chosen) < count:
        nxt = int(np.argmax(min_gap))
        chosen.append(nxt)
        min_gap = np.minimum(
            min_gap, np.sqrt(((points - points[nxt]) ** 2).sum(axis=1))
        )
    return np.array(chosen)


def _fraction_within(points: np.ndarray, center: np.ndarray, radius: float) -> float:
    gaps = np.sqrt(((points - center) ** 2).sum(axis=1))
    return float((gaps <= radius).sum()) / points.shape[0]


def cdbw(
    data: Dataset,
    part: Partition,
    r: int = 10,
    shrink_factors: tuple[float, ...] = DEFAULT_SHRINKS,
) -> IndexScore:
    if data.n != part.n:
        raise LabelMismatch(f"{part.n} labels for {data.n} rows")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    shrinks = tuple(float(s) for s in shrink_factors)
    if not shrinks or not all(0.0 < s < 1.0 for s in shrinks):
        raise ValueError("shrink factors must lie strictly between 0 and 1")
    params = {"r": r, "shrink_factors": list(shrinks)}
    if part.k < 2:
        return IndexScore("cdbw", None, DIRECTIONS["cdbw"], params)

    k = part.k
    stats = cluster_stats(data, part)
    blocks = [data.values[part.members(j)] for j in range(k)]
    stdevs = [float(np.sqrt(s.variance_norm)) for s in stats]
    reps = [
        blocks[j][_farthest_first(blocks[j], stats[j].centroid, min(r, len(blocks[j])))]
        for j in range(k)
    ]

    # Mutually-closest representative pairs per cluster pair.
    dist_between = np.full((k, k), np.inf)
    dens_between = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            cross = np.sqrt(
                ((reps[i][:, None, :] - reps[j][None, :, :]) ** 2).sum(axis=2)
            )
            closest_j = np.argmin(cross, axis=1)  # for each rep of i
            closest_i = np.argmin(cross, axis=0)  # for each rep of j
            pairs = [
                (a, closest_j[a])
                for a in range(len(reps[i]))
                if closest_i[closest_j[a]] == a
            ]
            if not pairs:
                continue
            gaps = [float(cross[a, b]) for a, b in pairs]
            dist_between[i, j] = dist_between[j, i] = ordered_mean(gaps)
            radius = (stdevs[i] + stdevs[j]) / 2.0
            if radius == 0.0:
                continue
            pair_points = np.vstack((blocks[i], blocks[j]))
            crowd = [
                (cross[a, b] / (2.0 * radius))
                * _fraction_within(pair_points, (reps[i][a] + reps[j][b]) / 2.0, radius)
                for a, b in pairs
            ]
            dens_between[i, j] = dens_between[j, i] = ordered_mean(crowd)

    off_diag = ~np.eye(k, dtype=bool)
    inter_dens = ordered_mean([dens_between[i][off_diag[i]].max() for i in range(k)])
    nearest = [dist_between[i][off_diag[i]].min() for i in range(k)]
    if not np.all(np.isfinite(nearest)):
        # a cluster produced no mutual pairs against any other cluster
        return IndexScore("cdbw", None, DIRECTIONS["cdbw"], params)
    separation = ordered_mean(nearest) / (1.0 + inter_dens)

    intra = []
    for s in shrinks:
        per_cluster = []
        for j in range(k):
            shrunk = reps[j] + s * (stats[j].centroid - reps[j])
            cards = [
                _fraction_within(blocks[j], point, stdevs[j]) for point in shrunk
            ]
            per_cluster.append(ordered_mean(cards))
        intra.append(ordered_mean(per_cluster))
    compactness = float(np.mean(intra))
    if len(intra) > 1:
        intra_change = float(np.mean(np.abs(np.diff(intra))))
    else:
        intra_change = 0.0
    cohesion = compactness / (1.0 + intra_change)

    value = float(separation * compactness * cohesion)
    return IndexScore("cdbw", value, DIRECTIONS["cdbw"], params)
