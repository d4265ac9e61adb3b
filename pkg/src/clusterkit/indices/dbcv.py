"""DBCV: density-based validity for arbitrary shapes and noise. Higher is better.

Every clustered point gets an all-points-core-distance

    coredist(o) = ( (1/(|C|-1)) * sum_{x in C, x != o} (1/d(o,x))^m )^(-1/m)

with m the feature count. Mutual reachability between two points is
max(coredist(a), coredist(b), d(a, b)). Per cluster, a minimum spanning
tree over reachability weights yields the density sparseness DSC (largest
weight among edges joining internal nodes, i.e. nodes of degree > 1);
between clusters, the density separation DSPC is the smallest reachability
between internal nodes of the two trees. A cluster's validity is

    V(C_i) = (min_j DSPC(C_i, C_j) - DSC(C_i)) / max(min_j DSPC, DSC)

and the total is the cluster-size-weighted sum of validities over n
including noise rows, so noise drags the total toward zero without getting
a validity of its own. Clusters of size <= 3 (and degenerate star trees)
count all edges/nodes as internal.

Reachability ties make the spanning tree ambiguous, so edges carry a
secondary lexicographic key over the endpoints' canonical coordinate ranks;
the tree, and with it DSC/DSPC, is then a pure function of the point set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._numeric import ordered_sum
from ..dataset import Dataset, Partition, pairwise_distances
from ..errors import LabelMismatch


@dataclass(frozen=True, eq=False)
class DbcvResult:
    """Per-cluster validity, sparseness (DSC), min separation (DSPC), total.

    total is None when fewer than two clusters exist or a cluster is a
    singleton. total always lies in [-1, 1].
    """

    per_cluster_validity: list[float]
    dsc: list[float]
    dspc: list[float]
    total: float | None


def _canonical_ranks(block: np.ndarray) -> np.ndarray:
    """Rank rows by coordinate-lexicographic order (row order irrelevant)."""
    order = np.lexsort(block.T[::-1])
    ranks = np.empty(block.shape[0], dtype=int)
    ranks[order] = np.arange(block.shape[0])
    return ranks


def _prim_mst(weights: np.ndarray, ranks: np.ndarray) -> list[tuple[int, int, float]]:
    """Minimum spanning tree of a dense weight matrix, made unique.

    Reachability weights tie frequently (several edges saturate at the same
    core distance), and which tied edges enter the tree decides which edges
    count as internal. Edges are therefore totally ordered by
    (weight, min endpoint rank, max endpoint rank) with ranks from the
    canonical coordinate order, so every run and every input permutation
    produces the same tree.
    """
    n = weights.shape[0]
    start = int(np.argmin(ranks))
    in_tree = np.zeros(n, dtype=bool)
    in_tree[start] = True
    best_w = weights[start].copy()
    best_from = np.full(n, start)
    lo = np.minimum(ranks, ranks[start])
    hi = np.maximum(ranks, ranks[start])
    edges: list[tuple[int, int, float]] = []
    for _ in range(n - 1):
        w = np.where(in_tree, np.inf, best_w)
        nxt = int(np.lexsort((hi, lo, w))[0])
        edges.append((int(best_from[nxt]), nxt, float(best_w[nxt])))
        in_tree[nxt] = True
        cand_w = weights[nxt]
        cand_lo = np.minimum(ranks, ranks[nxt])
        cand_hi = np.maximum(ranks, ranks[nxt])
        better = (cand_w < best_w) | (
            (cand_w == best_w)
            & ((cand_lo < lo) | ((cand_lo == lo) & (cand_hi < hi)))
        )
        better &= ~in_tree
        best_w[better] = cand_w[better]
        best_from[better] = nxt
        lo[better] = cand_lo[better]
        hi[better] = cand_hi[better]
    return edges


def _core_distances(gaps: np.ndarray, m: int) -> np.ndarray:
    """All-points-core-distance for one cluster's internal distance block."""
    size = gaps.shape[0]
    core = np.zeros(size)
    for i in range(size):
        others = np.delete(gaps[i], i)
        if np.any(others == 0.0):
            core[i] = 0.0  # duplicate point: infinite density
            continue
        mean_inv = ordered_sum((1.0 / others) ** m) / (size - 1)
        core[i] = mean_inv ** (-1.0 / m)
    return core


def dbcv(data: Dataset, part: Partition) -> DbcvResult:
    if data.n != part.n:
        raise LabelMismatch(f"{part.n} labels for {data.n} rows")
    undefined = DbcvResult([], [], [], None)
    if part.k < 2:
        return undefined
    members = [part.members(j) for j in range(part.k)]
    if any(idx.size < 2 for idx in members):
        return undefined

    entries = pairwise_distances(data).entries
    m = data.m
    k = part.k

    core = np.zeros(data.n)
    for idx in members:
        core[idx] = _core_distances(entries[np.ix_(idx, idx)], m)

    sparseness: list[float] = []
    internal_nodes: list[np.ndarray] = []
    for idx in members:
        size = idx.size
        reach = np.maximum(
            entries[np.ix_(idx, idx)],
            np.maximum(core[idx][:, None], core[idx][None, :]),
        )
        np.fill_diagonal(reach, 0.0)
        edges = _prim_mst(reach, _canonical_ranks(data.values[idx]))
        degree = np.zeros(size, dtype=int)
        for a, b, _ in edges:
            degree[a] += 1
            degree[b] += 1
        internal = np.flatnonzero(degree > 1)
        internal_edges = [w for a, b, w in edges if degree[a] > 1 and degree[b] > 1]
        if size <= 3 or not internal_edges:
            internal_edges = [w for _, _, w in edges]
        if size <= 3 or internal.size == 0:
            internal = np.arange(size)
        sparseness.append(max(internal_edges))
        internal_nodes.append(idx[internal])

    min_separation: list[float] = []
    for i in range(k):
        best = np.inf
        for j in range(k):
            if j == i:
                continue
            a = internal_nodes[i]
            b = internal_nodes[j]
            cross = np.maximum(
                entries[np.ix_(a, b)], np.maximum(core[a][:, None], core[b][None, :])
            )
            best = min(best, float(cross.min()))
        min_separation.append(best)

    validities = []
    for dsc, dspc in zip(sparseness, min_separation):
        denom = max(dspc, dsc)
        validities.append((dspc - dsc) / denom if denom > 0 else 0.0)

    weights = np.array([idx.size for idx in members]) / data.n
    total = float(ordered_sum(weights * np.array(validities)))
    return DbcvResult(
        per_cluster_validity=validities,
        dsc=sparseness,
        dspc=min_separation,
        total=total,
    )
