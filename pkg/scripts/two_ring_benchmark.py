#!/usr/bin/env python3
"""Index-ordering benchmark on the two-ring dataset, swept across seeds.

For each seed: generate the rings, run k-means (k = 1..5) and DBSCAN(0.1, 2),
score every partition with silhouette / S_Dbw / CDbw, and check the five
ordering facts the benchmark is built around. Prints the per-seed table for
the first seed and a pass-rate summary over the sweep.

    python3 scripts/two_ring_benchmark.py --seeds 20 --n 300
"""

import argparse
import sys
import time

from clusterkit.clusterers import (
    DbscanConfig,
    KMeansConfig,
    dbscan,
    generate_two_ring_dataset,
    kmeans,
)
from clusterkit.dataset import pairwise_distances
from clusterkit.indices import compute_index

INDEX_NAMES = ("silhouette", "sdbw", "cdbw")


def same_partition(a, b):
    if a.n != b.n:
        return False
    fwd, rev = {}, {}
    for la, lb in zip(a.labels, b.labels):
        la, lb = int(la), int(lb)
        if (la < 0) != (lb < 0):
            return False
        if la < 0:
            continue
        if fwd.setdefault(la, lb) != lb or rev.setdefault(lb, la) != la:
            return False
    return True


def run_seed(n, seed):
    data, truth = generate_two_ring_dataset(n=n, seed=seed)
    dist = pairwise_distances(data)

    def score(part):
        return {x: compute_index(x, data, part, dist=dist).value for x in INDEX_NAMES}

    rows = {}
    for k in range(1, 6):
        rows[f"k-means k={k}"] = score(kmeans(data, KMeansConfig(k=k, seed=seed)))
    db = dbscan(data, DbscanConfig(eps=0.1, min_pts=2))
    rows["DBSCAN(0.1, 2)"] = score(db)
    rows["ground truth"] = score(truth)

    truth_scores = rows["ground truth"]
    km = [rows[f"k-means k={k}"] for k in range(2, 6)]
    checks = {
        "silhouette prefers k-means": all(r["silhouette"] > truth_scores["silhouette"] for r in km),
        "sdbw prefers k-means": all(r["sdbw"] < truth_scores["sdbw"] for r in km),
        "cdbw prefers truth": all(truth_scores["cdbw"] > r["cdbw"] for r in km),
        "dbscan recovers rings": same_partition(db, truth),
        "k=1 undefined": all(v is None for v in rows["k-means k=1"].values()),
    }
    return rows, checks


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=300)
    parser.add_argument("--seeds", type=int, default=20, help="number of seeds to sweep")
    args = parser.parse_args(argv)

    started = time.monotonic()
    tallies = None
    for seed in range(args.seeds):
        rows, checks = run_seed(args.n, seed)
        if seed == 0:
            print(f"seed 0, n = {args.n}")
            print(f"{'partition':16s} {'silhouette':>11s} {'sdbw':>9s} {'cdbw':>9s}")
            for label, vals in rows.items():
                cells = " ".join(
                    f"{vals[x]:>{w}.4f}" if vals[x] is not None else f"{'undef':>{w}s}"
                    for x, w in zip(INDEX_NAMES, (11, 9, 9))
                )
                print(f"{label:16s} {cells}")
            print()
        if tallies is None:
            tallies = {name: 0 for name in checks}
        for name, ok in checks.items():
            tallies[name] += ok

    print(f"pass rates over {args.seeds} seeds ({time.monotonic() - started:.1f}s):")
    failed = False
    for name, count in tallies.items():
        print(f"  {name:28s} {count}/{args.seeds}")
        failed |= count < args.seeds
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
