#!/usr/bin/env python3
"""Noise-heuristic calibration sweep over the synthetic generators.

Runs the distance-spectrum noise assessment on structured data (two tight
blobs) and on a structureless uniform cloud across many seeds, reports the
verdict counts and KS-statistic ranges, and optionally writes the histogram
pair of one run for plotting.

    python3 scripts/noise_profile_demo.py --seeds 20 --histograms /tmp/noise.dat
"""

import argparse
import sys

from clusterkit.profiler import NoiseVerdict, dump_histograms, noise_assessment
from clusterkit.synthetic import two_blob_dataset, uniform_cloud_dataset


def sweep(label, make_data, seeds):
    verdicts = {v: 0 for v in NoiseVerdict}
    stats = []
    last = None
    for seed in range(seeds):
        report = noise_assessment(make_data(seed), seed=seed)
        verdicts[report.verdict] += 1
        stats.append(report.ks_statistic)
        last = report
    print(f"{label}:")
    for verdict, count in verdicts.items():
        if count:
            print(f"  {verdict.name:15s} {count}/{seeds}")
    print(f"  ks statistic    min {min(stats):.4f}  max {max(stats):.4f}")
    print(f"  thresholds      {last.thresholds}")
    return last


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--n", type=int, default=400)
    parser.add_argument(
        "--histograms", default=None,
        help="write the uniform-cloud histogram pair to this path",
    )
    args = parser.parse_args(argv)

    sweep("two blobs (structured)", lambda s: two_blob_dataset(n=args.n, seed=s)[0], args.seeds)
    print()
    report = sweep("uniform cloud (noise-like)", lambda s: uniform_cloud_dataset(n=args.n, seed=s), args.seeds)
    if args.histograms:
        dump_histograms(report, args.histograms)
        print(f"\nwrote {args.histograms} (gnuplot columns: bin_left bin_right original noised)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
