"""Command-line front end.

Wires the profiler, geometry, indices, clusterers, and the knowledge base
into one workflow: profile a dataset, answer (or auto-fill) the selection
questions, and get ranked algorithm/index recommendations, plus utilities to
validate partitions, rank algorithms by computing steps, regenerate the
two-ring benchmark table, and export the knowledge base for the web UI.

Exit codes: 0 success, 1 usage error, 2 data error, 3 computation error.
All JSON output is schema-versioned and byte-identical for identical
invocations (the default seed is fixed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

import numpy as np

from .clusterers import DbscanConfig, KMeansConfig, dbscan, generate_two_ring_dataset, kmeans
from .dataset import Dataset, Partition, load_dataset, load_partition, pairwise_distances, zscore
from .errors import ComputationError, DataError, IncompleteAnswers, LabelMismatch
from .geometry import estimate_convexity_dataset
from .indices import DIRECTIONS, compute_index
from .knowledge import (
    ALGORITHM_DIMENSIONS,
    ALGORITHM_QUESTIONS,
    INDEX_DIMENSIONS,
    INDEX_QUESTIONS,
    KnowledgeBase,
    decision_tree_algorithms,
    decision_tree_indices,
    dumps_kb,
    filter_algorithms,
    filter_indices,
    load_kb,
)
from .profiler import (
    DEFAULT_K_GRID,
    MissingComplexity,
    NoiseVerdict,
    dimension_category,
    noise_assessment,
    rank_computing_velocity,
    size_category,
)

SCHEMA_VERSION = 1

#: indices in canonical display order
INDEX_NAMES = ("silhouette", "dunn", "sdbw", "cdbw", "dbcv")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract reserves 2 for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="clusterkit", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    parser.add_argument(
        "--format", choices=("json", "table"), default="table", help="output format"
    )
    parser.add_argument("--kb", default=None, help="knowledge-base JSON path (default: bundled)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="categorize size/dimension, assess noise, optional convexity")
    p.add_argument("data", help="CSV of numeric rows")
    p.add_argument("--header", action="store_true", help="skip a header line")
    p.add_argument("--k", type=int, default=None, help="cluster count for the convexity estimate")
    p.add_argument("--convexity", action="store_true", help="also run the convexity estimate (needs --k)")
    p.add_argument("--tau", type=float, default=0.7, help="convexity ratio threshold")
    p.add_argument("--pca2d", action="store_true", help="project >3-D data onto top-2 PCs for convexity")

    p = sub.add_parser("recommend", help="walk a decision tree to ranked candidates")
    p.add_argument("data", nargs="?", default=None, help="optional CSV; auto-fills data-derived answers")
    p.add_argument("--header", action="store_true")
    p.add_argument("--target", choices=("algorithms", "indices"), default="algorithms")
    p.add_argument("--interactive", action="store_true", help="prompt for unanswered questions")
    p.add_argument("--answers-file", default=None, help="JSON {question id: answer} to replay")
    p.add_argument("--k", type=int, default=None, help="cluster count for convexity auto-fill")
    p.add_argument("--pca2d", action="store_true")
    yn = ("yes", "no")
    p.add_argument("--k-known", nargs="?", const="yes", choices=yn, default=None)
    p.add_argument("--convex", nargs="?", const="yes", choices=yn, default=None)
    p.add_argument("--size", choices=("small", "large"), default=None)
    p.add_argument("--noise", nargs="?", const="yes", choices=yn, default=None)
    p.add_argument("--shapes", choices=("arbitrary", "convex"), default=None)
    p.add_argument("--preprocess", nargs="?", const="yes", choices=yn, default=None)
    p.add_argument(
        "--no-preprocess", dest="preprocess", action="store_const", const="no",
        help="shorthand for --preprocess no",
    )
    p.add_argument("--compact", nargs="?", const="yes", choices=yn, default=None)

    p = sub.add_parser("validate", help="compute validity indices for a labeled partition")
    p.add_argument("data", help="CSV of numeric rows")
    p.add_argument("labels", help="one integer label per row (-1 = noise)")
    p.add_argument("--header", action="store_true")
    p.add_argument("--indices", nargs="+", choices=INDEX_NAMES, default=list(INDEX_NAMES))
    p.add_argument(
        "--standardize", action="store_true",
        help="z-score columns before scoring (default: score the data as given)",
    )

    p = sub.add_parser("rank-complexity", help="rank algorithms by computing steps per sample")
    p.add_argument("data", help="CSV of numeric rows")
    p.add_argument("--header", action="store_true")
    p.add_argument("--k", type=int, nargs="+", default=list(DEFAULT_K_GRID))

    p = sub.add_parser("reproduce", help="regenerate a published experiment")
    p.add_argument("experiment", choices=("table1",))
    p.add_argument("--n", type=int, default=300, help="two-ring sample count")

    p = sub.add_parser("export-kb", help="write the knowledge base in canonical JSON")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--fixtures", default=None, help="also write filter parity fixtures here")
    p.add_argument("--fixture-count", type=int, default=20)

    return parser


# ---------------------------------------------------------------------------
# rendering


def _score_value(value):
    return "undefined" if value is None else value


def _emit(report: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    fmt_row = lambda r: "  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip()
    return [fmt_row(header), fmt_row(["-" * w for w in widths]), *map(fmt_row, rows)]


def _fmt_num(value, digits: int = 4) -> str:
    if value is None:
        return "undefined"
    return f"{value:.{digits}f}"


# ---------------------------------------------------------------------------
# subcommands


def _load(args) -> Dataset:
    return load_dataset(args.data, header=args.header)


def cmd_profile(args, kb: KnowledgeBase) -> int:
    data = _load(args)
    noise = noise_assessment(data, seed=args.seed)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "profile",
        "n": data.n,
        "m": data.m,
        "size_category": size_category(data).name,
        "dimension_category": dimension_category(data).name,
        "noise": {
            "verdict": noise.verdict.name,
            "ks_statistic": noise.ks_statistic,
            "thresholds": noise.thresholds,
        },
    }
    lines = [
        f"rows              {data.n}",
        f"features          {data.m}",
        f"size category     {report['size_category']}",
        f"dimension         {report['dimension_category']}",
        f"noise verdict     {noise.verdict.name} (ks={noise.ks_statistic:.4f})",
    ]
    if args.convexity:
        conv = estimate_convexity_dataset(
            data, k=args.k, tau=args.tau, seed=args.seed, pca2d=args.pca2d
        )
        report["convexity"] = {
            "k": args.k,
            "is_convex": conv.is_convex,
            "mean_ratio": conv.ratio,
            "tau": conv.tau,
            "per_cluster": [
                {"cluster": cid, "ratio": _score_value(ratio)}
                for cid, ratio in (conv.per_cluster or [])
            ],
            "warnings": conv.warnings,
        }
        lines.append(
            f"convexity (k={args.k})  {'convex' if conv.is_convex else 'not convex'}"
            f" (mean ratio {conv.ratio:.3f}, tau {conv.tau})"
        )
        lines.extend(f"  warning: {w}" for w in conv.warnings)
    _emit(report, lines, args.format)
    return 0


def _collect_answers(args) -> dict:
    answers: dict = {}
    if args.answers_file:
        try:
            loaded = json.loads(open(args.answers_file, encoding="utf-8").read())
        except json.JSONDecodeError as exc:
            raise DataError(f"answers file is not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise DataError("answers file must map question ids to answers")
        answers.update(loaded)
    flag_map = {
        "k_known": args.k_known,
        "convex": args.convex,
        "size": args.size,
        "noise": args.noise,
        "compact": args.compact,
    }
    if args.shapes is not None:
        flag_map["arbitrary_shapes"] = "yes" if args.shapes == "arbitrary" else "no"
    if args.preprocess is not None:
        flag_map["noise_preprocessing_ok"] = args.preprocess
    for key, value in flag_map.items():
        if value is not None:
            answers[key] = value
    return answers


def _prompt(question) -> str:
    while True:
        try:
            raw = input(f"{question.text} [{'/'.join(question.choices)}] ").strip().lower()
        except EOFError:
            raise DataError(f"input closed while waiting for {question.id!r}") from None
        if raw in question.choices:
            return raw
        print(f"  please answer one of: {', '.join(question.choices)}", file=sys.stderr)


def cmd_recommend(args, kb: KnowledgeBase) -> int:
    answers = _collect_answers(args)
    auto: dict = {"size": None, "noise": None, "convex": None}
    if args.data is not None:
        data = _load(args)
        auto["size"] = size_category(data)
        auto["noise"] = noise_assessment(data, seed=args.seed).verdict
        if args.k is not None:
            conv = estimate_convexity_dataset(data, k=args.k, seed=args.seed, pca2d=args.pca2d)
            auto["convex"] = conv.is_convex

    if args.target == "algorithms":
        questions = ALGORITHM_QUESTIONS
        walk = lambda a: decision_tree_algorithms(
            kb, a, size=auto["size"], noise=auto["noise"], convex=auto["convex"]
        )
    else:
        questions = INDEX_QUESTIONS
        walk = lambda a: decision_tree_indices(kb, a, convex=auto["convex"])
    by_id = {q.id: q for q in questions}

    while True:
        try:
            rec = walk(answers)
            break
        except IncompleteAnswers as exc:
            if not args.interactive:
                raise
            answers[exc.questions[0]] = _prompt(by_id[exc.questions[0]])

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "recommend",
        "target": args.target,
        "answers": {q: a for q, a in answers.items() if q in by_id},
        "decision_path": [list(step) for step in rec.decision_path],
        "candidates": rec.candidates,
        "warnings": rec.warnings,
    }
    lines = ["decision path:"]
    lines += [f"  {q}: {a}" for q, a in rec.decision_path]
    if rec.candidates:
        lines.append("recommended (best first):")
        lines += [f"  {i + 1}. {name}" for i, name in enumerate(rec.candidates)]
    else:
        lines.append("no candidates satisfy the constraints")
    lines += [f"warning: {w}" for w in rec.warnings]
    _emit(report, lines, args.format)
    return 0


def cmd_validate(args, kb: KnowledgeBase) -> int:
    data = _load(args)
    if args.standardize:
        data = zscore(data)
    part = load_partition(args.labels)
    if part.n != data.n:
        raise LabelMismatch(f"{part.n} labels for {data.n} rows")
    dist = None
    if any(name in ("silhouette", "dunn") for name in args.indices):
        dist = pairwise_distances(data)
    scores = [
        compute_index(name, data, part, dist=dist)
        for name in INDEX_NAMES
        if name in args.indices
    ]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "validate",
        "n": data.n,
        "clusters": part.k,
        "noise_points": int(part.noise_count),
        "standardized": bool(args.standardize),
        "scores": [
            {"index": s.name, "value": _score_value(s.value), "direction": s.direction}
            for s in scores
        ],
    }
    rows = [[s.name, _fmt_num(s.value, 6), s.direction] for s in scores]
    lines = _table(rows, ["index", "value", "direction"])
    _emit(report, lines, args.format)
    return 0


def cmd_rank_complexity(args, kb: KnowledgeBase) -> int:
    data = _load(args)
    usable, warnings = [], []
    for row in kb.algorithms:
        if row.complexity_expressions():
            usable.append(row)
        else:
            warnings.append(f"skipped: {MissingComplexity(row.name)}")
    rankings = rank_computing_velocity(data, usable, k_values=tuple(args.k))
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "rank-complexity",
        "n": data.n,
        "m": data.m,
        "rankings": [
            {
                "k": vr.k,
                "ranking": [
                    {"algorithm": name, "steps_per_sample": steps}
                    for name, steps in vr.ranking
                ],
            }
            for vr in rankings
        ],
        "warnings": warnings,
    }
    lines = []
    for vr in rankings:
        lines.append(f"k = {vr.k}")
        lines += [f"  {name:20s} {steps:>14.1f}" for name, steps in vr.ranking]
    lines += [f"warning: {w}" for w in warnings]
    _emit(report, lines, args.format)
    return 0


def _same_partition(a: Partition, b: Partition) -> bool:
    """True when the labelings agree up to renaming (noise maps to noise)."""
    if a.n != b.n:
        return False
    mapping: dict[int, int] = {}
    reverse: dict[int, int] = {}
    for la, lb in zip(a.labels, b.labels):
        la, lb = int(la), int(lb)
        if (la < 0) != (lb < 0):
            return False
        if la < 0:
            continue
        if mapping.setdefault(la, lb) != lb or reverse.setdefault(lb, la) != la:
            return False
    return True


def cmd_reproduce(args, kb: KnowledgeBase) -> int:
    if args.experiment != "table1":  # argparse already restricts choices
        raise DataError(f"unknown experiment {args.experiment!r}")
    data, truth = generate_two_ring_dataset(n=args.n, seed=args.seed)
    table_indices = ("silhouette", "sdbw", "cdbw")

    runs: list[tuple[str, Partition]] = []
    for k in range(1, 6):
        label = f"k-means, {k} cluster" + ("s" if k > 1 else "")
        runs.append((label, kmeans(data, KMeansConfig(k=k, seed=args.seed))))
    db = dbscan(data, DbscanConfig(eps=0.1, min_pts=2))
    runs.append(("DBSCAN(0.1, 2)", db))
    runs.append(("ground truth (two rings)", truth))

    dist = pairwise_distances(data)
    values: dict[str, dict[str, float | None]] = {}
    for label, part in runs:
        values[label] = {
            name: compute_index(name, data, part, dist=dist).value
            for name in table_indices
        }

    truth_vals = values["ground truth (two rings)"]
    kmeans_rows = [f"k-means, {k} clusters" for k in range(2, 6)]
    checks = {
        "silhouette_prefers_kmeans": all(
            values[r]["silhouette"] > truth_vals["silhouette"] for r in kmeans_rows
        ),
        "sdbw_prefers_kmeans": all(
            values[r]["sdbw"] < truth_vals["sdbw"] for r in kmeans_rows
        ),
        "cdbw_prefers_ground_truth": all(
            truth_vals["cdbw"] > values[r]["cdbw"] for r in kmeans_rows
        ),
        "dbscan_recovers_rings": _same_partition(db, truth),
        "k1_row_undefined": all(
            values["k-means, 1 cluster"][name] is None for name in table_indices
        ),
    }
    verdict = "PASS" if all(checks.values()) else "FAIL"

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "reproduce",
        "experiment": "table1",
        "n": args.n,
        "seed": args.seed,
        "rows": [
            {"partition": label, **{k: _score_value(v) for k, v in values[label].items()}}
            for label, _ in runs
        ],
        "checks": checks,
        "verdict": verdict,
    }
    rows = [
        [label, *(_fmt_num(values[label][name]) for name in table_indices)]
        for label, _ in runs
    ]
    lines = _table(rows, ["partition", "silhouette", "sdbw", "cdbw"])
    lines.append("")
    lines += [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks.items()]
    lines.append(f"verdict: {verdict}")
    _emit(report, lines, args.format)
    return 0


# dimensions the parity fixtures draw criteria from (enum/bool only)
_FIXTURE_DIMS = {
    "algorithms": {
        d: dom for d, dom in ALGORITHM_DIMENSIONS.items() if dom is not None
    },
    "indices": {d: dom for d, dom in INDEX_DIMENSIONS.items() if dom is not None},
}


def make_parity_fixtures(kb: KnowledgeBase, count: int = 20, seed: int = 0) -> dict:
    """Random filter criteria with the engine's answers, for client parity tests."""
    rng = random.Random(seed)
    fixtures = []
    for _ in range(count):
        target = rng.choice(("algorithms", "indices"))
        dims = _FIXTURE_DIMS[target]
        chosen = rng.sample(sorted(dims), k=rng.randint(1, min(3, len(dims))))
        criteria = {dim: rng.choice(dims[dim]) for dim in chosen}
        run = filter_algorithms if target == "algorithms" else filter_indices
        result = run(kb, criteria)
        fixtures.append(
            {"target": target, "criteria": criteria, "expected": result.candidates}
        )
    return {"schema_version": SCHEMA_VERSION, "seed": seed, "fixtures": fixtures}


def cmd_export_kb(args, kb: KnowledgeBase) -> int:
    text = dumps_kb(kb)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    if args.fixtures:
        doc = make_parity_fixtures(kb, count=args.fixture_count, seed=args.seed)
        with open(args.fixtures, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        print(f"wrote {args.fixtures}")
    return 0


_COMMANDS = {
    "profile": cmd_profile,
    "recommend": cmd_recommend,
    "validate": cmd_validate,
    "rank-complexity": cmd_rank_complexity,
    "reproduce": cmd_reproduce,
    "export-kb": cmd_export_kb,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "profile" and args.convexity and args.k is None:
        parser.error("--convexity requires --k")
    try:
        kb = load_kb(args.kb)
        return _COMMANDS[args.command](args, kb)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
