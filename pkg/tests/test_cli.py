"""End-to-end command-line tests (in-process, via cli.main)."""

import json

import numpy as np
import pytest

from clusterkit.cli import main
from clusterkit.knowledge import load_kb, filter_algorithms, filter_indices, seed_kb_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_csv(path, rows, header=None):
    lines = ([header] if header else []) + [",".join(str(v) for v in r) for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture()
def blob_csv(tmp_path):
    # two uniform discs: solidly convex clusters, far apart
    rng = np.random.default_rng(0)
    blocks = []
    for cx in (0.0, 5.0):
        theta = rng.uniform(0, 2 * np.pi, 60)
        radius = np.sqrt(rng.uniform(0, 1, 60))
        blocks.append(np.column_stack((cx + radius * np.cos(theta), cx + radius * np.sin(theta))))
    return write_csv(tmp_path / "blobs.csv", np.vstack(blocks).tolist())


# --- exit codes -----------------------------------------------------------------


def test_usage_errors_exit_1(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["bogus-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    # --convexity without --k is a usage error, not a data error
    csv = write_csv(tmp_path / "d.csv", [[0, 0], [1, 1], [2, 2]])
    with pytest.raises(SystemExit) as exc:
        main(["profile", csv, "--convexity"])
    assert exc.value.code == 1


def test_data_errors_exit_2(capsys, tmp_path, blob_csv):
    code, _, err = run(capsys, "profile", str(tmp_path / "missing.csv"))
    assert code == 2 and "error:" in err
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,oops\n", encoding="utf-8")
    code, _, err = run(capsys, "profile", str(bad))
    assert code == 2
    labels = tmp_path / "labels.txt"
    labels.write_text("0\n1\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", blob_csv, str(labels))
    assert code == 2 and "labels" in err


def test_computation_errors_exit_3(capsys, tmp_path):
    rng = np.random.default_rng(1)
    csv = write_csv(tmp_path / "wide.csv", rng.normal(size=(60, 5)).tolist())
    # 5-D convexity without --pca2d cannot run
    code, _, err = run(capsys, "profile", csv, "--convexity", "--k", "2")
    assert code == 3 and "error:" in err


# --- profile --------------------------------------------------------------------


def test_profile_json_reports_categories(capsys, blob_csv):
    code, out, _ = run(capsys, "--format", "json", "profile", blob_csv)
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["command"] == "profile"
    assert report["n"] == 120 and report["m"] == 2
    assert report["size_category"] == "MEDIUM"
    assert report["dimension_category"] == "LOW"
    assert report["noise"]["verdict"] in ("LIKELY_CLEAN", "LIKELY_NOISY", "INCONCLUSIVE")


def test_profile_convexity_block(capsys, blob_csv):
    code, out, _ = run(
        capsys, "--format", "json", "profile", blob_csv, "--convexity", "--k", "2"
    )
    assert code == 0
    conv = json.loads(out)["convexity"]
    assert conv["k"] == 2
    assert conv["is_convex"] is True
    assert len(conv["per_cluster"]) == 2


# --- validate -------------------------------------------------------------------


def test_validate_scores_and_undefined(capsys, tmp_path, blob_csv):
    labels = tmp_path / "labels.txt"
    labels.write_text("\n".join(["0"] * 60 + ["1"] * 60) + "\n", encoding="utf-8")
    code, out, _ = run(capsys, "--format", "json", "validate", blob_csv, str(labels))
    assert code == 0
    report = json.loads(out)
    assert report["clusters"] == 2
    by_name = {s["index"]: s for s in report["scores"]}
    assert set(by_name) == {"silhouette", "dunn", "sdbw", "cdbw", "dbcv"}
    assert by_name["silhouette"]["value"] > 0.8
    assert by_name["silhouette"]["direction"] == "higher_better"
    assert by_name["sdbw"]["direction"] == "lower_better"

    # a single cluster leaves every index undefined
    ones = tmp_path / "ones.txt"
    ones.write_text("\n".join(["0"] * 120) + "\n", encoding="utf-8")
    code, out, _ = run(capsys, "--format", "json", "validate", blob_csv, str(ones))
    assert code == 0
    for score in json.loads(out)["scores"]:
        assert score["value"] == "undefined"


def test_validate_standardize_flag(capsys, tmp_path):
    # wildly different column scales: z-scoring changes sdbw, and the report says so
    rng = np.random.default_rng(3)
    pts = np.vstack([rng.normal(0, 1, (40, 2)), rng.normal(8, 1, (40, 2))])
    pts[:, 1] *= 500.0
    csv = write_csv(tmp_path / "aniso.csv", pts.tolist())
    labels = tmp_path / "labels.txt"
    labels.write_text("\n".join(["0"] * 40 + ["1"] * 40) + "\n", encoding="utf-8")

    outs = {}
    for flag in ((), ("--standardize",)):
        code, out, _ = run(
            capsys, "--format", "json", "validate", csv, str(labels),
            "--indices", "sdbw", *flag,
        )
        assert code == 0
        outs[bool(flag)] = json.loads(out)
    assert outs[False]["standardized"] is False
    assert outs[True]["standardized"] is True
    raw = outs[False]["scores"][0]["value"]
    std = outs[True]["scores"][0]["value"]
    assert raw != pytest.approx(std)

    # constant columns cannot be standardized: data error, exit 2
    flat = write_csv(tmp_path / "flat.csv", [[i, 1.0] for i in range(10)])
    ones = tmp_path / "ones.txt"
    ones.write_text("\n".join(["0"] * 5 + ["1"] * 5) + "\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", flat, str(ones), "--standardize")
    assert code == 2 and "column" in err


def test_validate_index_subset_and_table_format(capsys, tmp_path, blob_csv):
    labels = tmp_path / "labels.txt"
    labels.write_text("\n".join(["0"] * 60 + ["1"] * 60) + "\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "validate", blob_csv, str(labels), "--indices", "dunn", "silhouette"
    )
    assert code == 0
    assert "silhouette" in out and "dunn" in out
    assert "sdbw" not in out


# --- recommend ------------------------------------------------------------------


def test_recommend_flags_walk_the_tree(capsys):
    code, out, _ = run(
        capsys,
        "--format", "json",
        "recommend", "--k-known", "yes", "--convex", "yes", "--size", "small",
    )
    assert code == 0
    report = json.loads(out)
    assert report["candidates"] == ["k-means", "PAM"]
    assert report["decision_path"] == [
        ["k_known", "yes"], ["convex", "yes"], ["size", "small"]
    ]


def test_recommend_missing_answer_is_a_data_error(capsys):
    code, _, err = run(capsys, "recommend", "--k-known", "yes")
    assert code == 2
    assert "convex" in err


def test_recommend_answers_file_replay_is_identical(capsys, tmp_path):
    answers = tmp_path / "answers.json"
    answers.write_text(
        json.dumps({"k_known": "yes", "convex": "yes", "size": "large"}),
        encoding="utf-8",
    )
    outs = []
    for _ in range(2):
        code, out, _ = run(
            capsys, "--format", "json", "recommend", "--answers-file", str(answers)
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["candidates"] == ["CLARA", "CLARANS"]


def test_recommend_auto_fills_from_data(capsys, blob_csv):
    code, out, _ = run(
        capsys, "--format", "json",
        "recommend", blob_csv, "--k", "2", "--k-known", "no", "--noise", "no",
    )
    assert code == 0
    report = json.loads(out)
    labels = dict(tuple(step) for step in report["decision_path"])
    assert "auto-filled from data profile" in labels["convex"]
    assert report["candidates"]


def test_recommend_indices_target(capsys):
    code, out, _ = run(
        capsys, "--format", "json",
        "recommend", "--target", "indices", "--shapes", "arbitrary", "--no-preprocess",
    )
    assert code == 0
    assert json.loads(out)["candidates"] == ["DBCV"]


# --- rank-complexity ------------------------------------------------------------


def test_rank_complexity_skips_expressionless_rows(capsys, blob_csv):
    code, out, _ = run(
        capsys, "--format", "json", "rank-complexity", blob_csv, "--k", "2", "8"
    )
    assert code == 0
    report = json.loads(out)
    assert [r["k"] for r in report["rankings"]] == [2, 8]
    ranked = {r["algorithm"] for r in report["rankings"][0]["ranking"]}
    for name in ("CLIQUE", "DENCLUE", "SOM", "STING"):
        assert name not in ranked
        assert any(name in w for w in report["warnings"])
    first = report["rankings"][0]["ranking"]
    steps = [r["steps_per_sample"] for r in first]
    assert steps == sorted(steps)


# --- reproduce ------------------------------------------------------------------


def test_reproduce_table1_passes(capsys):
    code, out, _ = run(capsys, "--format", "json", "reproduce", "table1")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "PASS"
    assert all(report["checks"].values())
    assert len(report["rows"]) == 7
    k1 = next(r for r in report["rows"] if r["partition"] == "k-means, 1 cluster")
    assert all(k1[name] == "undefined" for name in ("silhouette", "sdbw", "cdbw"))


def test_reproduce_table_format_prints_check_lines(capsys):
    code, out, _ = run(capsys, "reproduce", "table1")
    assert code == 0
    assert "verdict: PASS" in out
    for check in (
        "silhouette_prefers_kmeans",
        "sdbw_prefers_kmeans",
        "cdbw_prefers_ground_truth",
        "dbscan_recovers_rings",
        "k1_row_undefined",
    ):
        assert f"PASS  {check}" in out


# --- export-kb ------------------------------------------------------------------


def test_export_kb_bytes_match_seed(capsys, tmp_path):
    out_path = tmp_path / "kb.json"
    code, _, _ = run(capsys, "export-kb", "--out", str(out_path))
    assert code == 0
    assert out_path.read_bytes() == seed_kb_path().read_bytes()


def test_export_kb_fixtures_match_engine(capsys, tmp_path):
    fixtures_path = tmp_path / "fixtures.json"
    code, _, _ = run(
        capsys, "export-kb", "--out", str(tmp_path / "kb.json"),
        "--fixtures", str(fixtures_path),
    )
    assert code == 0
    doc = json.loads(fixtures_path.read_text(encoding="utf-8"))
    assert doc["schema_version"] == 1
    assert len(doc["fixtures"]) == 20
    kb = load_kb()
    for fixture in doc["fixtures"]:
        run_filter = (
            filter_algorithms if fixture["target"] == "algorithms" else filter_indices
        )
        assert run_filter(kb, fixture["criteria"]).candidates == fixture["expected"]


def test_export_kb_stdout(capsys):
    code, out, _ = run(capsys, "export-kb")
    assert code == 0
    assert json.loads(out)["schema_version"] == 1
