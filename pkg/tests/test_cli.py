import csv
import json
from pathlib import Path

import jsonschema
import pytest

from doubling_besov import __version__
from doubling_besov.cli import CSV_COLUMNS, main, manifest_schema

MANIFESTS = Path(__file__).resolve().parent.parent / "docs" / "manifests"


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


def run(manifest, out, *extra):
    return main(["run", str(manifest), "-o", str(out), *extra])


def test_classify_manifest_outputs(tmp_path):
    out = tmp_path / "out"
    assert run(MANIFESTS / "classify_power.json", out, "--assert") == 0
    report = json.loads((out / "report.json").read_text())
    assert report["tool"] == {"name": "doubling-besov", "version": __version__}
    assert report["corpus_version"] == "1"
    assert report["result"]["classification"]["in_R"] == "yes"
    assert all(inv["holds"] for inv in report["invariants"])


def test_csv_round_trips_against_json(tmp_path):
    out = tmp_path / "out"
    assert run(MANIFESTS / "zeros.json", out) == 0
    report = json.loads((out / "report.json").read_text())
    with (out / "results.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == CSV_COLUMNS
    assert len(rows) == len(report["csv_rows"])
    for row, js in zip(rows, report["csv_rows"]):
        assert row["quantity"] == js["quantity"]
        assert float(row["value"]) == js["value"]
    assert float(rows[0]["value"]) == report["result"]["zero_sum"]["value"]


@pytest.mark.parametrize("name", ["classify_power.json", "lemmaE.json", "zeros.json"])
def test_runs_are_byte_identical(tmp_path, name):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(MANIFESTS / name, a) == 0
    assert run(MANIFESTS / name, b) == 0
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    assert (a / "results.csv").read_bytes() == (b / "results.csv").read_bytes()


def test_shipped_manifests_validate():
    schema = manifest_schema()
    files = sorted(MANIFESTS.glob("*.json"))
    assert len(files) >= 10
    for path in files:
        jsonschema.validate(json.loads(path.read_text()), schema)


def test_malformed_json_exits_2(tmp_path, capsys):
    path = write(tmp_path, "bad.json", "{not json")
    assert run(path, tmp_path / "o") == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_schema_violation_exits_2(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"experiment": "theorem1", "weight": {"kind": "power"},
                                        "surprise": 1})
    assert run(path, tmp_path / "o") == 2
    assert "manifest invalid" in capsys.readouterr().err


def test_invalid_weight_exits_2(tmp_path):
    path = write(tmp_path, "w.json", {"experiment": "classify",
                                      "weight": {"kind": "power", "alpha": -2}})
    assert run(path, tmp_path / "o") == 2


def test_unknown_corpus_exits_2(tmp_path):
    path = write(tmp_path, "c.json", {"experiment": "norm", "weight": {"kind": "power", "alpha": 0},
                                      "family": {"corpus": "nope"}})
    assert run(path, tmp_path / "o") == 2


def test_resolution_failure_exits_3(tmp_path, capsys):
    path = write(tmp_path, "r.json", {
        "experiment": "norm", "weight": {"kind": "power", "alpha": 0},
        "family": [{"variant": "singular_inner", "atoms": [[0, 1]]}],
        "quantities": ["besov"], "config": {"radial_epsilon": 1e-9}})
    assert run(path, tmp_path / "o") == 3
    assert "resolution limit" in capsys.readouterr().err


def test_failed_expectation_exits_4_only_with_assert(tmp_path):
    spec = {"experiment": "classify", "weight": {"kind": "power", "alpha": 1.5},
            "exponents": {"p": 2}, "expect": {"in_Dp": "yes"}}
    path = write(tmp_path, "e.json", spec)
    assert run(path, tmp_path / "o1") == 0
    assert run(path, tmp_path / "o2", "--assert") == 4
    report = json.loads((tmp_path / "o2" / "report.json").read_text())
    assert report["invariants"][0]["observed"] == "no"


def test_refine_flag_records_refined_base(tmp_path):
    spec = {"experiment": "norm", "weight": {"kind": "power", "alpha": 0.5},
            "family": [{"variant": "monomial", "n": 3}], "quantities": ["besov"]}
    path = write(tmp_path, "n.json", spec)
    assert run(path, tmp_path / "o", "--refine") == 0
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert report["refined_base"] is True
    assert report["config"]["angular_log2_size"] == 13


def test_norm_subcommand(capsys):
    assert main(["norm", '{"variant": "monomial", "n": 1}', '{"kind": "power", "alpha": 0}',
                 "--quantity", "besov"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["estimate"]["value"] == pytest.approx(1.0, rel=1e-5)


def test_classify_weight_subcommand_csv(tmp_path, capsys):
    path = tmp_path / "w.csv"
    rows = [(1 - 10 ** (-k / 10), 1.0) for k in range(0, 61)]
    path.write_text("r,nu\n" + "\n".join(f"{r:.17g},{v}" for r, v in rows))
    assert main(["classify-weight", str(path), "-p", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["in_D_hat"]["verdict"] == "yes"


def test_list_corpus(capsys):
    assert main(["list-corpus"]) == 0
    text = capsys.readouterr().out
    assert "theorem3" in text and "corpus version 1" in text
    assert main(["list-corpus", "constants"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["variant"] == "constant"


def test_docs_schema_matches_packaged_copy():
    docs = json.loads((MANIFESTS.parent / "manifest.schema.json").read_text())
    assert docs == manifest_schema()
