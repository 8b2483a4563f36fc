import pandas as pd
import pytest

from feynman_silt.errors import InputError, ManifestError
from feynman_silt.experiments.common.manifest import OracleComparison, RunManifest, read_table, write_table
from feynman_silt.experiments.report import report, write_dat


def save_manifest(directory, started="2026-01-01T00:00:00+00:00", gap_passed=True):
    config = {"kind": "silt-convergence", "seed": 1, "output": "results", "shards": 1, "workers": 1,
              "parameters": {"T": 1.0, "eps": [0.1, 0.01, 0.001]}}
    comparisons = [OracleComparison("final gap", 0.001 if gap_passed else 0.1, 0., 0.01, detail="below the threshold")]
    manifest = RunManifest("silt-convergence", config, "0.3.0", started, started, {}, {"final_gap": 0.001},
                           comparisons, {})
    gaps = pd.DataFrame({"epsilon": [0.1, 0.01, 0.001], "delta": [0.01, 0.001, 0.0001], "gap": [0.1, 0.01, 0.001]})
    checks = pd.DataFrame({"check": ["wick formula"], "error": [1e-14], "passed": [True]})
    manifest.save(directory, {"gaps": gaps, "checks": checks})
    return manifest


def test_report_summary(tmp_path):
    save_manifest(tmp_path)
    text = report([tmp_path])
    assert text.startswith("== silt-convergence (feynman-silt 0.3.0) ==")
    assert "seed 1, shards 1" in text
    assert "gaps decrease monotonically" in text
    assert "[pass] final gap" in text
    assert "final_gap = 0.001" in text
    assert text.rstrip().endswith("result: pass")


def test_report_failure(tmp_path):
    save_manifest(tmp_path, gap_passed=False)
    text = report([tmp_path / "manifest.json"])
    assert "[FAIL] final gap" in text
    assert text.rstrip().endswith("result: FAIL")


def test_reports_ignore_timestamps(tmp_path):
    save_manifest(tmp_path / "a", started="2026-01-01T00:00:00+00:00")
    save_manifest(tmp_path / "b", started="2026-06-01T12:00:00+00:00")
    assert report([tmp_path / "a"]) == report([tmp_path / "b"])
    assert report([tmp_path / "a", tmp_path / "b"]).count("== silt-convergence") == 2


def test_report_data_files(tmp_path):
    save_manifest(tmp_path / "run")
    report([tmp_path / "run"], data_dir=tmp_path / "data")
    lines = (tmp_path / "data" / "0_silt-convergence_gaps.dat").read_text().splitlines()
    assert lines[0].startswith("# silt-convergence gaps from ")
    assert lines[1] == "# epsilon delta gap"
    assert lines[2].split() == ["0.1", "0.01", "0.1"]
    assert len(lines) == 5
    checks = (tmp_path / "data" / "0_silt-convergence_checks.dat").read_text().splitlines()
    assert checks[2].split() == ["wick_formula", "1e-14", "1"]


def test_report_errors(tmp_path):
    with pytest.raises(InputError):
        report([])
    with pytest.raises(ManifestError):
        report([tmp_path / "missing"])
    for text in ["{", "[]", '{"manifest_version": 2}', '{"manifest_version": 1, "kind": "dos"}']:
        (tmp_path / "manifest.json").write_text(text)
        with pytest.raises(ManifestError):
            report([tmp_path])


def test_missing_table(tmp_path):
    manifest = save_manifest(tmp_path)
    (tmp_path / "gaps.csv").unlink()
    with pytest.raises(ManifestError):
        report([tmp_path])
    with pytest.raises(ManifestError):
        manifest.load_table("grid")


def test_table_format(tmp_path):
    path = write_table(pd.DataFrame({"g": [0., 1.], "value": [1 + 2j, 0.5 - 1j]}), tmp_path / "t.csv", "propagator",
                       "results")
    table = read_table(path)
    assert list(table.columns) == ["g", "value_re", "value_im"]
    assert list(table["value_im"]) == [2., -1.]
    path.write_text("# feynman-silt csv v2 kind=dos table=results\na\n1\n")
    with pytest.raises(ManifestError):
        read_table(path)
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ManifestError):
        read_table(path)


def test_write_dat_precision(tmp_path):
    path = write_dat(pd.DataFrame({"x": [1 / 3]}), tmp_path / "x.dat", "title")
    assert path.read_text().splitlines() == ["# title", "# x", "0.333333333333"]
