"""Job files, reports, diffing, caching, and the command-line interface."""

import json
from pathlib import Path

import pytest

from lgtft.cache import Cache
from lgtft.cli import main
from lgtft.errors import ValidationError
from lgtft.jobs import JobSpec, diff_reports, load_job, report_to_text, run_job


def _basic_job(**overrides):
    raw = {
        "variables": ["x"],
        "superpotential": "x^3",
        "branes": [{"name": "M1", "pairs": [["x", "x^2"]]}],
        "compute": "all",
    }
    raw.update(overrides)
    return raw


def _strip_timing(report):
    out = dict(report)
    out.pop("timing", None)
    return out


def test_run_job_jacobi_section():
    spec = JobSpec.from_dict(
        {"variables": ["x"], "superpotential": "x^3", "compute": "jacobi"}
    )
    report = run_job(spec)
    section = report["results"]["jacobi"]
    assert section["milnor_number"] == 2
    assert section["basis"] == ["1", "x"]
    assert section["trace"] == ["0", "1/3"]
    assert "koszul" not in report["results"]


def test_run_job_full_pipeline():
    spec = JobSpec.from_dict(_basic_job())
    report = run_job(spec)
    tft = report["results"]["tft"]
    assert tft["passed"] is True
    assert all(
        clause["status"] in ("pass", "skipped") for clause in tft["clauses"]
    )
    assert report["results"]["homs"]["M1|M1"]["dims"] == {"even": 1, "odd": 1}
    assert report["schema_version"] == "1"


def test_undefined_brane_reference_names_it():
    raw = _basic_job(hom_pairs=[["M1", "b7"]])
    with pytest.raises(ValidationError) as err:
        JobSpec.from_dict(raw)
    assert "b7" in str(err.value)


def test_duplicate_brane_names_rejected():
    raw = _basic_job(
        branes=[
            {"name": "M1", "pairs": [["x", "x^2"]]},
            {"name": "M1", "pairs": [["x^2", "x"]]},
        ]
    )
    with pytest.raises(ValidationError):
        JobSpec.from_dict(raw)


def test_unknown_field_rejected():
    with pytest.raises(ValidationError) as err:
        JobSpec.from_dict(_basic_job(typo_field=1))
    assert "typo_field" in str(err.value)


def test_determinism_across_runs_and_cache_states(tmp_path):
    spec = JobSpec.from_dict(_basic_job())
    plain = run_job(spec)
    cache = Cache(tmp_path / "cache")
    cold = run_job(spec, cache)  # populates the cache
    warm = run_job(spec, cache)  # replays from the cache
    texts = {
        report_to_text(_strip_timing(r)) for r in (plain, cold, warm)
    }
    assert len(texts) == 1


def test_cache_corruption_detected(tmp_path):
    spec = JobSpec.from_dict(
        {"variables": ["x"], "superpotential": "x^3", "compute": "jacobi"}
    )
    cache = Cache(tmp_path)
    baseline = run_job(spec, cache)
    corrupted = 0
    for path in Path(tmp_path).glob("groebner-*.json"):
        record = json.loads(path.read_text())
        record["payload"] = ["x^5"]  # wrong basis: Buchberger check must reject
        path.write_text(json.dumps(record))
        corrupted += 1
    assert corrupted == 1
    recomputed = run_job(spec, cache)
    assert _strip_timing(recomputed) == _strip_timing(baseline)


def test_diff_identical_is_empty():
    spec = JobSpec.from_dict(_basic_job())
    r1, r2 = run_job(spec), run_job(spec)
    outcome = diff_reports(r1, r2)
    assert outcome["schema_mismatch"] is None
    assert outcome["entries"] == []


def test_diff_normalization_touches_traces_not_dimensions():
    spec1 = JobSpec.from_dict(_basic_job())
    spec2 = JobSpec.from_dict(
        _basic_job(normalization={"bulk_scale": "2"})
    )
    r1, r2 = run_job(spec1), run_job(spec2)
    outcome = diff_reports(r1, r2)
    paths = [entry["path"] for entry in outcome["entries"]]
    assert paths  # something differs
    for path in paths:
        assert not path.startswith("results.homs")
        assert not path.startswith("results.koszul.table.dims")
        assert "milnor" not in path
    assert any(
        "trace" in p or "gram" in p or "cardy" in p or "normalization" in p
        for p in paths
    )


def test_diff_degree_bound_change_leaves_stable_rows_alone():
    spec1 = JobSpec.from_dict(_basic_job(compute="koszul", koszul_bound=12))
    spec2 = JobSpec.from_dict(_basic_job(compute="koszul", koszul_bound=14))
    r1, r2 = run_job(spec1), run_job(spec2)
    outcome = diff_reports(r1, r2)
    paths = [entry["path"] for entry in outcome["entries"]]
    assert paths
    for path in paths:
        # stabilized weighted tables only move their bound echoes, not dims
        assert "bound" in path, path


def test_diff_schema_mismatch_reported():
    spec = JobSpec.from_dict(_basic_job(compute="jacobi"))
    r1, r2 = run_job(spec), run_job(spec)
    r2["schema_version"] = "999"
    outcome = diff_reports(r1, r2)
    assert outcome["schema_mismatch"] == {"left": "1", "right": "999"}


def test_load_job_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        load_job(str(path))


# -- CLI ----------------------------------------------------------------------


def _write_job(tmp_path, raw):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(raw))
    return str(path)


def test_cli_run_writes_report(tmp_path, capsys):
    job = _write_job(tmp_path, _basic_job(compute="jacobi"))
    out = tmp_path / "report.json"
    code = main(
        ["run", job, "--output", str(out), "--cache-dir", str(tmp_path / "c")]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert report["results"]["jacobi"]["milnor_number"] == 2


def test_cli_run_stdout_and_no_cache(tmp_path, capsys):
    job = _write_job(tmp_path, _basic_job(compute="jacobi"))
    code = main(["run", job, "--no-cache"])
    assert code == 0
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["results"]["jacobi"]["basis"] == ["1", "x"]


def test_cli_validation_error_exit_code(tmp_path, capsys):
    job = _write_job(
        tmp_path, _basic_job(hom_pairs=[["M1", "b7"]])
    )
    code = main(["run", job])
    assert code == 2
    assert "b7" in capsys.readouterr().err


def test_cli_missing_job_file_is_validation_error(tmp_path, capsys):
    code = main(["run", str(tmp_path / "absent.json")])
    assert code == 2


def test_cli_normalization_override(tmp_path, capsys):
    job = _write_job(tmp_path, _basic_job(compute="jacobi"))
    code = main(
        ["run", job, "--no-cache", "--normalization", "bulk_scale=3"]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["jacobi"]["trace"] == ["0", "1"]


def test_cli_bad_normalization(tmp_path, capsys):
    job = _write_job(tmp_path, _basic_job(compute="jacobi"))
    assert main(["run", job, "--normalization", "c_d"]) == 2
    assert main(["run", job, "--normalization", "mystery=1"]) == 2


def test_cli_diff_and_clean_cache(tmp_path, capsys):
    job = _write_job(tmp_path, _basic_job(compute="jacobi"))
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    cache_dir = tmp_path / "cache"
    assert main(["run", job, "--output", str(out1), "--cache-dir", str(cache_dir)]) == 0
    assert main(["run", job, "--output", str(out2), "--cache-dir", str(cache_dir)]) == 0
    capsys.readouterr()
    assert main(["diff", str(out1), str(out2)]) == 0
    assert json.loads(capsys.readouterr().out) == []
    assert main(["clean-cache", "--cache-dir", str(cache_dir)]) == 0
    assert "removed" in capsys.readouterr().out
    assert not list(Path(cache_dir).glob("*.json"))


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("LGTFT_CACHE_DIR", str(tmp_path / "envcache"))
    cache = Cache()
    assert cache.directory == Path(tmp_path / "envcache")
