import json

import pytest

from weibull_records import RecordSample, RngStream, draw_pivotal_t, exact_ci_shape, gpv_scale
from weibull_records.cli import main

REAL = "26,27,40,41"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_extract_from_file(tmp_path, capsys):
    path = tmp_path / "raw.csv"
    path.write_text("5\n2\n7\n7\n9\n")
    code, out, _ = run_cli(capsys, "extract", "--input", str(path))
    assert code == 0
    assert out.strip() == "5,7,9"


def test_extract_inline_json(capsys):
    code, out, _ = run_cli(capsys, "extract", "--data", "5,2,7,7,9", "--json")
    assert code == 0
    assert json.loads(out) == {"records": [5.0, 7.0, 9.0], "count": 3}


def test_ci_shape_paper_values(capsys):
    code, out, _ = run_cli(
        capsys, "ci-shape", "--data", REAL, "--level", "0.95", "--method", "exact"
    )
    assert code == 0
    assert "(0.689019, 8.04618)" in out


def test_ci_shape_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "ci-shape", "--data", REAL, "--json")
    doc = json.loads(out)
    ci = exact_ci_shape(RecordSample((26.0, 27.0, 40.0, 41.0)), 0.95)
    assert doc == {
        "lower": ci.lower,
        "upper": ci.upper,
        "level": 0.95,
        "method": "exact-chi-square",
    }


def test_test_scale_matches_library(capsys):
    code, out, _ = run_cli(
        capsys, "test-scale", "--data", REAL, "--alpha0", "5", "--one-sided",
        "--M", "10000", "--seed", "1", "--json",
    )
    assert code == 0
    doc = json.loads(out)
    draws = draw_pivotal_t(RecordSample((26.0, 27.0, 40.0, 41.0)), 10_000, RngStream(1))
    expected = gpv_scale(draws, 5.0)
    assert doc["p_value"] == expected.p_value
    assert doc["p_value"] == pytest.approx(0.0227, abs=0.006)


def test_randomized_commands_reproducible(capsys):
    args = ("ci-scale", "--data", REAL, "--M", "2000", "--seed", "9", "--json")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_seed_env_override(capsys, monkeypatch):
    _, with_flag, _ = run_cli(capsys, "ci-scale", "--data", REAL, "--M", "2000",
                              "--seed", "123", "--json")
    monkeypatch.setenv("WEIBULL_RECORDS_SEED", "123")
    _, with_env, _ = run_cli(capsys, "ci-scale", "--data", REAL, "--M", "2000", "--json")
    assert with_flag == with_env


def test_region_and_area(capsys):
    code, out, _ = run_cli(capsys, "region", "--data", REAL, "--method", "b", "--json")
    doc = json.loads(out)
    assert doc["shape_lower"] == pytest.approx(0.5305, abs=1e-3)
    code, out, _ = run_cli(capsys, "area", "--data", REAL, "--method", "aj", "--j", "2", "--json")
    assert json.loads(out)["area"] == pytest.approx(166.688, abs=0.01)


def test_boundary_csv_stdout_and_file(tmp_path, capsys):
    out_path = tmp_path / "boundary.csv"
    code, out, _ = run_cli(
        capsys, "boundary", "--data", REAL, "--points", "10", "--out", str(out_path)
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "beta,alpha_lower,alpha_upper"
    assert len(lines) == 11
    assert out_path.read_text(encoding="utf-8").strip() == out.strip()


def test_simulate_small_run(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"scales": [1.0], "shapes": [1.0], "ns": [3],
                               "reps": 120, "M": 1000, "seed": 5}))
    out_path = tmp_path / "report.csv"
    code, out, _ = run_cli(
        capsys, "simulate", "--table", "1", "--config", str(cfg), "--out", str(out_path)
    )
    assert code == 0
    assert "coverage=" in out
    header = out_path.read_text().splitlines()[0]
    assert header.startswith("scale,shape,n,method,coverage")


def test_simulate_json_deterministic(capsys):
    args = ("simulate", "--table", "1", "--reps", "120", "--M", "1000",
            "--seed", "5", "--json")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["kind"] == "table1" and doc["cells"][0]["reps"] == 120


def test_data_errors_exit_1(capsys, tmp_path):
    code, _, err = run_cli(capsys, "fit", "--data", "26,27,26,41")
    assert code == 1 and "increasing" in err
    code, _, err = run_cli(capsys, "fit", "--data", "26,abc,40")
    assert code == 1 and "non-numeric" in err
    code, _, err = run_cli(capsys, "fit", "--input", str(tmp_path / "missing.csv"))
    assert code == 1 and "cannot read" in err
    code, _, err = run_cli(capsys, "fit")
    assert code == 1


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["test-shape", "--data", REAL])  # missing required --beta0
    assert exc.value.code == 2


def test_test_shape_text(capsys):
    code, out, _ = run_cli(
        capsys, "test-shape", "--data", REAL, "--beta0", "1.0", "--two-sided"
    )
    assert code == 0
    assert "do not reject" in out
