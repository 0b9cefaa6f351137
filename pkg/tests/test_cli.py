import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from bergcauchy.cli import main
from bergcauchy.config import Config, ConfigError, load_config, parse_config
from bergcauchy.suites import SUITES

ROOT = Path(__file__).resolve().parents[1]
REPORT_SCHEMA = json.loads(resources.files("bergcauchy").joinpath("schemas/report.schema.json").read_text())

# small enough to run every suite in a couple of seconds
FAST = {
    "levels": 3,
    "lemma1_count": 5,
    "isometry_count": 5,
    "theorem1_domains": ["disk", "quad03"],
    "theorem1_max_degree": 1,
    "beurling_max_k": 2,
    "riesz_levels": 2,
}


def write_config(tmp_path, **overrides) -> Path:
    path = tmp_path / "config.json"
    path.write_text(json.dumps({**Config().to_dict(), **FAST, **overrides}, indent=2))
    return path


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert "invalid choice" in capsys.readouterr().err


def test_missing_subcommand():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_malformed_json_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "seed": 1,\n  "levels": ,\n}\n')
    assert main(["theorem1", "--config", str(path), "--out", str(tmp_path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_schema_violation_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "seed": 1,\n  "delta": 0.1,\n  "levels": "eight"\n}\n')
    assert main(["theorem1", "--config", str(path), "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "line 4" in err and "levels" in err


def test_unknown_config_key_rejected():
    with pytest.raises(ConfigError):
        parse_config('{"sead": 3}')


def test_missing_config_file(tmp_path):
    assert main(["theorem1", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 2


def test_unknown_domain_is_config_error(tmp_path):
    cfg = write_config(tmp_path, theorem1_domains=["square"])
    assert main(["theorem1", "--config", str(cfg), "--out", str(tmp_path / "o"), "--quiet"]) == 2


def test_shipped_defaults_match_dataclass():
    assert load_config(ROOT / "configs" / "default.json") == Config()


def test_failure_exits_one_and_names_record(tmp_path, caplog):
    # degree-2 inversion cannot reproduce a pole, so theorem2 is inconclusive
    cfg = write_config(tmp_path, inversion_degree=2, theorem2_domains=["quad03"])
    out = tmp_path / "o"
    assert main(["theorem2", "--config", str(cfg), "--out", str(out)]) == 1
    assert "FAIL theorem2" in caplog.text and "quad03" in caplog.text
    doc = json.loads((out / "theorem2.json").read_text())
    assert doc["passed"] is False
    assert doc["first_failure"]["domain"] == "quad03"


def test_theorem1_default_shape(tmp_path):
    out = tmp_path / "o"
    assert main(["theorem1", "--out", str(out), "--quiet"]) == 0
    lines = (out / "theorem1.csv").read_text().splitlines()
    assert lines[0] == "domain,g,n,r_n,rho_n,ref_norm,ratio,pass"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 3 * 4 * 8
    assert {r[0] for r in rows} == {"disk", "quad03", "cubic025"}
    assert all(r[-1] == "true" for r in rows)


def test_reports_validate_and_are_deterministic(tmp_path):
    cfg = write_config(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["all", "--config", str(cfg), "--out", str(a), "--quiet"]) == 0
    assert main(["all", "--config", str(cfg), "--out", str(b), "--quiet"]) == 0
    for name in SUITES:
        assert (a / f"{name}.csv").read_bytes() == (b / f"{name}.csv").read_bytes()
        doc = json.loads((a / f"{name}.json").read_text())
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["suite"] == name and doc["passed"] is True


def test_all_is_conjunction(tmp_path):
    cfg = write_config(tmp_path, inversion_degree=2)
    single = {name: main([name, "--config", str(cfg), "--out", str(tmp_path / name), "--quiet"]) for name in SUITES}
    assert single["theorem2"] == 1
    assert sum(code != 0 for code in single.values()) == 1
    combined = main(["all", "--config", str(cfg), "--out", str(tmp_path / "all"), "--quiet"])
    assert combined == (1 if any(single.values()) else 0)
    for name in SUITES:
        assert (tmp_path / "all" / f"{name}.csv").read_bytes() == (tmp_path / name / f"{name}.csv").read_bytes()


def test_flag_overrides(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "o"
    assert main(["theorem1", "--config", str(cfg), "--out", str(out), "--levels", "2", "--samples", "128", "--quiet"]) == 0
    doc = json.loads((out / "theorem1.json").read_text())
    assert doc["config"]["levels"] == 2 and doc["config"]["samples"] == 128
    assert max(row["n"] for row in doc["rows"]) == 2


def test_seed_changes_random_suites(tmp_path):
    cfg = write_config(tmp_path)
    main(["verify-lemma1", "--config", str(cfg), "--out", str(tmp_path / "a"), "--seed", "1", "--quiet"])
    main(["verify-lemma1", "--config", str(cfg), "--out", str(tmp_path / "b"), "--seed", "2", "--quiet"])
    assert (tmp_path / "a" / "verify-lemma1.csv").read_bytes() != (tmp_path / "b" / "verify-lemma1.csv").read_bytes()


def test_env_var_sets_output_dir(tmp_path, monkeypatch):
    cfg = write_config(tmp_path)
    monkeypatch.setenv("BERGCAUCHY_OUT", str(tmp_path / "env"))
    assert main(["beurling", "--config", str(cfg), "--quiet"]) == 0
    assert (tmp_path / "env" / "beurling.csv").exists()
    # an explicit --out still wins
    assert main(["beurling", "--config", str(cfg), "--out", str(tmp_path / "flag"), "--quiet"]) == 0
    assert (tmp_path / "flag" / "beurling.csv").exists()


def test_no_temp_files_left(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "o"
    main(["riesz", "--config", str(cfg), "--out", str(out), "--quiet"])
    assert sorted(p.name for p in out.iterdir()) == ["riesz.csv", "riesz.json"]
