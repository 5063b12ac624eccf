import csv

import pytest
import simplejson as json

from bbext.cli import run_check, run_experiment
from bbext.cli.config import ExperimentConfig, TRule, parse_length
from bbext.errors import ConfigurationError


def test_parse_length():
    assert parse_length(4096) == 4096
    assert parse_length("4096") == 4096
    assert parse_length("32KiB") == 8 * 32 * 1024
    with pytest.raises(ConfigurationError):
        parse_length("lots")


def test_experiment_config(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({"protocol": "sync-half-ba", "n": [4, 7], "l": ["8B", 128], "t_rule": "max_half"}))
    config = ExperimentConfig.load(str(path), seeds=[1, 2])
    assert config.t_rule is TRule.MAX_HALF
    assert config.lengths() == [64, 128]
    assert [config.t_for(n) for n in config.n] == [1, 3]
    assert len(list(config.cells())) == 2 * 2 * 1 * 2


@pytest.mark.parametrize(
    "fields",
    [
        {"protocol": "sync-half-ba", "n": [4], "l": [64]},
        {"protocol": "sync-half-ba", "n": [4], "l": [64], "t_rule": "max_third"},
        {"protocol": "sync-eps-bb", "n": [4], "l": [64], "t_rule": "max_eps"},
        {"protocol": "sync-half-ba", "n": [4], "l": [64], "t": 1, "adversaries": ["gremlins"]},
        {"protocol": "sync-half-ba", "n": [], "l": [64], "t": 1},
        {"protocol": "no-such-protocol", "n": [4], "l": [64], "t": 1},
    ],
)
def test_experiment_config_rejects(fields):
    with pytest.raises(ConfigurationError):
        ExperimentConfig.load(**fields)


def test_run_experiment(tmp_path):
    out = tmp_path / "results"
    argv = ["--protocol", "sync-half-ba", "--n", "4,5", "--l", "64", "--t_rule", "max_half"]
    argv += ["--adversary", "honest,silent", "--seed", "3", "--out", str(out)]
    assert run_experiment.main(argv) == run_experiment.EXIT_OK

    with open(out / "metrics.csv") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4
    cells = [(row["n"], row["adversary"]) for row in rows]
    assert cells == [("4", "honest"), ("4", "silent"), ("5", "honest"), ("5", "silent")]

    record = json.loads((out / "sync-half-ba_n4_t1_l64_silent_s3.json").read_text())
    assert record["ok"] is True
    assert record["properties"]["agreement"] is True
    assert record["metrics"]["honest_bits_total"] == int(rows[1]["honest_bits"])


def test_run_experiment_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("BBEXT_SEED", "7")
    out = tmp_path / "results"
    argv = ["--protocol", "async-third-rb", "--n", "4", "--l", "64", "--t_rule", "max_third", "--out", str(out)]
    argv += ["--oracle", "async_rb=concrete"]
    assert run_experiment.main(argv) == run_experiment.EXIT_OK
    record = json.loads((out / "async-third-rb_n4_t1_l64_honest_s7.json").read_text())
    assert record["oracles"]["async_rb"] == "concrete"


def test_run_experiment_config_errors(tmp_path):
    out = str(tmp_path / "results")
    assert run_experiment.main(["--protocol", "sync-half-ba", "--n", "4", "--l", "64", "--t", "2", "--out", out]) == 2
    assert run_experiment.main(["--protocol", "sync-half-ba", "--n", "4", "--l", "64", "--out", out]) == 2
    assert run_experiment.main(["--config", str(tmp_path / "missing.json")]) == 2


def test_run_check(tmp_path, capsys):
    report = tmp_path / "star.json"
    assert run_check.main(["star", "--scale", "0.01", "--report", str(report)]) == 0
    assert "property" in capsys.readouterr().out

    summary = json.loads(report.read_text())
    assert summary["suite"] == "star"
    assert summary["ok"] is True
    assert all(entry["ok"] for entry in summary["properties"])

    with pytest.raises(SystemExit) as e:
        run_check.main(["no-such-suite"])
    assert e.value.code == 2
