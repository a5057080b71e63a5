"""
Тесты для CLI: коды выхода, приоритет настроек, стабильность вывода
"""
import json
import os

import pytest

from src.main import (
    EXIT_CAP_EXCEEDED,
    EXIT_DISAGREEMENT,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    build_parser,
    build_run_config,
    exit_status,
    load_expectations,
    main,
    resolve_config_path,
)
from src.modules.homology import FieldTag
from src.modules.theorems import VerificationReport
from src.monitel_framework.config import ConfigManager


@pytest.fixture
def cli_config(tmp_path):
    """Конфиг в tmp: журнал только в stderr"""
    def make(run=None):
        path = tmp_path / "config.json"
        data = {"logging": {"level": "WARNING", "file": None}, "run": {"checks": ["purity", "dim"], **(run or {})}}
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return make


def run_cli(*args):
    return main([str(a) for a in args])


def test_verify_ok(cli_config, capsys):
    code = run_cli("verify", "--config", cli_config(), "--family", "cycle:5", "--q", "1..3",
                   "--checks", "purity,dim,depth")
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    records = [json.loads(line) for line in lines]
    assert [r["q"] for r in records] == [1, 2, 3]
    assert records[2]["computed"]["pure"] is False
    assert records[2]["computed"]["depth"] == {"gf2": 5}


def test_verify_disagreement(cli_config, tmp_path, capsys):
    expect = tmp_path / "expect.json"
    expect.write_text(json.dumps({"cycle:5": {"2": {"dim": 99}}}), encoding="utf-8")
    code = run_cli("verify", "--config", cli_config(), "--family", "cycle:5", "--q", "2", "--expect", expect)
    assert code == EXIT_DISAGREEMENT
    record = json.loads(capsys.readouterr().out)
    assert record["agree"]["dim"] is False


def test_verify_wildcard_expectations(cli_config, tmp_path, capsys):
    expect = tmp_path / "expect.json"
    expect.write_text(json.dumps({"*": {"1": {"pure": True}}}), encoding="utf-8")
    code = run_cli("verify", "--config", cli_config(), "--family", "path:2..3", "--q", "1", "--expect", expect)
    assert code == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 2


@pytest.mark.parametrize("source", [["--family", "cycle:x"], ["--family", "hexagon:6"], ["--graph", "missing.g6"]])
def test_verify_parse_errors(cli_config, source):
    assert run_cli("verify", "--config", cli_config(), *source) == EXIT_PARSE_ERROR


def test_verify_bad_graph_file(cli_config, tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1 2\n", encoding="utf-8")
    assert run_cli("verify", "--config", cli_config(), "--graph", bad) == EXIT_PARSE_ERROR


def test_verify_bad_expectations(cli_config, tmp_path):
    expect = tmp_path / "expect.json"
    expect.write_text("[1, 2]", encoding="utf-8")
    code = run_cli("verify", "--config", cli_config(), "--family", "cycle:4", "--expect", expect)
    assert code == EXIT_PARSE_ERROR


def test_verify_bad_checks(cli_config):
    code = run_cli("verify", "--config", cli_config(), "--family", "cycle:4", "--checks", "purity,magic")
    assert code == EXIT_PARSE_ERROR


def test_missing_source_is_usage_error(cli_config):
    with pytest.raises(SystemExit) as exc:
        run_cli("verify", "--config", cli_config())
    assert exc.value.code == EXIT_PARSE_ERROR


def test_broken_config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{", encoding="utf-8")
    assert run_cli("verify", "--config", path, "--family", "cycle:4") == EXIT_PARSE_ERROR


def test_base_vertex_cap(cli_config):
    code = run_cli("verify", "--config", cli_config({"max_base_vertices": 4}), "--family", "cycle:5")
    assert code == EXIT_CAP_EXCEEDED


def test_indeterminate_shelling(cli_config, tmp_path, capsys):
    expect = tmp_path / "expect.json"
    expect.write_text(json.dumps({"kbip:3,3": {"1": {"shellable": True}}}), encoding="utf-8")
    code = run_cli("verify", "--config", cli_config(), "--family", "kbip:3,3", "--raw", "--q", "1",
                   "--checks", "shelling", "--cap", "1", "--expect", expect)
    assert code == EXIT_CAP_EXCEEDED
    record = json.loads(capsys.readouterr().out)
    assert record["computed"]["shellable"] == "indeterminate"


def test_output_is_stable_across_jobs(cli_config, tmp_path):
    config = cli_config()
    outputs = []
    for jobs in ("1", "2"):
        target = tmp_path / f"report_{jobs}.csv"
        code = run_cli("verify", "--config", config, "--family", "cycle:3..5", "--checks", "purity,dim,sr",
                       "--format", "csv", "--jobs", jobs, "--output", target)
        assert code == EXIT_OK
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"graph,n,m,ell,nu,q,check")


def test_text_format_with_timing(cli_config, capsys):
    code = run_cli("verify", "--config", cli_config(), "--family", "path:3", "--q", "1",
                   "--format", "text", "--timing")
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("path:3 q=1 n=3 m=inf ell=inf nu=3 [OK]")
    assert "elapsed_ms=" in out


def test_sweep(cli_config, capsys):
    code = run_cli("sweep", "--config", cli_config(), "--family", "cycle", "--n", "3..4", "--q-policy", "shellable")
    assert code == EXIT_OK
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(r["graph"], r["q"]) for r in records] == [("cycle:3", 1), ("cycle:3", 2), ("cycle:4", 1), ("cycle:4", 2)]


def test_sweep_bad_range(cli_config):
    assert run_cli("sweep", "--config", cli_config(), "--family", "cycle", "--n", "6..3") == EXIT_PARSE_ERROR


def test_oracle_colon(cli_config, capsys):
    code = run_cli("oracle", "colon", "--config", cli_config(), "--family", "cycle:3", "--matching", "x1x2")
    assert code == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["colon"] == [[2, 3], [2, 4], [2, 5], [3, 4]]
    assert record["ok"] is True


@pytest.mark.parametrize("kind", ["sr", "facets", "even-conn"])
def test_oracle_kinds(cli_config, capsys, kind):
    code = run_cli("oracle", kind, "--config", cli_config({"colon_max_matching": 2}), "--family", "cycle:4")
    assert code == EXIT_OK
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert records and all(r["ok"] for r in records)


def test_oracle_bad_matching(cli_config):
    code = run_cli("oracle", "colon", "--config", cli_config(), "--family", "cycle:3", "--matching", "x1y2")
    assert code == EXIT_PARSE_ERROR


def test_jobs_precedence(cli_config):
    config = ConfigManager(cli_config({"jobs": 4}))
    parser = build_parser()
    args = parser.parse_args(["verify", "--family", "cycle:4"])
    assert build_run_config(args, config, environ={}).jobs == 4
    assert build_run_config(args, config, environ={"MFQ_JOBS": "3"}).jobs == 3
    args = parser.parse_args(["verify", "--family", "cycle:4", "--jobs", "2"])
    assert build_run_config(args, config, environ={"MFQ_JOBS": "3"}).jobs == 2
    with pytest.raises(ValueError):
        build_run_config(parser.parse_args(["verify", "--family", "cycle:4"]), config, environ={"MFQ_JOBS": "many"})


def test_run_config_from_file(cli_config):
    config = ConfigManager(cli_config({"field": "both", "q_range": "1..2", "shelling_cap": 5}))
    args = build_parser().parse_args(["verify", "--family", "cycle:4", "--cap", "7"])
    run = build_run_config(args, config, environ={})
    assert run.fields == (FieldTag.GF2, FieldTag.RATIONALS)
    assert run.q_values == (1, 2)
    assert run.shelling_cap == 7
    assert run.checks == ("purity", "dim")
    assert run.options.shelling_cap == 7


def test_load_expectations(tmp_path):
    path = tmp_path / "expect.json"
    path.write_text(json.dumps({"c5": {"3": {"pure": False}}}), encoding="utf-8")
    assert load_expectations(path) == {"c5": {3: {"pure": False}}}
    with pytest.raises(ValueError):
        load_expectations(tmp_path / "missing.json")


def test_exit_status_precedence():
    ok = VerificationReport("a", 3, 3, 3, 3, 1, agree={"dim": True})
    bad = VerificationReport("b", 3, 3, 3, 3, 1, agree={"dim": False})
    unsure = VerificationReport("c", 3, 3, 3, 3, 1, agree={"shellable": None}, indeterminate=["shellable"])
    assert exit_status([ok]) == EXIT_OK
    assert exit_status([ok, unsure]) == EXIT_CAP_EXCEEDED
    assert exit_status([unsure, bad]) == EXIT_DISAGREEMENT


def test_output_auto_uses_output_dir(tmp_path, capsys):
    out_dir = tmp_path / "reports"
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "logging": {"level": "WARNING", "file": None},
        "io": {"output_dir": str(out_dir)},
        "run": {"checks": ["dim"]},
    }), encoding="utf-8")
    code = run_cli("verify", "--config", config, "--family", "cycle:5", "--q", "1", "--output", "auto")
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    report = out_dir / "verify.jsonl"
    assert json.loads(report.read_text(encoding="utf-8"))["q"] == 1


def test_graph_directory(cli_config, tmp_path, capsys):
    graphs = tmp_path / "graphs"
    graphs.mkdir()
    (graphs / "p3.edges").write_text("3\n0 1\n1 2\n", encoding="utf-8")
    (graphs / "notes.md").write_text("не граф\n", encoding="utf-8")
    code = run_cli("verify", "--config", cli_config(), "--graph", graphs, "--q", "1")
    assert code == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 1


def test_graph_directory_missing(cli_config, tmp_path):
    code = run_cli("verify", "--config", cli_config(), "--graph", tmp_path / "nowhere")
    assert code == EXIT_PARSE_ERROR


def test_resolve_config_path_from_bundle(tmp_path, monkeypatch):
    bundle = tmp_path / "bundle"
    bundle.mkdir()
    (bundle / "config.json").write_text("{}", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr("sys._MEIPASS", str(bundle), raising=False)
    assert resolve_config_path("config.json") == os.path.join(str(bundle), "config.json")
    assert resolve_config_path("other.json") == "other.json"


def test_resolve_config_path_prefers_existing(tmp_path, monkeypatch):
    (tmp_path / "config.json").write_text("{}", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr("sys._MEIPASS", str(tmp_path / "bundle"), raising=False)
    assert resolve_config_path("config.json") == "config.json"
