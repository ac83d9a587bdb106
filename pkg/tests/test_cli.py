import json

import pytest

from src.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def config_file(tmp_path):
    """レポートと核キャッシュを tmp_path に向けた設定ファイル"""
    path = tmp_path / "check_config.json"
    config = {
        "defaults": {"n": 3, "k": 1, "seed": 11, "mode": "exact", "report": str(tmp_path / "report.txt")},
        "runner": {"max_workers": 2, "kernel_dir": str(tmp_path / "kernels")},
        "timezone": "UTC",
    }
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


def test_list_prints_registered_checks(capsys, config_file):
    assert main(["--config", str(config_file), "list"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "lemma6" in out
    assert "Theorem 8" in out


def test_missing_command_is_usage_error(capsys):
    assert main([]) == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err


def test_unknown_check_is_usage_error(config_file):
    assert main(["--config", str(config_file), "check", "no-such-check"]) == EXIT_USAGE


def test_invalid_option_is_usage_error(config_file):
    assert main(["--config", str(config_file), "check", "lemma6", "--mode", "fuzzy"]) == EXIT_USAGE
    assert main(["--config", str(config_file), "check", "lemma6", "--tol", "-1"]) == EXIT_USAGE


def test_check_writes_report(capsys, config_file, tmp_path):
    report = tmp_path / "out" / "lemma6.txt"
    code = main(["--config", str(config_file), "check", "lemma6", "--n", "3", "--k", "2", "--report", str(report)])
    assert code == EXIT_OK
    text = report.read_text(encoding="utf-8")
    assert "name: lemma6" in text
    assert "status: pass" in text
    assert "statements: Lemma 6" in text
    assert "pass" in capsys.readouterr().out


def test_check_reports_errors_with_exit_code_one(capsys, config_file, tmp_path):
    """壊れた核キャッシュは error になり終了コード 1"""
    kernels = tmp_path / "kernels"
    kernels.mkdir()
    (kernels / "zk_n3_k1.kernel").write_text("broken\n", encoding="utf-8")
    code = main(["--config", str(config_file), "check", "reproducing", "--quiet"])
    assert code == EXIT_FAILED
    assert "FAILED reproducing" in capsys.readouterr().err


def test_gen_kernel_writes_file(capsys, config_file, tmp_path):
    out = tmp_path / "zk.kernel"
    assert main(["--config", str(config_file), "gen-kernel", "--n", "3", "--k", "1", "--kind", "zk", "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("# rarita-schwinger kernel")
    assert "Zk n=3 k=1" in capsys.readouterr().out


def test_gen_kernel_rejects_bad_arguments(config_file):
    assert main(["--config", str(config_file), "gen-kernel", "--n", "3", "--k", "1", "--kind", "fk"]) == EXIT_USAGE
    assert main(["--config", str(config_file), "gen-kernel", "--n", "2", "--k", "1", "--kind", "zk"]) == EXIT_USAGE


def test_eval_ek(capsys, config_file):
    args = ["--config", str(config_file), "eval-ek", "--n", "3", "--k", "1", "--x", "1,0,0", "--u", "0,1,0", "--v", "0,0,1"]
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out.strip()
    assert main(args[:-1] + ["0,1"]) == EXIT_USAGE
