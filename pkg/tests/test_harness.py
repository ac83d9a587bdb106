import asyncio

import pytest

from src.core.errors import CheckError, VerificationError
from src.core.observable import CHECK_FINISHED, CHECK_STARTED, RUN_FINISHED, Observable
from src.models.harness.check_spec import CATEGORIES, CheckContext, judge, register
from src.models.harness.registry import (
    STATEMENT_MAP,
    SUPPORTING_CHECKS,
    OutOfScope,
    all_checks,
    coverage_problems,
    get_check,
    resolve,
    statements_for,
)
from src.models.harness.report import ERROR, FAIL, PASS, SKIPPED, CheckReport, CheckResult
from src.models.harness.runner import CheckRunner, run_check
from src.models.residual import Residual

FAST_CHECKS = ["lemma6", "dirac-square", "orthonormality", "lemma3"]


def test_every_statement_is_covered():
    """対応表に不整合がなく、全ての登録チェックがどこかから参照される"""
    assert coverage_problems() == []
    numbered = [s for s in STATEMENT_MAP if s.split(" ")[0] in ("Lemma", "Theorem", "Corollary", "Definition")]
    assert {f"Lemma {i}" for i in range(1, 7)} <= set(numbered)
    assert {f"Theorem {i}" for i in range(1, 12)} <= set(numbered)
    assert STATEMENT_MAP["Definition 1"] == ("orthonormality", "reproducing")
    assert STATEMENT_MAP["Definition 2"] == ("tk-delta", "tk-inverse")
    assert set(SUPPORTING_CHECKS) <= set(all_checks())


def test_checks_are_ordered_by_category():
    categories = [spec.category for spec in all_checks().values()]
    assert categories == sorted(categories, key=CATEGORIES.index)


def test_resolve_names():
    """"all"、カンマ区切り、リストのいずれも受け付け、重複は 1 回にまとめる"""
    assert len(resolve("all")) == len(all_checks())
    assert [s.name for s in resolve("lemma6, lemma3,lemma6")] == ["lemma6", "lemma3"]
    assert [s.name for s in resolve(["cif"])] == ["cif"]
    with pytest.raises(CheckError):
        resolve("lemma6,no-such-check")
    with pytest.raises(CheckError):
        resolve("")
    with pytest.raises(CheckError):
        get_check("theorem99")


def test_statements_for_check():
    assert statements_for("lemma6") == ["Lemma 6"]
    assert statements_for("cif") == ["Theorem 8"]
    assert statements_for("dirac-square") == []
    assert statements_for("tk-delta") == ["Theorem 9", "Definition 2"]
    assert statements_for("reproducing") == ["Definition 1"]


def test_out_of_scope_entries_are_not_coverage(monkeypatch):
    """対象外の項目はチェックを参照せず、空の対応は不整合として報告する"""
    monkeypatch.setitem(STATEMENT_MAP, "Remark 1", OutOfScope("記述のみ"))
    assert coverage_problems() == []
    assert "Remark 1" not in statements_for("lemma6")
    monkeypatch.setitem(STATEMENT_MAP, "Remark 2", ())
    assert coverage_problems() == ["Remark 2 に対応するチェックがありません"]


def test_register_rejects_duplicates_and_unknown_category():
    with pytest.raises(CheckError):
        register("lemma6", "", "exact")(lambda ctx: Residual.zero())
    with pytest.raises(CheckError):
        register("unused-name", "", "symbolic")


def test_judge_policy(make_config):
    """記号チェックは exact モードで厳密な 0 を要求し、float モードでは tolerance と比べる"""
    symbolic = get_check("lemma6")
    numeric = get_check("stokes")
    small = Residual.float_gap(1e-9)
    assert not judge(symbolic, small, make_config())
    assert judge(symbolic, small, make_config(mode="float"))
    assert judge(numeric, small, make_config())
    assert not judge(numeric, Residual.float_gap(1e-3), make_config())
    assert judge(symbolic, Residual.zero(), make_config())


@pytest.mark.parametrize("name", FAST_CHECKS)
def test_fast_checks_pass(make_config, name):
    result = run_check(name, make_config())
    assert result.status == PASS, result.witness or result.reason
    assert result.params["n"] == 3


def test_lemma6_for_several_parameters(make_config):
    for n, k in [(3, 2), (4, 1), (5, 1)]:
        result = run_check("lemma6", make_config(n=n, k=k))
        assert result.status == PASS
        assert result.residual == "exact-zero"


def test_kernel_checks_are_skipped_below_three(make_config):
    """n = 2 では核を使うチェックと積分チェックはスキップされる"""
    config = make_config(n=2)
    assert run_check("reproducing", config).status == SKIPPED
    assert run_check("stokes", config).status == SKIPPED
    assert run_check("dirac-square", config).status == PASS


def test_kernel_failure_becomes_error(make_config, tmp_path):
    """壊れた核キャッシュは error として報告され、実行は続く"""
    (tmp_path / "zk_n3_k1.kernel").write_text("broken\n", encoding="utf-8")
    config = make_config(kernel_dir=str(tmp_path))
    result = run_check("reproducing", config)
    assert result.status == ERROR
    assert "Zk" in result.reason


def test_unknown_check_raises(make_config):
    with pytest.raises(CheckError):
        run_check("no-such-check", make_config())


def test_context_caches_kernels(make_config):
    ctx = CheckContext(make_config())
    assert ctx.kernel("Zk") is ctx.kernel("Zk")
    assert ctx.points(3) == ctx.points(3)
    assert ctx.points(3) != ctx.points(3, salt=1)


def test_runner_notifies_observers(make_config):
    """check_started / check_finished はチェックごと、run_finished は 1 回"""
    events = []
    observable = Observable()
    observable.add_observer(lambda data: events.append((CHECK_STARTED, data["name"])), CHECK_STARTED)
    observable.add_observer(lambda result: events.append((CHECK_FINISHED, result.name)), CHECK_FINISHED)

    async def on_finished(report):
        events.append((RUN_FINISHED, report.exit_code))

    observable.add_observer(on_finished, RUN_FINISHED)
    report = CheckRunner(make_config(checks=FAST_CHECKS), observable).run()
    assert [r.name for r in report.results] == FAST_CHECKS
    assert report.exit_code == 0
    assert sorted(name for e, name in events if e == CHECK_FINISHED) == sorted(FAST_CHECKS)
    assert events[-1] == (RUN_FINISHED, 0)


def test_run_async_directly(make_config):
    async def run():
        return await CheckRunner(make_config()).run_async(["lemma6"])

    report = asyncio.run(run())
    assert report.counts()[PASS] == 1


def _result(name, status):
    return CheckResult(name, status, "exact-zero", 1.0, {"n": 3}, "anchor")


def test_report_exit_code_and_render(tmp_path):
    """skipped は合格扱い、fail と error があれば終了コード 1"""
    report = CheckReport({"n": 3, "k": 1})
    report.add(_result("a", PASS))
    report.add(_result("b", SKIPPED))
    assert report.exit_code == 0
    report.add(_result("c", FAIL))
    report.add(_result("d", ERROR))
    assert report.exit_code == 1
    assert [r.name for r in report.failures()] == ["c", "d"]
    assert report.counts() == {PASS: 1, FAIL: 1, SKIPPED: 1, ERROR: 1}
    path = report.write(tmp_path / "reports" / "report.txt")
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# rarita-schwinger verification report")
    assert text.count("[check]") == 4
    assert "total: 4 pass: 1 fail: 1 skipped: 1 error: 1" in text
    assert "exit_code: 1" in text


def test_report_rejects_duplicate_results():
    report = CheckReport({})
    report.add(_result("a", PASS))
    with pytest.raises(VerificationError):
        report.add(_result("a", PASS))
