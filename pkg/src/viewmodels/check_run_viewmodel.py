"""
検証ダッシュボードのビューモデル
選択中の (n, k, mode, チェック) を保持し、CheckRunner の進捗イベントを View 向けの行データに変換する
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from src.core.config_loader import CheckConfigLoader
from src.core.errors import VerificationError
from src.core.logger import get_logger
from src.core.observable import CHECK_FINISHED, CHECK_STARTED, RUN_FINISHED, Observable
from src.models.harness.registry import all_checks, statements_for
from src.models.harness.report import CheckReport, CheckResult
from src.models.harness.runner import CheckRunner

N_CHOICES = (3, 4, 5)
K_CHOICES = (0, 1, 2, 3)


@dataclass
class CheckRow:
    """結果一覧の 1 行"""

    name: str
    category: str
    statements: str
    status: str = ""
    residual: str = ""
    time_ms: Optional[float] = None
    reason: str = ""


class CheckRunViewModel:
    def __init__(self, loader: Optional[CheckConfigLoader] = None):
        self.logger = get_logger()
        self.loader = loader or CheckConfigLoader()
        defaults = self.loader.build()
        self.n: int = defaults.n
        self.k: int = defaults.k
        self.mode: str = defaults.mode
        self.rows: Dict[str, CheckRow] = {
            spec.name: CheckRow(spec.name, spec.category, ", ".join(statements_for(spec.name)) or "-")
            for spec in all_checks().values()
        }
        self.selected: List[str] = [spec.name for spec in all_checks().values() if not spec.slow]
        self.running = False
        self.summary = ""
        self._row_changed_callbacks: List[Callable[[CheckRow], None]] = []
        self._run_state_callbacks: List[Callable[[bool, str], None]] = []
        self.observable = Observable()
        self.observable.add_observer(self._on_check_started, CHECK_STARTED)
        self.observable.add_observer(self._on_check_finished, CHECK_FINISHED)
        self.observable.add_observer(self._on_run_finished, RUN_FINISHED)
        self.logger.info("CheckRunViewModel初期化", checks=len(self.rows))

    # 入力

    def set_n(self, value: str) -> None:
        self.n = int(value)

    def set_k(self, value: str) -> None:
        self.k = int(value)

    def set_mode(self, value: str) -> None:
        self.mode = value

    def toggle(self, name: str, selected: bool) -> None:
        if selected and name not in self.selected:
            self.selected.append(name)
        elif not selected and name in self.selected:
            self.selected.remove(name)

    def is_selected(self, name: str) -> bool:
        return name in self.selected

    # コールバック

    def add_row_changed_callback(self, callback: Callable[[CheckRow], None]) -> None:
        if callback not in self._row_changed_callbacks:
            self._row_changed_callbacks.append(callback)

    def add_run_state_callback(self, callback: Callable[[bool, str], None]) -> None:
        if callback not in self._run_state_callbacks:
            self._run_state_callbacks.append(callback)

    def _notify_row(self, row: CheckRow) -> None:
        for callback in self._row_changed_callbacks:
            callback(row)

    def _notify_state(self) -> None:
        for callback in self._run_state_callbacks:
            callback(self.running, self.summary)

    # 実行

    async def run_selected(self) -> Optional[CheckReport]:
        """選択中のチェックを実行する。実行中の二重起動は無視する"""
        if self.running:
            return None
        if not self.selected:
            self.summary = "チェックが選択されていません"
            self._notify_state()
            return None
        try:
            config = self.loader.build(n=self.n, k=self.k, mode=self.mode, checks=list(self.selected))
        except VerificationError as e:
            self.summary = f"設定エラー: {e}"
            self._notify_state()
            return None
        for name in self.selected:
            row = self.rows[name]
            row.status, row.residual, row.time_ms, row.reason = "", "", None, ""
            self._notify_row(row)
        self.running = True
        self.summary = f"実行中 (n={self.n}, k={self.k}, {self.mode})"
        self._notify_state()
        runner = CheckRunner(config, self.observable, timezone=self.loader.timezone)
        try:
            return await runner.run_async()
        except VerificationError as e:
            self.logger.error("ダッシュボードからの検証に失敗しました", error=str(e))
            self.summary = f"エラー: {e}"
            return None
        finally:
            self.running = False
            self._notify_state()

    def _on_check_started(self, data) -> None:
        row = self.rows[data["name"]]
        row.status = "running"
        self._notify_row(row)

    def _on_check_finished(self, result: CheckResult) -> None:
        row = self.rows[result.name]
        row.status = result.status
        row.residual = result.residual
        row.time_ms = result.time_ms
        row.reason = result.witness or result.reason
        self._notify_row(row)

    def _on_run_finished(self, report: CheckReport) -> None:
        counts = report.counts()
        self.summary = " / ".join(f"{status}: {count}" for status, count in counts.items())
