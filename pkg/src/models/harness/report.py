"""
検証結果のレポート

1 チェック 1 レコードの構造化テキストで書き出す。

    # rarita-schwinger verification report
    run n=3 k=1 mode=exact tolerance=1e-06 quad_order=24 seed=20240229
    [check]
    name: lemma6
    status: pass
    residual: exact-zero
    time_ms: 12.3
    params: n=3 k=1 tolerance=1e-06
    anchor: c_k=(n-2)/(n-2+2k)
    statements: Lemma 6
    ...
    [summary]
    total: 30 pass: 29 fail: 1 skipped: 0 error: 0
"""

from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Union

import psutil
import pytz

from src.core.errors import VerificationError

HEADER = "# rarita-schwinger verification report"

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
ERROR = "error"
STATUSES = (PASS, FAIL, SKIPPED, ERROR)


@dataclass
class CheckResult:
    name: str
    status: str
    residual: str
    time_ms: float
    params: Dict[str, object]
    anchor: str
    statements: List[str] = field(default_factory=list)
    witness: str = ""
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, SKIPPED)

    def to_lines(self) -> List[str]:
        lines = [
            "[check]",
            f"name: {self.name}",
            f"status: {self.status}",
            f"residual: {self.residual}",
            f"time_ms: {self.time_ms:.1f}",
            "params: " + " ".join(f"{k}={v}" for k, v in self.params.items()),
            f"anchor: {self.anchor}",
        ]
        if self.statements:
            lines.append("statements: " + ", ".join(self.statements))
        if self.witness:
            lines.append(f"witness: {self.witness}")
        if self.reason:
            lines.append(f"reason: {self.reason}")
        return lines


@dataclass
class CheckReport:
    params: Dict[str, object]
    results: List[CheckResult] = field(default_factory=list)
    started_at: Optional[datetime] = None
    timezone: str = "Asia/Tokyo"

    def add(self, result: CheckResult) -> None:
        if any(r.name == result.name for r in self.results):
            raise VerificationError(f"チェック {result.name} の結果が重複しています")
        self.results.append(result)

    def counts(self) -> Dict[str, int]:
        out = {status: 0 for status in STATUSES}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_passed else 1

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def render(self) -> str:
        started = self.started_at or datetime.now(pytz.timezone(self.timezone))
        memory_mb = psutil.Process().memory_info().rss / (1024 * 1024)
        lines = [
            HEADER,
            "run " + " ".join(f"{k}={v}" for k, v in self.params.items()),
            f"started: {started.isoformat()}",
            f"memory_mb: {memory_mb:.1f}",
        ]
        for r in self.results:
            lines.extend(r.to_lines())
        counts = self.counts()
        lines.append("[summary]")
        lines.append(f"total: {len(self.results)} " + " ".join(f"{s}: {counts[s]}" for s in STATUSES))
        lines.append(f"exit_code: {self.exit_code}")
        return "\n".join(lines) + "\n"

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.render(), encoding="utf-8")
        except OSError as e:
            raise VerificationError(f"レポートを書き込めません: {path}: {e}") from e
        return path
