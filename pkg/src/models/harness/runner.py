"""
チェックの並列実行

各チェックは asyncio.to_thread でワーカースレッドに載せ、セマフォで同時実行数を
max_workers に抑える。共有するのは不変の核だけ。進捗は Observable で配信する。
"""

import asyncio
import time
from datetime import datetime
from typing import List, Optional, Sequence, Union

import pytz

from src.core.config_loader import CheckConfig
from src.core.errors import VerificationError
from src.core.logger import DEFAULT_TIMEZONE, get_logger
from src.core.observable import CHECK_FINISHED, CHECK_STARTED, RUN_FINISHED, Observable
from src.models.harness.check_spec import CheckContext, CheckSpec, judge
from src.models.harness.registry import get_check, resolve, statements_for
from src.models.harness.report import ERROR, FAIL, PASS, SKIPPED, CheckReport, CheckResult


def _params(spec: CheckSpec, config: CheckConfig) -> dict:
    params = {"n": config.n, "k": config.k, "mode": config.mode}
    if spec.numeric:
        params["tolerance"] = spec.effective_tolerance(config.tolerance)
        params["quad_order"] = config.quad_order
    if spec.category != "integral":
        params["seed"] = config.seed
    return params


def execute(spec: CheckSpec, ctx: CheckContext) -> CheckResult:
    """1 つのチェックを同期的に実行して結果レコードを作る"""
    with get_logger().check_scope(spec.name):
        return _execute(spec, ctx)


def _execute(spec: CheckSpec, ctx: CheckContext) -> CheckResult:
    logger = get_logger()
    config = ctx.config
    params = _params(spec, config)
    statements = statements_for(spec.name)
    reason = spec.skip_reason(config)
    if reason is not None:
        logger.info("チェックをスキップします", reason=reason)
        return CheckResult(spec.name, SKIPPED, "-", 0.0, params, spec.anchor, statements, reason=reason)

    logger.info("チェックを開始します", **params)
    start = time.perf_counter()
    try:
        residual = spec.run(ctx)
    except VerificationError as e:
        elapsed = (time.perf_counter() - start) * 1000
        logger.error("チェックを実行できませんでした", error=str(e))
        return CheckResult(spec.name, ERROR, "-", elapsed, params, spec.anchor, statements, reason=str(e))
    except Exception as e:
        elapsed = (time.perf_counter() - start) * 1000
        logger.error("チェック中に予期しないエラーが発生しました", error=repr(e))
        return CheckResult(
            spec.name, ERROR, "-", elapsed, params, spec.anchor, statements, reason=f"{type(e).__name__}: {e}"
        )
    elapsed = (time.perf_counter() - start) * 1000
    status = PASS if judge(spec, residual, config) else FAIL
    logger.info(
        "チェックが終了しました",
        status=status,
        residual=residual.describe(),
        time_ms=round(elapsed, 1),
    )
    return CheckResult(
        spec.name,
        status,
        residual.describe(),
        elapsed,
        params,
        spec.anchor,
        statements,
        witness="" if status == PASS else residual.witness,
        reason=spec.note,
    )


def run_check(name: str, config: CheckConfig, ctx: Optional[CheckContext] = None) -> CheckResult:
    """名前で 1 つのチェックを実行する。未知の名前は CheckError"""
    spec = get_check(name)
    return execute(spec, ctx or CheckContext(config))


class CheckRunner:
    def __init__(self, config: CheckConfig, observable: Optional[Observable] = None, timezone: str = DEFAULT_TIMEZONE):
        self.config = config
        self.timezone = timezone
        self.observable = observable or Observable()
        self.context = CheckContext(config)
        self.logger = get_logger()

    async def _run_one(self, spec: CheckSpec, semaphore: asyncio.Semaphore) -> CheckResult:
        async with semaphore:
            await self.observable.notify_all(CHECK_STARTED, {"name": spec.name})
            result = await asyncio.to_thread(execute, spec, self.context)
            await self.observable.notify_all(CHECK_FINISHED, result)
            return result

    async def run_async(self, names: Union[str, Sequence[str], None] = None) -> CheckReport:
        specs: List[CheckSpec] = resolve(self.config.checks if names is None else names)
        report = CheckReport(
            self.config.as_params(),
            started_at=datetime.now(pytz.timezone(self.timezone)),
            timezone=self.timezone,
        )
        self.logger.info("検証を開始します", checks=[s.name for s in specs], **self.config.as_params())
        semaphore = asyncio.Semaphore(self.config.max_workers)
        results = await asyncio.gather(*(self._run_one(spec, semaphore) for spec in specs))
        # gather は要求順を保つ
        for result in results:
            report.add(result)
        counts = report.counts()
        self.logger.info("検証が終了しました", exit_code=report.exit_code, **counts)
        await self.observable.notify_all(RUN_FINISHED, report)
        return report

    def run(self, names: Union[str, Sequence[str], None] = None) -> CheckReport:
        return asyncio.run(self.run_async(names))
