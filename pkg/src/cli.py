"""
rs-verify コマンド

    rs-verify gen-kernel --n 3 --k 1 --kind ek --out data/kernels/ek_n3_k1.kernel
    rs-verify check all --n 3 --k 1 --report data/reports/report.txt
    rs-verify eval-ek --n 3 --k 1 --x 1,0,0 --u 0,1,0 --v 0,0,1
    rs-verify list

終了コード: 0 全て合格、1 不合格のチェックあり、2 使い方・設定の誤り
"""

import argparse
import sys
from typing import List, Optional, Sequence

from src.core.config_loader import CheckConfig, CheckConfigLoader
from src.core.errors import CheckError, ConfigError, KernelFileError, VerificationError
from src.core.logger import get_logger
from src.core.observable import CHECK_FINISHED, Observable
from src.models.harness.kernel_file import KINDS, gen_kernel, kernel_path, load_or_build
from src.models.harness.registry import all_checks, statements_for
from src.models.harness.report import CheckResult
from src.models.harness.runner import CheckRunner

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CHECK_OPTIONS = (
    "n",
    "k",
    "tolerance",
    "quad_order",
    "seed",
    "mode",
    "sample_count",
    "max_workers",
    "kernel_dir",
    "report",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse の誤りを終了ではなく例外にする"""

    def error(self, message: str):
        raise UsageError(message)


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as e:
        raise UsageError(f"カンマ区切りの数値が必要です: {text}") from e


def _kind(text: str) -> str:
    for kind in KINDS:
        if kind.lower() == text.lower():
            return kind
    raise UsageError(f"--kind は zk か ek です: {text}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rs-verify", description="Rarita-Schwinger 作用素の恒等式を検証する")
    parser.add_argument("--config", default="config/check_config.json", help="設定ファイル")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    gen = sub.add_parser("gen-kernel", help="Z′_k / F′_k を構成・検証して書き出す")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--kind", required=True, help="zk または ek")
    gen.add_argument("--out", help="出力先 (省略時は kernel_dir 以下)")

    check = sub.add_parser("check", help="名前付きチェックを実行してレポートを書く")
    check.add_argument("names", nargs="?", default=None, help="all またはカンマ区切りの名前")
    check.add_argument("--n", type=int)
    check.add_argument("--k", type=int)
    check.add_argument("--tol", type=float, dest="tolerance")
    check.add_argument("--quad-order", type=int, dest="quad_order")
    check.add_argument("--seed", type=int)
    check.add_argument("--mode", choices=["exact", "float"])
    check.add_argument("--samples", type=int, dest="sample_count")
    check.add_argument("--workers", type=int, dest="max_workers")
    check.add_argument("--kernel-dir", dest="kernel_dir")
    check.add_argument("--report")
    check.add_argument("--quiet", action="store_true", help="チェックごとの進捗を表示しない")

    ev = sub.add_parser("eval-ek", help="E_k(x, u, v) を浮動小数点で評価する")
    ev.add_argument("--n", type=int, required=True)
    ev.add_argument("--k", type=int, required=True)
    ev.add_argument("--x", required=True)
    ev.add_argument("--u", required=True)
    ev.add_argument("--v", required=True)

    sub.add_parser("list", help="登録済みのチェックを一覧する")
    return parser


def _load_config(args: argparse.Namespace, **overrides) -> CheckConfig:
    return CheckConfigLoader(args.config).build(**overrides)


def cmd_gen_kernel(args: argparse.Namespace) -> int:
    kind = _kind(args.kind)
    config = _load_config(args, n=args.n, k=args.k)
    if config.n < 3:
        raise ConfigError(f"核の構成には n ≥ 3 が必要です: {config.n}")
    out = args.out or kernel_path(config.kernel_dir or "data/kernels", config.n, config.k, kind)
    kernel_file = gen_kernel(config.n, config.k, kind, out)
    print(f"{out}: {kind} n={config.n} k={config.k} terms={len(kernel_file.terms)}")
    return EXIT_OK


def _print_result(result: CheckResult) -> None:
    line = f"{result.status:<8} {result.name:<26} {result.residual:>12} {result.time_ms:>10.1f} ms"
    if result.reason and result.status != "pass":
        line += f"  ({result.reason})"
    print(line)


def cmd_check(args: argparse.Namespace) -> int:
    overrides = {key: getattr(args, key) for key in CHECK_OPTIONS}
    if args.names:
        names = [s.strip() for s in args.names.split(",") if s.strip()]
        overrides["checks"] = "all" if names == ["all"] else names
    config = _load_config(args, **overrides)
    loader = CheckConfigLoader(args.config)
    observable = Observable()
    if not args.quiet:
        observable.add_observer(_print_result, CHECK_FINISHED)
    runner = CheckRunner(config, observable, timezone=loader.timezone)
    report = runner.run()
    if config.report:
        path = report.write(config.report)
        print(f"report: {path}")
    for failure in report.failures():
        print(f"FAILED {failure.name}: {failure.residual} {failure.witness or failure.reason}", file=sys.stderr)
    return report.exit_code


def cmd_eval_ek(args: argparse.Namespace) -> int:
    x, u, v = _floats(args.x), _floats(args.u), _floats(args.v)
    if not len(x) == len(u) == len(v) == args.n:
        raise UsageError(f"--x, --u, --v は {args.n} 成分が必要です")
    if args.n < 3:
        raise ConfigError(f"E_k には n ≥ 3 が必要です: {args.n}")
    config = _load_config(args, n=args.n, k=args.k)
    E = load_or_build(config.n, config.k, "Ek", config.kernel_dir)
    value = E.evaluate(x, u, v)
    print(value)
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    for spec in all_checks().values():
        statements = ", ".join(statements_for(spec.name)) or "-"
        print(f"{spec.name:<26} {spec.category:<10} {statements:<32} {spec.anchor}")
    return EXIT_OK


COMMANDS = {
    "gen-kernel": cmd_gen_kernel,
    "check": cmd_check,
    "eval-ek": cmd_eval_ek,
    "list": cmd_list,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logger = get_logger()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("コマンドを指定してください: " + ", ".join(COMMANDS))
        logger.set_timezone(CheckConfigLoader(args.config).timezone)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, CheckError) as e:
        logger.error("設定またはチェック指定の誤りです", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KernelFileError as e:
        logger.error("核の生成に失敗しました", error=str(e))
        print(f"kernel error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except VerificationError as e:
        logger.error("検証を実行できませんでした", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except Exception as e:
        logger.critical("予期しないエラーで終了します", error=repr(e))
        raise


if __name__ == "__main__":
    sys.exit(main())
