"""
検証エンジン全体で共有するロガー

config/logging.yaml を読み込み、data/logs/rs_verify.log に日次ローテーションで書き出す。
各レコードには呼び出し元 (Location) と、キーワード引数を JSON 化した Details を付与する。
check_scope() の中で出したログには実行中のチェック名が Details に入る。
"""

import inspect
import json
import logging
import logging.config
import logging.handlers
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, Optional

import numpy as np
import pytz
import yaml

DEFAULT_TIMEZONE = "Asia/Tokyo"
LOGGER_NAME = "rs_verify"
LOG_FILE_NAME = "rs_verify.log"
FILE_HANDLER = "rs_verify_file"

RECORD_FORMAT = (
    "%(asctime)s - %(levelname)s\n"
    "%(message)s\n"
    "Location: %(location)s\n"
    "Details: %(details)s\n"
    "--------------------------------\n"
)

PROJECT_ROOT = Path(__file__).resolve().parents[2]
CONFIG_PATH = PROJECT_ROOT / "config" / "logging.yaml"

_LEVELS = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}

# asyncio.to_thread はコンテキストを複製するので、ワーカースレッドでも値が見える
_current_check: ContextVar[Optional[str]] = ContextVar("current_check", default=None)


class VerifyRecordLogger(logging.Logger):
    """location / details 属性を持たないレコードを作らない Logger"""

    def makeRecord(self, name, level, fn, lno, msg, args, exc_info, func=None, extra=None, sinfo=None):
        fields = {"location": "Unknown", "details": "{}"}
        fields.update(extra or {})
        return super().makeRecord(name, level, fn, lno, msg, args, exc_info, func, fields, sinfo)


def _to_jsonable(value: Any) -> Any:
    """
    ログ詳細に含める値を JSON で表現できる形に変換する

    有理数は "p/q" 文字列、numpy の値はリストまたは Python の数値に変換する。
    """
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    try:
        json.dumps(value)
        return value
    except (TypeError, OverflowError):
        return str(value)


def _fallback_handler(log_file: Path) -> logging.Handler:
    handler = logging.handlers.TimedRotatingFileHandler(
        filename=str(log_file), when="midnight", backupCount=30, encoding="utf-8", delay=True
    )
    handler.setFormatter(logging.Formatter(RECORD_FORMAT))
    return handler


class Applogger:
    """シングルトンのロガー。get_logger() から取得する"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            instance = super().__new__(cls)
            instance._configure()
            cls._instance = instance
        return cls._instance

    def _configure(self) -> None:
        logging.setLoggerClass(VerifyRecordLogger)
        log_dir = PROJECT_ROOT / "data" / "logs"
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / LOG_FILE_NAME
        self.timezone = pytz.timezone(DEFAULT_TIMEZONE)

        try:
            config = yaml.safe_load(CONFIG_PATH.read_text(encoding="utf-8"))
            config["handlers"][FILE_HANDLER]["filename"] = str(log_file)
            logging.config.dictConfig(config)
        except (OSError, yaml.YAMLError, KeyError, TypeError, ValueError) as e:
            # 設定ファイルが読めなければファイル出力だけで動かす
            print(f"logging.yaml を読み込めませんでした: {e}")
            fallback = logging.getLogger(LOGGER_NAME)
            fallback.addHandler(_fallback_handler(log_file))
            fallback.setLevel(logging.INFO)

        self.logger = logging.getLogger(LOGGER_NAME)
        self.info("ロガーを初期化しました", log_file=str(log_file))

    def set_timezone(self, name: str) -> None:
        """Details に記録するタイムスタンプのタイムゾーンを切り替える"""
        try:
            self.timezone = pytz.timezone(name)
        except pytz.UnknownTimeZoneError:
            self.warning(f"不明なタイムゾーンです: {name}")

    @contextmanager
    def check_scope(self, name: str) -> Iterator[None]:
        """この中で記録したログの Details に check=name を付ける"""
        token = _current_check.set(name)
        try:
            yield
        finally:
            _current_check.reset(token)

    @staticmethod
    def _caller() -> str:
        frame = inspect.currentframe()
        try:
            while frame is not None and frame.f_code.co_filename == __file__:
                frame = frame.f_back
            if frame is None:
                return "Unknown"
            return f"{frame.f_code.co_filename}:{frame.f_code.co_name}:{frame.f_lineno}"
        finally:
            del frame

    def _details(self, fields: dict) -> str:
        details = {"timestamp": datetime.now(self.timezone).isoformat()}
        check = _current_check.get()
        if check is not None:
            details["check"] = check
        details.update((key, _to_jsonable(value)) for key, value in fields.items())
        return json.dumps(details, ensure_ascii=False, indent=4)

    def log(self, message: str, level: str = "INFO", **kwargs) -> None:
        """ログを記録する

        Args:
            message (str): ログメッセージ
            level (str): ログレベル (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            **kwargs: Details に含めるキーワード引数
        """
        try:
            self.logger.log(
                _LEVELS.get(level.upper(), logging.INFO),
                str(message),
                extra={"location": self._caller(), "details": self._details(kwargs)},
            )
        except Exception as e:
            # ロガー自身の失敗は標準出力にだけ出す
            print(f"ログ記録に失敗しました: {e}")

    def debug(self, message: str, **kwargs) -> None:
        self.log(message, "DEBUG", **kwargs)

    def info(self, message: str, **kwargs) -> None:
        self.log(message, "INFO", **kwargs)

    def warning(self, message: str, **kwargs) -> None:
        self.log(message, "WARNING", **kwargs)

    def error(self, message: str, **kwargs) -> None:
        self.log(message, "ERROR", **kwargs)

    def critical(self, message: str, **kwargs) -> None:
        self.log(message, "CRITICAL", **kwargs)


def get_logger() -> Applogger:
    """ロガーのインスタンスを取得する"""
    return Applogger()
