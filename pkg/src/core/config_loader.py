import json
from pathlib import Path
from typing import List, Optional, TypedDict, Union

from src.core.errors import ConfigError

MODES = ("exact", "float")


class CheckDefaultsDict(TypedDict, total=False):
    n: int
    k: int
    checks: Union[str, List[str]]
    tolerance: float
    quad_order: int
    seed: int
    mode: str
    sample_count: Optional[int]
    report: str


class RunnerDict(TypedDict, total=False):
    max_workers: int
    kernel_dir: str


class CheckConfigFileDict(TypedDict, total=False):
    defaults: CheckDefaultsDict
    runner: RunnerDict
    timezone: str


class CheckConfig:
    """
    1 回の検証実行の設定

    checks は "all" かチェック名のリスト。sample_count が None の場合は
    各チェックが係数の個数から標本数を決める。
    """

    def __init__(self, config: CheckDefaultsDict, runner: Optional[RunnerDict] = None):
        runner = runner or {}
        self.n: int = int(config.get("n", 3))
        self.k: int = int(config.get("k", 1))
        checks = config.get("checks", "all")
        self.checks: Union[str, List[str]] = (
            checks if checks == "all" else list(checks)
        )
        self.tolerance: float = float(config.get("tolerance", 1e-6))
        self.quad_order: int = int(config.get("quad_order", 24))
        self.seed: int = int(config.get("seed", 0))
        self.mode: str = config.get("mode", "exact")
        self.sample_count: Optional[int] = config.get("sample_count")
        self.report: Optional[str] = config.get("report")
        self.max_workers: int = int(runner.get("max_workers", 4))
        self.kernel_dir: Optional[str] = runner.get("kernel_dir")
        self.validate()

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def validate(self) -> None:
        if self.n < 2:
            raise ConfigError(f"n は 2 以上が必要です: {self.n}")
        if self.k < 0:
            raise ConfigError(f"k は 0 以上が必要です: {self.k}")
        if self.tolerance <= 0:
            raise ConfigError(f"tolerance は正の値が必要です: {self.tolerance}")
        if self.quad_order < 2:
            raise ConfigError(f"quad_order は 2 以上が必要です: {self.quad_order}")
        if self.mode not in MODES:
            raise ConfigError(f"mode は exact か float です: {self.mode}")
        if self.sample_count is not None and self.sample_count < 1:
            raise ConfigError(f"sample_count は正の値が必要です: {self.sample_count}")
        if self.max_workers < 1:
            raise ConfigError(f"max_workers は正の値が必要です: {self.max_workers}")

    def with_overrides(self, **overrides) -> "CheckConfig":
        """None でない値だけを上書きした新しい設定を返す"""
        merged: CheckDefaultsDict = {
            "n": self.n,
            "k": self.k,
            "checks": self.checks,
            "tolerance": self.tolerance,
            "quad_order": self.quad_order,
            "seed": self.seed,
            "mode": self.mode,
            "sample_count": self.sample_count,
            "report": self.report,
        }
        runner: RunnerDict = {
            "max_workers": self.max_workers,
            "kernel_dir": self.kernel_dir,
        }
        for key, value in overrides.items():
            if value is None:
                continue
            if key in runner:
                runner[key] = value
            elif key in merged:
                merged[key] = value
            else:
                raise ConfigError(f"未知の設定項目です: {key}")
        return CheckConfig(merged, runner)

    def as_params(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "tolerance": self.tolerance,
            "quad_order": self.quad_order,
            "seed": self.seed,
            "mode": self.mode,
        }


class CheckConfigLoader:
    _instance = None

    def __new__(cls, config_path: str = "config/check_config.json"):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self, config_path: str = "config/check_config.json"):
        if self._initialized:
            return

        self.config_path: Path = Path(config_path)
        self.defaults: CheckDefaultsDict = {}
        self.runner: RunnerDict = {}
        self.timezone: str = "Asia/Tokyo"
        self.load_config()
        self._initialized = True

    def load_config(self) -> None:
        if not self.config_path.exists():
            # 設定ファイルがなければ組み込みの既定値で動く
            return
        try:
            with self.config_path.open("r", encoding="utf-8") as f:
                config: CheckConfigFileDict = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"設定ファイルを解析できません: {self.config_path}: {e}")

        self.defaults = config.get("defaults", {})
        self.runner = config.get("runner", {})
        self.timezone = config.get("timezone", "Asia/Tokyo")

    def build(self, **overrides) -> CheckConfig:
        """ファイルの既定値に CLI などの上書きを適用した設定を作る"""
        return CheckConfig(self.defaults, self.runner).with_overrides(**overrides)

    @classmethod
    def reset(cls) -> None:
        cls._instance = None
