from pathlib import Path

import pytest
from hypothesis import settings

from src.core.config_loader import CheckConfig, CheckConfigLoader

# プロジェクトのルートディレクトリ
ROOT_DIR = Path(__file__).parent.parent

# 厳密演算は遅いので例の数を抑え、時間制限は外す
settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def reset_config_loader():
    """シングルトンの設定ローダーをテストごとに作り直す"""
    CheckConfigLoader.reset()
    yield
    CheckConfigLoader.reset()


@pytest.fixture
def make_config():
    """核ファイルを使わない (kernel_dir=None) 検証設定を作る"""

    def factory(**overrides) -> CheckConfig:
        defaults = {"n": 3, "k": 1, "seed": 7, "mode": "exact", "checks": "all", "tolerance": 1e-6}
        runner = {"max_workers": 2, "kernel_dir": None}
        for key in ("max_workers", "kernel_dir"):
            if key in overrides:
                runner[key] = overrides.pop(key)
        defaults.update(overrides)
        return CheckConfig(defaults, runner)

    return factory
