import asyncio
import json

import pytest

from src.core.config_loader import CheckConfig, CheckConfigLoader
from src.core.errors import ConfigError
from src.core.observable import CHECK_FINISHED, RUN_FINISHED, Observable
from tests.conftest import ROOT_DIR


def test_loader_reads_project_config():
    loader = CheckConfigLoader(str(ROOT_DIR / "config" / "check_config.json"))
    config = loader.build()
    assert config.n == 3
    assert config.checks == "all"
    assert config.mode == "exact"
    assert loader.timezone == "Asia/Tokyo"


def test_loader_is_singleton(tmp_path):
    a = CheckConfigLoader(str(tmp_path / "missing.json"))
    b = CheckConfigLoader(str(ROOT_DIR / "config" / "check_config.json"))
    assert a is b
    # 設定ファイルがなければ組み込みの既定値
    assert a.build().quad_order == 24


def test_overrides_ignore_none_and_validate():
    config = CheckConfig({"n": 4, "k": 2})
    updated = config.with_overrides(n=None, k=3, max_workers=1)
    assert (updated.n, updated.k, updated.max_workers) == (4, 3, 1)
    with pytest.raises(ConfigError):
        config.with_overrides(colour="red")
    with pytest.raises(ConfigError):
        config.with_overrides(mode="symbolic")


@pytest.mark.parametrize(
    "values",
    [{"n": 1}, {"k": -1}, {"tolerance": 0}, {"quad_order": 1}, {"sample_count": 0}],
)
def test_invalid_values_are_rejected(values):
    with pytest.raises(ConfigError):
        CheckConfig(values)


def test_broken_json_is_config_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        CheckConfigLoader(str(path))


def test_file_values_are_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"defaults": {"k": 2, "checks": ["lemma6"]}, "runner": {"max_workers": 3}}), encoding="utf-8")
    config = CheckConfigLoader(str(path)).build(n=5)
    assert (config.n, config.k, config.checks, config.max_workers) == (5, 2, ["lemma6"], 3)
    assert config.as_params()["n"] == 5


def test_observable_dispatch_order_and_errors():
    """登録順に呼ばれ、購読者の例外は他の購読者を止めない"""
    calls = []
    observable = Observable()

    def failing(_):
        raise RuntimeError("boom")

    async def later(data):
        calls.append(("async", data))

    observable.add_observer(lambda data: calls.append(("first", data)), CHECK_FINISHED)
    observable.add_observer(failing, CHECK_FINISHED)
    observable.add_observer(later, CHECK_FINISHED)
    observable.add_global_observer(lambda event, data: calls.append((event, data)))
    asyncio.run(observable.notify_all(CHECK_FINISHED, 1))
    assert calls == [("first", 1), ("async", 1), (CHECK_FINISHED, 1)]


def test_observable_remove_and_clear():
    calls = []
    observable = Observable()
    observer = calls.append
    observable.add_observer(observer, RUN_FINISHED)
    observable.add_observer(observer, RUN_FINISHED)
    asyncio.run(observable.notify_observers(RUN_FINISHED, "x"))
    assert calls == ["x"]
    observable.remove_observer(observer, RUN_FINISHED)
    asyncio.run(observable.notify_observers(RUN_FINISHED, "y"))
    assert calls == ["x"]
    observable.add_global_observer(lambda e, d: calls.append(e))
    observable.clear_observers()
    asyncio.run(observable.notify_all(RUN_FINISHED))
    assert calls == ["x"]
