"""
検証の進捗を購読者へ配るイベントハブ

ランナーが check_started / check_finished / run_finished を発行し、
ダッシュボードの ViewModel や CLI の進捗表示が購読する。
"""

import asyncio
from typing import Any, Callable, Dict, List, Optional

from src.core.logger import get_logger

CHECK_STARTED = "check_started"
CHECK_FINISHED = "check_finished"
RUN_FINISHED = "run_finished"
EVENTS = (CHECK_STARTED, CHECK_FINISHED, RUN_FINISHED)

Observer = Callable[[Optional[Any]], Any]
GlobalObserver = Callable[[str, Optional[Any]], Any]


class Observable:
    def __init__(self):
        # 登録順に呼び出すためリストで保持する
        self._observers: Dict[str, List[Observer]] = {}
        self._global_observers: List[GlobalObserver] = []

    def add_observer(self, observer: Observer, event: str) -> None:
        """event に対する購読者を追加する (同じ関数の二重登録は無視)"""
        observers = self._observers.setdefault(event, [])
        if observer not in observers:
            observers.append(observer)

    def remove_observer(self, observer: Observer, event: str) -> None:
        observers = self._observers.get(event, [])
        if observer in observers:
            observers.remove(observer)

    def add_global_observer(self, observer: GlobalObserver) -> None:
        """全イベントを (event, data) で受け取る購読者を追加する"""
        if observer not in self._global_observers:
            self._global_observers.append(observer)

    def remove_global_observer(self, observer: GlobalObserver) -> None:
        if observer in self._global_observers:
            self._global_observers.remove(observer)

    async def _dispatch(self, event: str, calls: List[Callable[[], Any]]) -> None:
        pending = []
        for call in calls:
            try:
                result = call()
            except Exception as e:
                get_logger().error("購読者の呼び出しに失敗しました", event=event, error=str(e))
                continue
            if asyncio.iscoroutine(result):
                pending.append(result)
        if pending:
            results = await asyncio.gather(*pending, return_exceptions=True)
            for r in results:
                if isinstance(r, Exception):
                    get_logger().error("非同期の購読者でエラーが発生しました", event=event, error=str(r))

    async def notify_observers(self, event: str, data: Any = None) -> None:
        calls = [lambda o=o: o(data) for o in list(self._observers.get(event, []))]
        await self._dispatch(event, calls)

    async def notify_global_observers(self, event: str, data: Any = None) -> None:
        calls = [lambda o=o: o(event, data) for o in list(self._global_observers)]
        await self._dispatch(event, calls)

    async def notify_all(self, event: str, data: Any = None) -> None:
        """イベント固有の購読者、全体の購読者の順に通知する"""
        await self.notify_observers(event, data)
        await self.notify_global_observers(event, data)

    def clear_observers(self) -> None:
        self._observers.clear()
        self._global_observers.clear()
