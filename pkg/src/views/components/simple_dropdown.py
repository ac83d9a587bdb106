"""
ラベル付きの選択肢ドロップダウン
"""

from typing import Callable, List, Optional, Sequence, Union

import flet as ft

Option = Union[str, tuple]


def _options(options: Sequence[Option]) -> List[ft.dropdown.Option]:
    out = []
    for option in options:
        if isinstance(option, tuple) and len(option) == 2:
            # (値, 表示名)
            out.append(ft.dropdown.Option(key=str(option[0]), text=str(option[1])))
        else:
            out.append(ft.dropdown.Option(key=str(option), text=str(option)))
    return out


class SimpleDropdown(ft.Container):
    def __init__(
        self,
        label: str,
        options: Sequence[Option],
        value: Optional[str] = None,
        on_change: Optional[Callable[[str], None]] = None,
        width: int = 120,
    ):
        """
        Args:
            label: 表示ラベル
            options: 文字列または (値, 表示名) のタプルの列
            value: 初期値
            on_change: 選択された値 (文字列) を受け取るコールバック
        """
        super().__init__()
        self._on_change = on_change
        self.dropdown = ft.Dropdown(
            label=label,
            options=_options(options),
            value=None if value is None else str(value),
            on_change=self._handle_change,
            width=width,
            dense=True,
            text_style=ft.TextStyle(size=14),
        )
        self.content = self.dropdown

    def _handle_change(self, e):
        if self._on_change is not None:
            self._on_change(e.control.value)

    @property
    def value(self) -> Optional[str]:
        return self.dropdown.value
