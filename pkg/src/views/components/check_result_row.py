"""
チェック結果一覧の 1 行
選択チェックボックス、名前、対応する主張、状態、残差、実行時間を表示する
"""

from typing import Callable

import flet as ft

from src.viewmodels.check_run_viewmodel import CheckRow
from src.views.styles.color import Colors, StatusColors


class CheckResultRow(ft.Container):
    def __init__(self, row: CheckRow, selected: bool, on_toggle: Callable[[str, bool], None]):
        super().__init__()
        self.name = row.name
        self.checkbox = ft.Checkbox(
            value=selected,
            on_change=lambda e: on_toggle(self.name, bool(e.control.value)),
        )
        self.status_text = ft.Text("", size=12, weight=ft.FontWeight.BOLD, color=Colors.TEXT_ON_PRIMARY)
        self.status_badge = ft.Container(
            content=self.status_text,
            bgcolor=Colors.NEUTRAL,
            border_radius=4,
            padding=ft.padding.symmetric(horizontal=6, vertical=2),
            width=72,
            alignment=ft.alignment.center,
        )
        self.residual_text = ft.Text("", size=12, color=Colors.TEXT_PRIMARY, width=110)
        self.time_text = ft.Text("", size=12, color=Colors.TEXT_SECONDARY, width=80)
        self.reason_text = ft.Text("", size=11, color=Colors.TEXT_SECONDARY, italic=True)
        self.content = ft.Column(
            [
                ft.Row(
                    [
                        self.checkbox,
                        ft.Text(row.name, size=14, color=Colors.TEXT_PRIMARY, width=200),
                        ft.Text(row.category, size=12, color=Colors.TEXT_SECONDARY, width=80),
                        ft.Text(row.statements, size=12, color=Colors.TEXT_SECONDARY, width=220),
                        self.status_badge,
                        self.residual_text,
                        self.time_text,
                    ],
                    vertical_alignment=ft.CrossAxisAlignment.CENTER,
                ),
                self.reason_text,
            ],
            spacing=0,
        )
        self.border = ft.border.only(bottom=ft.BorderSide(1, Colors.BACKGROUND_LIGHT))
        self.padding = ft.padding.symmetric(horizontal=8, vertical=4)
        self.apply(row)

    def apply(self, row: CheckRow) -> None:
        """行データを表示に反映する (update は呼び出し側)"""
        self.status_text.value = row.status or "-"
        self.status_badge.bgcolor = StatusColors.of(row.status)
        self.residual_text.value = row.residual
        self.time_text.value = "" if row.time_ms is None else f"{row.time_ms:.0f} ms"
        self.reason_text.value = row.reason
        self.reason_text.visible = bool(row.reason) and row.status not in ("pass", "running")
