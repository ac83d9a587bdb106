"""
検証ダッシュボードのメインビュー
上部に (n, k, mode) の選択と実行ボタン、下にチェックごとの結果一覧を表示する
"""

from typing import Dict

import flet as ft

from src.core.logger import get_logger
from src.viewmodels.check_run_viewmodel import K_CHOICES, N_CHOICES, CheckRow, CheckRunViewModel
from src.views.components.check_result_row import CheckResultRow
from src.views.components.simple_dropdown import SimpleDropdown
from src.views.styles.color import Colors


class MainView(ft.Container):
    def __init__(self, page: ft.Page, viewmodel: CheckRunViewModel):
        super().__init__()
        self._page = page
        self.viewmodel = viewmodel
        self.logger = get_logger()

        page.appbar = ft.AppBar(
            title=ft.Text("Rarita-Schwinger Verify", color=Colors.TEXT_ON_PRIMARY, weight=ft.FontWeight.BOLD),
            bgcolor=Colors.PRIMARY,
        )

        self.run_button = ft.ElevatedButton(
            "実行",
            icon=ft.icons.PLAY_ARROW,
            bgcolor=Colors.ACTION,
            color=Colors.TEXT_ON_PRIMARY,
            on_click=self._on_run_click,
        )
        self.progress = ft.ProgressRing(width=20, height=20, visible=False)
        self.summary_text = ft.Text("", color=Colors.TEXT_SECONDARY)

        toolbar = ft.Row(
            [
                SimpleDropdown("n", N_CHOICES, viewmodel.n, viewmodel.set_n, width=90),
                SimpleDropdown("k", K_CHOICES, viewmodel.k, viewmodel.set_k, width=90),
                SimpleDropdown("mode", ("exact", "float"), viewmodel.mode, viewmodel.set_mode),
                self.run_button,
                self.progress,
                self.summary_text,
            ],
            vertical_alignment=ft.CrossAxisAlignment.CENTER,
        )

        self.row_controls: Dict[str, CheckResultRow] = {
            name: CheckResultRow(row, viewmodel.is_selected(name), viewmodel.toggle)
            for name, row in viewmodel.rows.items()
        }
        results = ft.ListView(list(self.row_controls.values()), expand=True, spacing=0)

        viewmodel.add_row_changed_callback(self._on_row_changed)
        viewmodel.add_run_state_callback(self._on_run_state)

        self.content = ft.Column([toolbar, ft.Divider(height=1), results], expand=True)
        self.expand = True
        self.padding = 12

    def _on_run_click(self, e):
        self._page.run_task(self.viewmodel.run_selected)

    def _on_row_changed(self, row: CheckRow) -> None:
        control = self.row_controls.get(row.name)
        if control is None:
            return
        control.apply(row)
        if control.page is not None:
            control.update()

    def _on_run_state(self, running: bool, summary: str) -> None:
        self.run_button.disabled = running
        self.progress.visible = running
        self.summary_text.value = summary
        if self.page is not None:
            self.update()


def create_main_view(page: ft.Page) -> MainView:
    viewmodel = CheckRunViewModel()
    get_logger().info("MainViewインスタンス作成")
    return MainView(page, viewmodel)
