"""
検証ダッシュボードのエントリーポイント

    python -m src.main
"""

import flet as ft

from src.core.config_loader import CheckConfigLoader
from src.core.logger import get_logger
from src.views.main_view import create_main_view


def main(page: ft.Page):
    logger = get_logger()
    logger.set_timezone(CheckConfigLoader().timezone)
    logger.info("ダッシュボード起動")

    page.title = "Rarita-Schwinger Verify"
    page.add(create_main_view(page))
    page.update()
    logger.info("メインビュー初期化完了")


if __name__ == "__main__":
    ft.app(target=main)
