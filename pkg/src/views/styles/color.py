"""
ダッシュボードの配色
プライマリカラーに BLUEGRAY、チェックの状態ごとに固定色を使う
"""


class Colors:
    PRIMARY = "#607D8B"  # BlueGray 500
    PRIMARY_LIGHT = "#90A4AE"  # BlueGray 300
    PRIMARY_DARK = "#455A64"  # BlueGray 700

    ACTION = "#2196F3"  # Blue 500

    TEXT_ON_PRIMARY = "#FFFFFF"
    TEXT_PRIMARY = "#263238"  # BlueGray 900
    TEXT_SECONDARY = "#546E7A"  # BlueGray 600

    BACKGROUND = "#FFFFFF"
    BACKGROUND_LIGHT = "#ECEFF1"  # BlueGray 50

    SUCCESS = "#4CAF50"  # Green 500
    WARNING = "#FFC107"  # Amber 500
    ERROR = "#F44336"  # Red 500
    NEUTRAL = "#B0BEC5"  # BlueGray 200

    BORDER = "#B0BEC5"


class StatusColors:
    """チェック結果の状態 (pass / fail / skipped / error / running) ごとの色"""

    BY_STATUS = {
        "pass": Colors.SUCCESS,
        "fail": Colors.ERROR,
        "error": Colors.WARNING,
        "skipped": Colors.NEUTRAL,
        "running": Colors.ACTION,
    }

    @classmethod
    def of(cls, status: str) -> str:
        return cls.BY_STATUS.get(status, Colors.TEXT_SECONDARY)
