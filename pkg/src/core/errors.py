"""
検証エンジンの例外階層

恒等式の不成立は例外ではなく残差として報告する。ここに並ぶのは入力や前提条件の違反のみ。
"""

from typing import Any, Optional


class VerificationError(Exception):
    """全例外の基底クラス"""


class CliffordError(VerificationError):
    """次元・スカラーモードの不一致、ベクトルでない入力など"""


class PolyError(VerificationError):
    """多項式エンジンの入力エラー"""


class NotDivisibleError(PolyError):
    """‖·‖² で割り切れない。余りを保持する"""

    def __init__(self, message: str, remainder: Optional[Any] = None):
        super().__init__(message)
        self.remainder = remainder


class SingularPointError(PolyError):
    """特異点での評価"""


class MonogenicError(VerificationError):
    """調和性・モノジェニック性・次数の前提条件違反"""


class ConformalError(VerificationError):
    """Vahlen 行列の不正、標本点の特異性など"""


class QuadratureError(VerificationError):
    """求積ノードでの非有限値、特異点の扱い漏れ"""


class KernelFileError(VerificationError):
    """核ファイルの読み書きエラー"""


class CheckError(VerificationError):
    """未知のチェック名、核の欠落など"""


class ConfigError(VerificationError):
    """設定値の検証エラー"""
