"""
Pin(n) / Spin(n) の元

展開した積ではなく因子のリストを保持する。偶奇 (parity) が常に分かるので、
Pin∖Spin の恒等式に現れる符号を自動で決められる。
"""

from typing import Sequence, Tuple

from src.core.errors import CliffordError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import EXACT, FLOAT, exact_sqrt


class Versor:
    __slots__ = ("n", "mode", "factors")

    def __init__(self, n: int, factors: Sequence[Multivector] = (), normalize: bool = True, mode: str = EXACT):
        """
        Args:
            n: 次元
            factors: 1-ベクトルの列 y_1, ..., y_p
            normalize: True なら各因子を単位長に正規化する。
                exact モードではノルムが有理数でない因子はエラー
        """
        self.n = n
        self.mode = mode
        checked = []
        for y in factors:
            if y.n != n or y.mode != mode:
                raise CliffordError("因子の次元またはモードが一致しません")
            if not y.is_vector() or y.is_zero():
                raise CliffordError("Versor の因子は非零の 1-ベクトルでなければなりません")
            r2 = y.norm_squared()
            if r2 != 1:
                if not normalize:
                    raise CliffordError(f"単位長でない因子です (‖y‖²={r2})")
                norm = r2 ** 0.5 if mode == FLOAT else exact_sqrt(r2)
                if norm is None:
                    raise CliffordError(f"ノルムが有理数にならない因子は正規化できません (‖y‖²={r2})")
                y = y / norm
            checked.append(y)
        self.factors: Tuple[Multivector, ...] = tuple(checked)

    @property
    def parity(self) -> int:
        """0 なら Spin、1 なら Pin∖Spin"""
        return len(self.factors) % 2

    @property
    def sign(self) -> int:
        return -1 if self.parity else 1

    def as_multivector(self) -> Multivector:
        result = Multivector.scalar(self.n, 1, self.mode)
        for y in self.factors:
            result = result * y
        return result

    def reversed(self) -> Multivector:
        return self.as_multivector().reversion()

    def apply(self, x: Multivector) -> Multivector:
        return versor_apply(self, x)

    def compose(self, other: "Versor") -> "Versor":
        return Versor(self.n, self.factors + other.factors, normalize=False, mode=self.mode)


def versor_apply(a: Versor, x: Multivector) -> Multivector:
    """a x ã。1-ベクトルを 1-ベクトルへ写す直交変換"""
    if not x.is_vector():
        raise CliffordError("versor_apply は 1-ベクトルにのみ適用できます")
    # 因子ごとの反射 y x y を内側から順に適用する
    result = x
    for y in reversed(a.factors):
        result = y * result * y
    return result
