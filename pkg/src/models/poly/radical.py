"""
有理数の平方根を一つだけ伴う値 value × √R

exact モードで ‖x‖ が無理数になる点での評価に使う。value は MPoly か Multivector。
"""

from fractions import Fraction
from typing import Optional, Tuple

from src.core.errors import PolyError
from src.models.clifford.scalar import FLOAT, exact_sqrt


class RadicalScaled:
    __slots__ = ("value", "radicand")

    def __init__(self, value, radicand=1):
        if getattr(value, "mode", None) == FLOAT:
            if radicand != 1:
                value = value.scale(float(radicand) ** 0.5)
            radicand = 1
        else:
            radicand = Fraction(radicand)
            if radicand <= 0:
                raise PolyError(f"被開平数は正でなければなりません: {radicand}")
            root = exact_sqrt(radicand)
            if root is not None:
                value = value.scale(root) if root != 1 else value
                radicand = Fraction(1)
        self.value = value
        self.radicand = radicand

    @property
    def mode(self) -> str:
        return self.value.mode

    def rational_value(self):
        """√R が有理数として吸収済みなら value、そうでなければ None"""
        if self.radicand == 1 or self.value.is_zero():
            return self.value
        return None

    def _ratio(self, other: "RadicalScaled") -> Optional[Fraction]:
        """√(R_other / R_self) が有理数ならその値"""
        if self.mode == FLOAT:
            return Fraction(1)
        return exact_sqrt(other.radicand / self.radicand)

    def __add__(self, other: "RadicalScaled") -> "RadicalScaled":
        if not isinstance(other, RadicalScaled):
            other = RadicalScaled(other)
        if other.value.is_zero():
            return self
        if self.value.is_zero():
            return other
        s = self._ratio(other)
        if s is None:
            raise PolyError("異なる平方根類の値は加えられません")
        return RadicalScaled(self.value + other.value.scale(s), self.radicand)

    __radd__ = __add__

    def __neg__(self) -> "RadicalScaled":
        return RadicalScaled(-self.value, self.radicand)

    def __sub__(self, other: "RadicalScaled") -> "RadicalScaled":
        if not isinstance(other, RadicalScaled):
            other = RadicalScaled(other)
        return self + (-other)

    def __mul__(self, other) -> "RadicalScaled":
        if isinstance(other, RadicalScaled):
            return RadicalScaled(self.value * other.value, self.radicand * other.radicand)
        return RadicalScaled(self.value * other, self.radicand)

    def __rmul__(self, other) -> "RadicalScaled":
        return RadicalScaled(other * self.value, self.radicand)

    def scale(self, c) -> "RadicalScaled":
        return RadicalScaled(self.value.scale(c), self.radicand)

    def map(self, func) -> "RadicalScaled":
        """value に線形写像 (射影・代入など) を適用する"""
        return RadicalScaled(func(self.value), self.radicand)

    def magnitude(self) -> float:
        return self.value.max_abs() * float(self.radicand) ** 0.5

    def to_float(self):
        """√R を掛け込んだ float モードの値"""
        return self.value.to_float().scale(float(self.radicand) ** 0.5)

    def __repr__(self) -> str:
        if self.radicand == 1:
            return repr(self.value)
        return f"({self.value}) * sqrt({self.radicand})"


def radical_residual(a: RadicalScaled, b: RadicalScaled) -> Tuple[bool, float]:
    """
    a − b の大きさ

    平方根類が同じなら差を直接計算する。異なる場合は両方が 0 のときだけ等しい。
    戻り値は (厳密に 0 か, 浮動小数点での大きさ)。
    """
    try:
        diff = a - b
    except PolyError:
        mag = a.magnitude() + b.magnitude()
        return mag == 0, mag
    if a.mode == FLOAT:
        return False, diff.magnitude()
    return diff.value.is_zero(), diff.magnitude()

