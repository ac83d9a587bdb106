"""
動径有理関数 N / ‖s‖^p

分母は一つの変数空間 s のノルムの冪のみ。p は奇数も許す (n が奇数のとき
G′ = −v/‖v‖^n がそうなる)。微分のたびに ‖s‖² での約分を貪欲に行い p を最小に保つ。
"""

from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from src.core.errors import NotDivisibleError, PolyError, SingularPointError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT, coerce
from src.models.poly.mpoly import MPoly
from src.models.poly.radical import RadicalScaled
from src.models.poly.var_space import VarSpace

Numeric = (int, float, Fraction, np.integer, np.floating)


class RadialRational:
    __slots__ = ("numerator", "power", "space")

    def __init__(self, numerator: MPoly, power: int, space: VarSpace, reduce: bool = True):
        if numerator.n != space.n:
            raise PolyError("分子と動径空間の次元が一致しません")
        if power < 0:
            if power % 2:
                raise PolyError("負の奇数冪は多項式として表せません")
            numerator = numerator * MPoly.radius_squared(space, numerator.mode) ** (-power // 2)
            power = 0
        self.numerator = numerator
        self.power = power
        self.space = space
        if reduce:
            self._reduce()

    @property
    def n(self) -> int:
        return self.numerator.n

    @property
    def mode(self) -> str:
        return self.numerator.mode

    @property
    def m(self) -> Fraction:
        """分母を ‖s‖^{2m} と書いたときの m"""
        return Fraction(self.power, 2)

    def _reduce(self) -> None:
        if self.numerator.is_zero():
            self.power = 0
            return
        while self.power >= 2:
            try:
                self.numerator = self.numerator.divide_by_r2(self.space)
            except NotDivisibleError:
                break
            self.power -= 2

    @classmethod
    def from_poly(cls, p: MPoly, space: VarSpace) -> "RadialRational":
        return cls(p, 0, space, reduce=False)

    def to_poly(self) -> MPoly:
        if self.power:
            raise PolyError(f"分母 ‖{self.space.name}‖^{self.power} が残っています")
        return self.numerator

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    # 代数演算

    def _coerce(self, other) -> Optional["RadialRational"]:
        if isinstance(other, RadialRational):
            if other.space != self.space:
                raise PolyError(
                    f"動径空間が異なります: {self.space.name} と {other.space.name}"
                )
            return other
        if isinstance(other, (MPoly, Multivector) + Numeric):
            return RadialRational(MPoly.constant(0, self.n, self.mode) + other, 0, self.space, reduce=False)
        return None

    def _aligned(self, other: "RadialRational"):
        """共通分母に揃えた (a, b, p)。冪の差が奇数なら揃えられない"""
        diff = self.power - other.power
        if diff % 2:
            raise PolyError("分母の冪の偶奇が異なる動径有理関数は加えられません")
        r2 = MPoly.radius_squared(self.space, self.mode)
        if diff >= 0:
            return self.numerator, other.numerator * r2 ** (diff // 2), self.power
        return self.numerator * r2 ** (-diff // 2), other.numerator, other.power

    def __add__(self, other) -> "RadialRational":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b, p = self._aligned(other)
        return RadialRational(a + b, p, self.space)

    __radd__ = __add__

    def __neg__(self) -> "RadialRational":
        return RadialRational(-self.numerator, self.power, self.space, reduce=False)

    def __sub__(self, other) -> "RadialRational":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RadialRational":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RadialRational":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RadialRational(self.numerator * other.numerator, self.power + other.power, self.space)

    def __rmul__(self, other) -> "RadialRational":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RadialRational(other.numerator * self.numerator, self.power + other.power, self.space)

    def __truediv__(self, value) -> "RadialRational":
        return RadialRational(self.numerator / value, self.power, self.space, reduce=False)

    def __eq__(self, other) -> bool:
        if isinstance(other, RadialRational) and other.space != self.space:
            return False
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        try:
            a, b, _ = self._aligned(other)
        except PolyError:
            return self.is_zero() and other.is_zero()
        return a == b

    def __hash__(self) -> int:
        return hash((self.numerator, self.power, self.space))

    def reversion(self) -> "RadialRational":
        return RadialRational(self.numerator.reversion(), self.power, self.space, reduce=False)

    def conjugation(self) -> "RadialRational":
        return RadialRational(self.numerator.conjugation(), self.power, self.space, reduce=False)

    def left_mul(self, mv: Multivector) -> "RadialRational":
        return RadialRational(self.numerator.left_mul(mv), self.power, self.space, reduce=False)

    def right_mul(self, mv: Multivector) -> "RadialRational":
        return RadialRational(self.numerator.right_mul(mv), self.power, self.space, reduce=False)

    def times_radius_power(self, e: int) -> "RadialRational":
        """‖s‖^e を掛ける"""
        return RadialRational(self.numerator, self.power - e, self.space)

    # 微分作用素

    def partial_derivative(self, space: VarSpace, i: int) -> "RadialRational":
        """
        動径空間での微分は商の法則:
        ∂_i (N ‖s‖^{-p}) = ((∂_i N) ‖s‖² − p s_i N) / ‖s‖^{p+2}
        """
        dn = self.numerator.partial_derivative(space, i)
        if space != self.space:
            return RadialRational(dn, self.power, self.space)
        if self.power == 0:
            return RadialRational(dn, 0, self.space, reduce=False)
        r2 = MPoly.radius_squared(space, self.mode)
        s_i = MPoly.variable(space, i, self.mode)
        num = dn * r2 - (s_i * self.numerator).scale(self.power)
        return RadialRational(num, self.power + 2, self.space)

    def dirac(self, space: VarSpace, side: str = "left") -> "RadialRational":
        if side not in ("left", "right"):
            raise PolyError(f"side は left か right です: {side}")
        result = RadialRational(MPoly.zero(self.n, self.mode), 0, self.space, reduce=False)
        for j in range(1, space.n + 1):
            d = self.partial_derivative(space, j)
            e_j = Multivector.basis(self.n, j, mode=self.mode)
            result = result + (d.left_mul(e_j) if side == "left" else d.right_mul(e_j))
        return result

    def laplacian(self, space: VarSpace) -> "RadialRational":
        result = RadialRational(MPoly.zero(self.n, self.mode), 0, self.space, reduce=False)
        for j in range(1, space.n + 1):
            result = result + self.partial_derivative(space, j).partial_derivative(space, j)
        return result

    def euler(self, space: VarSpace) -> "RadialRational":
        """Σ s_j ∂_j。動径空間では分母の寄与 −p を含む"""
        e = self.numerator.euler(space)
        if space == self.space:
            e = e - self.numerator.scale(self.power)
        return RadialRational(e, self.power, self.space)

    def homogeneity(self, space: VarSpace) -> Optional[int]:
        """space について斉次ならその次数、そうでなければ None"""
        degrees = self.numerator.degrees(space)
        if len(degrees) != 1:
            return None if degrees else 0
        d = next(iter(degrees))
        return d - self.power if space == self.space else d

    def substitute(self, space: VarSpace, images: Sequence[MPoly]) -> "RadialRational":
        """動径空間以外の変数への多項式代入"""
        if space == self.space:
            raise PolyError("動径空間への代入は substitute_rational を使います")
        return RadialRational(self.numerator.substitute(space, images), self.power, self.space)

    def rename(self, source: VarSpace, target: VarSpace) -> "RadialRational":
        new_space = target if self.space == source else self.space
        return RadialRational(self.numerator.rename(source, target), self.power, new_space, reduce=False)

    def restrict(self, space: VarSpace, point: Sequence) -> "RadialRational":
        """動径空間以外の変数に値を代入する"""
        if space == self.space:
            raise PolyError("動径空間の評価は evaluate_radical を使います")
        return RadialRational(self.numerator.restrict(space, point), self.power, self.space)

    # 評価

    def evaluate_radical(self, point: Sequence) -> RadicalScaled:
        """
        動径空間に点を代入し、値 × √R の形で返す (他の空間は多項式のまま残る)

        exact モードでは分母の無理数部分を √R として持ち運ぶ。
        """
        if len(point) != self.space.n:
            raise PolyError(f"{self.space.name} の点は {self.space.n} 成分が必要です")
        values = [coerce(c, self.mode) for c in point]
        r2 = sum((c * c for c in values), coerce(0, self.mode))
        if r2 == 0:
            if self.power > 0:
                raise SingularPointError(f"‖{self.space.name}‖ = 0 で分母が消えます")
        num = self.numerator.restrict(self.space, values)
        if self.mode == FLOAT:
            return RadicalScaled(num.scale(r2 ** (-self.power / 2)) if self.power else num)
        if self.power % 2 == 0:
            return RadicalScaled(num.scale(Fraction(1) / r2 ** (self.power // 2)) if self.power else num)
        # ‖s‖^{-p} = (‖s‖²)^{-(p+1)/2} √(‖s‖²)
        return RadicalScaled(num.scale(Fraction(1) / r2 ** ((self.power + 1) // 2)), r2)

    def evaluate(self, points: Mapping[str, Sequence]):
        """
        全変数を代入した値。exact モードで無理数になる場合は SingularPointError ではなく
        PolyError を送出するので、その場合は evaluate_radical を使う
        """
        rest = self
        for name, point in points.items():
            if name != self.space.name:
                rest = rest.restrict(VarSpace(name, self.n), point)
        if self.space.name not in points:
            raise PolyError(f"動径空間 {self.space.name} の値が必要です")
        value = rest.evaluate_radical(points[self.space.name])
        poly = value.rational_value()
        if poly is None:
            raise PolyError("値が有理数になりません。evaluate_radical を使ってください")
        return poly.to_multivector() if isinstance(poly, MPoly) else poly

    def to_float(self) -> "RadialRational":
        return RadialRational(self.numerator.to_float(), self.power, self.space, reduce=False)

    def __repr__(self) -> str:
        if self.power == 0:
            return repr(self.numerator)
        return f"({self.numerator}) / ‖{self.space.name}‖^{self.power}"


def substitute_rational(
    p: MPoly, space: VarSpace, images: Sequence[RadialRational], radial_space: VarSpace
) -> RadialRational:
    """
    多項式 p の space の変数を動径有理関数の像で同時に置き換える

    像はすべてスカラー値で、同じ radial_space を持つこと。結果は radial_space に
    関する動径有理関数。
    """
    if len(images) != space.n:
        raise PolyError(f"{space.name} 空間には {space.n} 個の像が必要です")
    imgs = []
    for img in images:
        if not isinstance(img, RadialRational):
            img = RadialRational.from_poly(img, radial_space)
        if img.space != radial_space:
            raise PolyError("像の動径空間が一致しません")
        if not img.numerator.is_scalar_valued():
            raise PolyError("代入する像はスカラー値でなければなりません")
        imgs.append(img)

    cache = {}

    def power(i: int, e: int) -> RadialRational:
        if (i, e) not in cache:
            cache[(i, e)] = imgs[i] if e == 1 else power(i, e - 1) * imgs[i]
        return cache[(i, e)]

    groups = {}
    for (exps, m), c in p.items():
        part = space.part(exps)
        rest = exps[: space.offset] + (0,) * space.n + exps[space.offset + space.n :]
        groups.setdefault(part, {})[(rest, m)] = c

    result = RadialRational(MPoly.zero(p.n, p.mode), 0, radial_space, reduce=False)
    for part, rest_terms in groups.items():
        factor = RadialRational(MPoly.constant(1, p.n, p.mode), 0, radial_space, reduce=False)
        for i, e in enumerate(part):
            if e:
                factor = factor * power(i, e)
        result = result + RadialRational(MPoly(p.n, rest_terms, p.mode), 0, radial_space, reduce=False) * factor
    return result

