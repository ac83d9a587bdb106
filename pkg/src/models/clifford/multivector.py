"""
Cl_n の元

blade マスク → スカラー の疎な辞書として保持する。構築後は不変。
"""

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import CliffordError
from src.models.clifford import blade as bl
from src.models.clifford.scalar import (
    EXACT,
    FLOAT,
    Scalar,
    check_same_mode,
    coerce,
    exact_sqrt,
)


class Multivector:
    __slots__ = ("n", "mode", "_terms", "_hash")

    def __init__(
        self,
        n: int,
        terms: Optional[Mapping[int, object]] = None,
        mode: str = EXACT,
    ):
        if n < 1:
            raise CliffordError(f"次元は正の整数が必要です: {n}")
        self.n = n
        self.mode = mode
        limit = 1 << n
        cleaned: Dict[int, Scalar] = {}
        for mask, value in (terms or {}).items():
            if mask < 0 or mask >= limit:
                raise CliffordError(f"ブレード {bl.blade_name(mask)} は次元 {n} に収まりません")
            c = coerce(value, mode)
            if c != 0:
                cleaned[mask] = c
        self._terms = cleaned
        self._hash = None

    # 生成

    @classmethod
    def _raw(cls, n: int, terms: Dict[int, Scalar], mode: str) -> "Multivector":
        """係数が既にモードの型で非零であることが分かっている場合の高速経路"""
        mv = cls.__new__(cls)
        mv.n = n
        mv.mode = mode
        mv._terms = terms
        mv._hash = None
        return mv

    @classmethod
    def zero(cls, n: int, mode: str = EXACT) -> "Multivector":
        return cls._raw(n, {}, mode)

    @classmethod
    def scalar(cls, n: int, value, mode: str = EXACT) -> "Multivector":
        return cls(n, {0: value}, mode)

    @classmethod
    def basis(cls, n: int, *indices: int, mode: str = EXACT) -> "Multivector":
        """e_{i1} e_{i2} ... の積。添字の並びは任意"""
        result = cls.scalar(n, 1, mode)
        for i in indices:
            if not 1 <= i <= n:
                raise CliffordError(f"添字 {i} は 1..{n} の範囲外です")
            result = result * cls._raw(n, {1 << (i - 1): coerce(1, mode)}, mode)
        return result

    @classmethod
    def vector(cls, n: int, coords: Sequence, mode: str = EXACT) -> "Multivector":
        if len(coords) != n:
            raise CliffordError(f"座標の個数 {len(coords)} が次元 {n} と一致しません")
        return cls(n, {1 << i: c for i, c in enumerate(coords)}, mode)

    # 参照

    @property
    def terms(self) -> Mapping[int, Scalar]:
        return self._terms

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(self._terms.items())

    def __getitem__(self, mask: int) -> Scalar:
        return self._terms.get(mask, coerce(0, self.mode))

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> set:
        return {bl.grade(m) for m in self._terms}

    def grade(self, g: int) -> "Multivector":
        return Multivector._raw(
            self.n, {m: c for m, c in self._terms.items() if bl.grade(m) == g}, self.mode
        )

    def is_vector(self) -> bool:
        return all(bl.grade(m) == 1 for m in self._terms)

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def scalar_part(self) -> Scalar:
        return self[0]

    def vector_coords(self) -> Tuple[Scalar, ...]:
        return tuple(self[1 << i] for i in range(self.n))

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self._terms.values()), default=0.0)

    # 代数演算

    def _check(self, other: "Multivector") -> None:
        if self.n != other.n:
            raise CliffordError(f"次元が一致しません: {self.n} と {other.n}")
        check_same_mode(self.mode, other.mode)

    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return Multivector.scalar(self.n, other, self.mode)

    def __add__(self, other) -> "Multivector":
        if not _is_operand(other):
            return NotImplemented
        other = self._lift(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Multivector._raw(self.n, out, self.mode)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.n, {m: -c for m, c in self._terms.items()}, self.mode)

    def __sub__(self, other) -> "Multivector":
        if not _is_operand(other):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Multivector":
        return self._lift(other) - self

    def scale(self, value) -> "Multivector":
        c = coerce(value, self.mode)
        if c == 0:
            return Multivector.zero(self.n, self.mode)
        return Multivector._raw(self.n, {m: v * c for m, v in self._terms.items()}, self.mode)

    def __mul__(self, other) -> "Multivector":
        if not _is_operand(other):
            return NotImplemented
        if not isinstance(other, Multivector):
            return self.scale(other)
        self._check(other)
        out: Dict[int, Scalar] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                sign, m = bl.blade_product(ma, mb)
                v = ca * cb
                out[m] = out.get(m, 0) + (v if sign > 0 else -v)
        return Multivector._raw(self.n, {m: c for m, c in out.items() if c != 0}, self.mode)

    def __rmul__(self, other) -> "Multivector":
        if not _is_operand(other):
            return NotImplemented
        # スカラーは中心元なので左右どちらから掛けても同じ
        return self.scale(other)

    def __truediv__(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            return self * other.inverse()
        c = coerce(other, self.mode)
        if c == 0:
            raise CliffordError("0 で割ることはできません")
        return self.scale(1 / c) if self.mode == FLOAT else self.scale(Fraction(1) / c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return self.n == other.n and self.mode == other.mode and self._terms == other._terms
        if isinstance(other, (int, float, Fraction)):
            return self._terms == ({0: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.mode, frozenset(self._terms.items())))
        return self._hash

    # 対合

    def _signed(self, sign_of) -> "Multivector":
        return Multivector._raw(
            self.n,
            {m: (c if sign_of(m) > 0 else -c) for m, c in self._terms.items()},
            self.mode,
        )

    def reversion(self) -> "Multivector":
        return self._signed(bl.reversion_sign)

    def conjugation(self) -> "Multivector":
        return self._signed(bl.conjugation_sign)

    def involution(self) -> "Multivector":
        return self._signed(bl.involution_sign)

    # ノルムと逆元

    def norm_squared(self) -> Scalar:
        """ā a のスカラー部分。基底が正規直交なので係数の二乗和に等しい"""
        return sum((c * c for c in self._terms.values()), coerce(0, self.mode))

    def norm(self):
        """exact モードでノルムが有理数でなければ None"""
        r2 = self.norm_squared()
        if self.mode == FLOAT:
            return r2 ** 0.5
        return exact_sqrt(r2)

    def vector_inverse(self) -> "Multivector":
        if not self.is_vector():
            raise CliffordError("vector_inverse は 1-ベクトルにのみ適用できます")
        r2 = self.norm_squared()
        if r2 == 0:
            raise CliffordError("零ベクトルの逆元は存在しません")
        return (-self) / r2

    def inverse(self) -> "Multivector":
        """
        Clifford 群の元 (ベクトルの積やパラベクトル) の逆元 ā / (ā a)

        ā a がスカラーにならない元は対象外。
        """
        bar = self.conjugation()
        s = bar * self
        if not s.is_scalar() or s.is_zero():
            raise CliffordError("この元は Clifford 群に属さないため逆元を計算できません")
        return bar / s.scalar_part()

    # 変換

    def to_float(self) -> "Multivector":
        return Multivector(self.n, {m: float(c) for m, c in self._terms.items()}, FLOAT)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (bl.grade(m), m)):
            c = self._terms[m]
            parts.append(f"{c}" if m == 0 else f"{c}*{bl.blade_name(m)}")
        return " + ".join(parts)


def _is_operand(value) -> bool:
    return isinstance(value, (Multivector, int, float, Fraction, np.integer, np.floating))
