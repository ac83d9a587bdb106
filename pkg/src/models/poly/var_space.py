"""
名前付き変数空間 x, u, v, w

多項式の指数は 4 空間ぶんを連結した長さ 4n のタプルで持つ。空間 s の i 番目の変数
(1 始まり) は位置 offset(s) + i - 1 に入る。
"""

from dataclasses import dataclass
from typing import Tuple

from src.core.errors import PolyError

SPACE_NAMES: Tuple[str, ...] = ("x", "u", "v", "w")


@dataclass(frozen=True)
class VarSpace:
    name: str
    n: int

    def __post_init__(self):
        if self.name not in SPACE_NAMES:
            raise PolyError(f"変数空間は {SPACE_NAMES} のいずれかです: {self.name}")
        if self.n < 1:
            raise PolyError(f"次元は正の整数が必要です: {self.n}")

    @property
    def index(self) -> int:
        return SPACE_NAMES.index(self.name)

    @property
    def offset(self) -> int:
        return self.index * self.n

    def position(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PolyError(f"添字 {i} は {self.name} 空間の範囲 1..{self.n} の外です")
        return self.offset + i - 1

    def part(self, exps: Tuple[int, ...]) -> Tuple[int, ...]:
        return exps[self.offset : self.offset + self.n]

    def degree(self, exps: Tuple[int, ...]) -> int:
        return sum(self.part(exps))

    def __str__(self) -> str:
        return self.name


def spaces(n: int) -> Tuple[VarSpace, VarSpace, VarSpace, VarSpace]:
    """次元 n の x, u, v, w をまとめて返す"""
    return tuple(VarSpace(name, n) for name in SPACE_NAMES)
