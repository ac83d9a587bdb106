"""
スカラー backend

exact モードは Fraction、float モードは Python float。両者の混在はエラーとする。
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

import numpy as np

from src.core.errors import CliffordError

EXACT = "exact"
FLOAT = "float"

Scalar = Union[Fraction, float]


def coerce(value, mode: str) -> Scalar:
    """値をモードのスカラー型に変換する。exact モードで float を渡すとエラー"""
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (bool, np.bool_)):
            return Fraction(int(value))
        if isinstance(value, (int, np.integer, Rational)):
            return Fraction(int(value)) if isinstance(value, (int, np.integer)) else Fraction(value)
        raise CliffordError(f"exact モードに浮動小数点値は使えません: {value!r}")
    if mode == FLOAT:
        if isinstance(value, (int, float, Fraction, np.integer, np.floating)):
            return float(value)
        raise CliffordError(f"スカラーに変換できません: {value!r}")
    raise CliffordError(f"不明なスカラーモードです: {mode}")


def check_same_mode(a: str, b: str) -> None:
    if a != b:
        raise CliffordError(f"スカラーモードが一致しません: {a} と {b}")


def is_zero(value: Scalar) -> bool:
    return value == 0


def magnitude(value: Scalar) -> float:
    return abs(float(value))


def exact_sqrt(value: Fraction) -> Optional[Fraction]:
    """有理数の平方根が有理数ならそれを返し、そうでなければ None"""
    if value < 0:
        return None
    p, q = value.numerator, value.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None
