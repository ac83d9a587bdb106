"""
基底ブレードのビットマスク演算

ビット i-1 が e_i に対応する。空マスクはスカラー。
"""

from functools import lru_cache
from typing import Tuple


def grade(mask: int) -> int:
    return mask.bit_count()


def indices_of(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def reorder_sign(a: int, b: int) -> int:
    """e_A e_B を昇順に並べ替えるときの互換の符号"""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def blade_product(a: int, b: int) -> Tuple[int, int]:
    """
    e_A e_B = sign * e_{A xor B}

    共通の添字ごとに e_i² = -1 の符号が掛かる。
    """
    sign = reorder_sign(a, b)
    if (a & b).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def reversion_sign(mask: int) -> int:
    g = grade(mask)
    return -1 if (g * (g - 1) // 2) & 1 else 1


def conjugation_sign(mask: int) -> int:
    g = grade(mask)
    return -1 if (g * (g + 1) // 2) & 1 else 1


def involution_sign(mask: int) -> int:
    return -1 if grade(mask) & 1 else 1


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in indices_of(mask))
