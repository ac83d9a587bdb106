"""
単位球面上の平均 (1/ω_n)∫_{S^{n-1}} · dS の厳密計算

単項式 s^β の平均は、いずれかの β_i が奇数なら 0、すべて偶数なら
Π_i (1/2)_{β_i/2} / (n/2)_{|β|/2} (Pochhammer 記号) になる。
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from scipy import special

from src.core.errors import PolyError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import EXACT, FLOAT
from src.models.poly.mpoly import Key, MPoly
from src.models.poly.var_space import VarSpace


def pochhammer(a: Fraction, m: int) -> Fraction:
    """上昇階乗 (a)_m"""
    result = Fraction(1)
    for i in range(m):
        result *= a + i
    return result


@lru_cache(maxsize=None)
def _exact_moment(beta: Tuple[int, ...], n: int) -> Fraction:
    if any(b % 2 for b in beta):
        return Fraction(0)
    num = Fraction(1)
    for b in beta:
        num *= pochhammer(Fraction(1, 2), b // 2)
    return num / pochhammer(Fraction(n, 2), sum(beta) // 2)


@lru_cache(maxsize=None)
def _float_moment(beta: Tuple[int, ...], n: int) -> float:
    if any(b % 2 for b in beta):
        return 0.0
    num = 1.0
    for b in beta:
        num *= special.poch(0.5, b // 2)
    return num / special.poch(n / 2, sum(beta) // 2)


def sphere_moment(beta: Tuple[int, ...], n: int, mode: str = EXACT):
    beta = tuple(beta)
    if len(beta) != n:
        raise PolyError(f"指数は {n} 成分が必要です: {beta}")
    return _exact_moment(beta, n) if mode == EXACT else _float_moment(beta, n)


def omega(n: int) -> float:
    """単位球面 S^{n-1} の表面積 2π^{n/2}/Γ(n/2)"""
    return float(2 * np.pi ** (n / 2) / special.gamma(n / 2))


def sphere_mean(p: MPoly, space: VarSpace) -> MPoly:
    """
    space について球面平均をとる。他の空間の変数はそのまま残る

    結果が定数なら to_multivector() で Multivector として取り出せる。
    """
    if not isinstance(p, MPoly):
        raise PolyError("sphere_mean は多項式にのみ適用できます")
    out: Dict[Key, object] = {}
    for (exps, m), c in p.items():
        weight = sphere_moment(space.part(exps), space.n, p.mode)
        if weight == 0:
            continue
        rest = exps[: space.offset] + (0,) * space.n + exps[space.offset + space.n :]
        key = (rest, m)
        out[key] = out.get(key, 0) + c * weight
    return MPoly(p.n, out, p.mode)


def pairing(P: MPoly, Q: MPoly, space: VarSpace, normalized: bool = True) -> MPoly:
    """
    (P, Q)_s = ∫ P(s) Q(s) dS(s)。積の順序は保つ

    normalized=True なら ω_n で割った球面平均。False は ω_n を掛け戻すので float モード専用。
    """
    if P.mode != Q.mode:
        raise PolyError(f"スカラーモードが一致しません: {P.mode} と {Q.mode}")
    mean = sphere_mean(P * Q, space)
    if normalized:
        return mean
    if P.mode != FLOAT:
        raise PolyError("正規化しない pairing は float モード専用です")
    return mean.scale(omega(space.n))
