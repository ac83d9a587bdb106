"""
球面平均 (1/ω_n)∫ h(xux) dS(x) = c_k h(u) と定数 c_k
"""

from fractions import Fraction
from typing import Tuple

from src.core.errors import MonogenicError
from src.models.monogenic.almansi_fischer import check_harmonic
from src.models.poly.mpoly import MPoly
from src.models.poly.sandwich import xux_images
from src.models.poly.sphere import sphere_mean
from src.models.poly.var_space import VarSpace


def c_k(n: int, k: int) -> Fraction:
    """c_k = (n−2)/(n−2+2k)"""
    if n <= 2:
        raise MonogenicError(f"c_k は n > 2 で定義されます: {n}")
    if k < 0:
        raise MonogenicError(f"k は 0 以上が必要です: {k}")
    return Fraction(n - 2, n - 2 + 2 * k)


def lemma6_check(h: MPoly, n: int, k: int) -> Tuple[MPoly, MPoly]:
    """
    (lhs, rhs) を返す。lhs は x について球面平均した h(xux)、rhs は c_k h(u)

    xux は ‖x‖² を払った斉次形なので、単位球面上では元の式と一致する。
    """
    u = VarSpace("u", n)
    x = VarSpace("x", n)
    check_harmonic(h, u, k)
    if h.depends_on(x):
        raise MonogenicError("h は x に依存してはいけません")
    moved = h.substitute(u, xux_images(x, u, h.mode))
    lhs = sphere_mean(moved, x)
    rhs = h.scale(c_k(n, k))
    return lhs, rhs
