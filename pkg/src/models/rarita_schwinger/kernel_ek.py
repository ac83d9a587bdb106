"""
R_k の基本解 F′_k = ω_n F_k と E_k = F_k/(ω_n c_k)

F′_k(x,u,v) = x Z′_k(xux, v) / ‖x‖^{n+2k} = Z′_k(u, xvx) x / ‖x‖^{n+2k}。
ω_n は超越数なので、厳密層では F′_k だけを持ち、スカラー 1/(ω_n² c_k) は
浮動小数点評価のときだけ掛ける。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from src.core.errors import MonogenicError
from src.core.logger import get_logger
from src.models.clifford.multivector import Multivector
from src.models.monogenic.kernel_zk import KernelZk, build_Zk
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.radical import RadicalScaled
from src.models.poly.sandwich import xux_images
from src.models.poly.sphere import omega
from src.models.poly.var_space import VarSpace, spaces
from src.models.rarita_schwinger.lemma6 import c_k
from src.models.rarita_schwinger.operator import RSFunction, apply_Rk


@dataclass(frozen=True)
class KernelEk:
    n: int
    k: int
    F_prime: RadialRational
    c_k: Fraction

    @property
    def numerator(self) -> MPoly:
        return self.F_prime.numerator

    @property
    def denominator_power(self) -> int:
        return self.F_prime.power

    def scale(self) -> float:
        """E_k = scale · F′_k"""
        return 1.0 / (omega(self.n) ** 2 * float(self.c_k))

    def cauchy_scale(self) -> float:
        """再生核 K_k = −E_k のスカラー"""
        return -self.scale()

    def evaluate_exact(self, x: Sequence, u: Optional[Sequence] = None, v: Optional[Sequence] = None) -> RadicalScaled:
        """有理点 x での F′_k。u, v を省略するとその変数は多項式として残る"""
        value = self.F_prime
        _, us, vs, _ = spaces(self.n)
        if u is not None:
            value = value.restrict(us, u)
        if v is not None:
            value = value.restrict(vs, v)
        return value.evaluate_radical(x)

    def evaluate(self, x: Sequence, u: Sequence, v: Sequence) -> Multivector:
        """浮動小数点の E_k(x, u, v)"""
        value = self.F_prime.to_float().evaluate({"x": x, "u": u, "v": v})
        return value.scale(self.scale())


def _check_kernel(Z: KernelZk, n: int, k: int) -> None:
    if (Z.n, Z.k) != (n, k):
        raise MonogenicError(f"Z′_k の (n, k) = ({Z.n}, {Z.k}) が要求 ({n}, {k}) と一致しません")


def left_numerator(Z: KernelZk) -> MPoly:
    """x Z′_k(xux, v)"""
    x, u, _, _ = spaces(Z.n)
    moved = Z.poly.substitute(u, xux_images(x, u))
    return MPoly.vector_variable(x) * moved


def right_numerator(Z: KernelZk) -> MPoly:
    """Z′_k(u, xvx) x"""
    x, _, v, _ = spaces(Z.n)
    moved = Z.poly.substitute(v, xux_images(x, v))
    return moved * MPoly.vector_variable(x)


@lru_cache(maxsize=None)
def build_Ek(n: int, k: int, Z: Optional[KernelZk] = None) -> KernelEk:
    Z = Z or build_Zk(n, k)
    _check_kernel(Z, n, k)
    x = VarSpace("x", n)
    F = RadialRational(left_numerator(Z), n + 2 * k, x, reduce=False)
    get_logger().info("基本解 F′_k を構成しました", n=n, k=k, terms=len(F.numerator))
    return KernelEk(n, k, F, c_k(n, k))


def two_representation_residual(Z: KernelZk) -> MPoly:
    """x Z′(xux, v) − Z′(u, xvx) x"""
    return left_numerator(Z) - right_numerator(Z)


def left_annihilation_residual(E: KernelEk) -> RadialRational:
    """(x, u) についての R_k E_k"""
    return apply_Rk(RSFunction(E.F_prime, E.k, "left", "u", validate=False)).body


def right_annihilation_check(E: KernelEk) -> RadialRational:
    """(x, v) についての E_k R_k"""
    return apply_Rk(RSFunction(E.F_prime, E.k, "right", "v", validate=False)).body
