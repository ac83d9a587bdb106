"""
M_k の再生核 Z′_k(u, v) = ω_n Z_k(u, v)

Z′_k = Σ_σ P_σ(u) V′_σ(v) v を ‖v‖^{n+2k−2} 倍して多項式に戻したもの。
u について左モノジェニック、v について右モノジェニックで、それぞれ k 次斉次。
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from src.core.errors import MonogenicError, NotDivisibleError, PolyError
from src.core.logger import get_logger
from src.models.clifford.multivector import Multivector
from src.models.monogenic.almansi_fischer import check_monogenic
from src.models.monogenic.basis import basis_P_sigma, dual_V_sigma
from src.models.poly.mpoly import MPoly
from src.models.poly.sandwich import linear_images
from src.models.poly.sphere import sphere_mean
from src.models.poly.var_space import VarSpace

NORMALIZATION = "omega_n"


@dataclass(frozen=True)
class KernelZk:
    n: int
    k: int
    poly: MPoly
    normalization: str = NORMALIZATION

    @property
    def u(self) -> VarSpace:
        return VarSpace("u", self.n)

    @property
    def v(self) -> VarSpace:
        return VarSpace("v", self.n)


@lru_cache(maxsize=None)
def build_Zk(n: int, k: int) -> KernelZk:
    if n < 3:
        raise MonogenicError(f"再生核の構成には n ≥ 3 が必要です: {n}")
    if k < 0:
        raise MonogenicError(f"k は 0 以上が必要です: {k}")
    basis = basis_P_sigma(n, k)
    v = VarSpace("v", n)
    v_vec = MPoly.vector_variable(v)
    total = None
    for sigma, p_sigma in basis.elements.items():
        term = p_sigma * (dual_V_sigma(v, sigma) * v_vec)
        total = term if total is None else total + term
    try:
        poly = total.times_radius_power(n + 2 * k - 2).to_poly()
    except (NotDivisibleError, PolyError) as e:
        raise MonogenicError(f"Z′_k が多項式に簡約できません (n={n}, k={k}): {e}") from e
    get_logger().info("再生核 Z′_k を構成しました", n=n, k=k, terms=len(poly))
    return KernelZk(n, k, poly)


def reproduce(Z: KernelZk, p: MPoly) -> MPoly:
    """
    (Z′_k(u, v), p(v))_v の球面平均

    p が u の多項式として与えられた場合は v に付け替えてから積分する。
    結果は u の多項式で、p が M_k に属せば p(u) に一致する。
    """
    u, v = Z.u, Z.v
    if p.depends_on(u) and not p.depends_on(v):
        p = p.rename(u, v)
    check_monogenic(p, v, Z.k)
    return sphere_mean(Z.poly * p, v)


def zk_reflection_residual(Z: KernelZk, x: Sequence) -> MPoly:
    """
    Z′_k(u, v) + x Z′_k(xux, xvx) x / ‖x‖^{4k+2} を返す (0 になるべき)

    Pin∖Spin の元 x/‖x‖ による核の不変性を、有理点 x で ‖x‖ の冪を払って確かめる。
    """
    n = Z.n
    xv = Multivector.vector(n, x)
    r2 = xv.norm_squared()
    if r2 == 0:
        raise MonogenicError("x = 0 では反転できません")
    moved = Z.poly.substitute(Z.u, linear_images(xv, xv, Z.u))
    moved = moved.substitute(Z.v, linear_images(xv, xv, Z.v))
    sandwiched = (xv * moved * xv) / (r2 ** (2 * Z.k + 1))
    return Z.poly + sandwiched
