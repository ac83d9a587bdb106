"""
Almansi-Fischer 分解 H_k = M_k ⊕ u M_{k-1} と射影 P_k

P_k h = h + u D_u h / (n+2k−2)。右側版は h + (h D_u) u / (n+2k−2)。
"""

from dataclasses import dataclass
from typing import Union

from src.core.errors import MonogenicError
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.sphere import sphere_mean
from src.models.poly.var_space import VarSpace

Field = Union[MPoly, RadialRational]


@dataclass(frozen=True)
class HarmonicSplit:
    """h_k = p_k + u p_{k-1} (右側版は p_k + p_{k-1} u)"""

    p_k: MPoly
    p_km1: MPoly
    side: str = "left"

    def reconstruct(self, space: VarSpace) -> MPoly:
        u = MPoly.vector_variable(space, self.p_k.mode)
        if self.side == "left":
            return self.p_k + u * self.p_km1
        return self.p_k + self.p_km1 * u


def _numerator(h: Field) -> MPoly:
    return h.numerator if isinstance(h, RadialRational) else h


def check_harmonic(h: Field, space: VarSpace, k: int) -> None:
    """space について斉次 k 次かつ調和であることを確かめる"""
    num = _numerator(h)
    if not num.is_homogeneous(space, k):
        raise MonogenicError(
            f"{space.name} について斉次 {k} 次ではありません (次数 {sorted(num.degrees(space))})"
        )
    if not num.laplacian(space).is_zero():
        raise MonogenicError(f"{space.name} について調和ではありません")


def check_monogenic(p: Field, space: VarSpace, k: int, side: str = "left") -> None:
    num = _numerator(p)
    if not num.is_homogeneous(space, k):
        raise MonogenicError(
            f"{space.name} について斉次 {k} 次ではありません (次数 {sorted(num.degrees(space))})"
        )
    if not num.dirac(space, side).is_zero():
        raise MonogenicError(f"{space.name} について{'左' if side == 'left' else '右'}モノジェニックではありません")


def _denominator(space: VarSpace, k: int) -> int:
    return space.n + 2 * k - 2


def _project_poly(h: MPoly, k: int, space: VarSpace, side: str) -> MPoly:
    d = _denominator(space, k)
    if d == 0 or h.is_zero():
        # n = 2, k = 0 では D_u h = 0 なので射影は恒等写像
        return h
    u = MPoly.vector_variable(space, h.mode)
    if side == "left":
        return h + (u * h.dirac(space, "left")) / d
    return h + (h.dirac(space, "right") * u) / d


def projection_Pk(h: Field, k: int, space: VarSpace, check: bool = True) -> Field:
    """左射影 P_k。RadialRational は分子に作用させる (u と動径空間は別)"""
    if check:
        check_harmonic(h, space, k)
    if isinstance(h, RadialRational):
        return RadialRational(_project_poly(h.numerator, k, space, "left"), h.power, h.space)
    return _project_poly(h, k, space, "left")


def right_projection_Pk(h: Field, k: int, space: VarSpace, check: bool = True) -> Field:
    if check:
        check_harmonic(h, space, k)
    if isinstance(h, RadialRational):
        return RadialRational(_project_poly(h.numerator, k, space, "right"), h.power, h.space)
    return _project_poly(h, k, space, "right")


def almansi_fischer_split(h: MPoly, k: int, space: VarSpace) -> HarmonicSplit:
    check_harmonic(h, space, k)
    p_k = _project_poly(h, k, space, "left")
    if k == 0:
        return HarmonicSplit(p_k, MPoly.zero(h.n, h.mode), "left")
    # D_u (u p_{k-1}) = −(n+2k−2) p_{k-1}
    p_km1 = -(h - p_k).dirac(space, "left") / _denominator(space, k)
    return HarmonicSplit(p_k, p_km1, "left")


def right_split(h: MPoly, k: int, space: VarSpace) -> HarmonicSplit:
    check_harmonic(h, space, k)
    p_k = _project_poly(h, k, space, "right")
    if k == 0:
        return HarmonicSplit(p_k, MPoly.zero(h.n, h.mode), "right")
    p_km1 = -(h - p_k).dirac(space, "right") / _denominator(space, k)
    return HarmonicSplit(p_k, p_km1, "right")


def orthogonality_residual(p_km1: MPoly, p_k: MPoly, space: VarSpace) -> MPoly:
    """M_{k-1} と M_k の直交性 sphere_mean(p̃_{k-1} u p_k)。0 になるべき"""
    u = MPoly.vector_variable(space, p_k.mode)
    return sphere_mean(p_km1.reversion() * u * p_k, space)
