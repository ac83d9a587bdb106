"""
厳密層のチェック: Dirac 作用素、Almansi-Fischer 分解、球面モノジェニックの基底と
再生核、c_k、基本解の消滅
"""

from fractions import Fraction
from typing import List

import numpy as np

from src.models.clifford.multivector import Multivector
from src.models.harness.check_spec import EXACT_ALGEBRA, CheckContext, register
from src.models.monogenic.almansi_fischer import (
    almansi_fischer_split,
    check_monogenic,
    orthogonality_residual,
    projection_Pk,
    right_split,
)
from src.models.monogenic.basis import basis_P_sigma, orthonormality_matrix, spanning_harmonics
from src.models.monogenic.kernel_zk import reproduce, zk_reflection_residual
from src.models.poly.mpoly import MPoly
from src.models.poly.var_space import VarSpace
from src.models.rarita_schwinger.gegenbauer import gegenbauer_integral_check
from src.models.rarita_schwinger.kernel_ek import (
    left_annihilation_residual,
    right_annihilation_check,
    two_representation_residual,
)
from src.models.rarita_schwinger.lemma6 import c_k, lemma6_check
from src.models.rarita_schwinger.operator import RSFunction, apply_Rk
from src.models.residual import Residual, worst

DIRAC_SAMPLES = 24
MAX_DEGREE = 3
MAX_TERMS = 4
REFLECTION_POINTS = 4


def random_polynomials(n: int, count: int, seed: int, space_name: str = "x") -> List[MPoly]:
    """整数係数・Clifford 値のランダム多項式 (次数 ≤ 3)"""
    rng = np.random.default_rng(seed)
    space = VarSpace(space_name, n)
    out = []
    for _ in range(count):
        p = MPoly.zero(n)
        for _ in range(int(rng.integers(1, MAX_TERMS + 1))):
            exps = rng.multinomial(int(rng.integers(0, MAX_DEGREE + 1)), [1 / n] * n)
            blade = Multivector(n, {int(rng.integers(0, 1 << n)): int(rng.integers(-5, 6))})
            p = p + MPoly.monomial(space, [int(e) for e in exps], blade)
        out.append(p)
    return out


def _clifford_valued(h: MPoly) -> List[MPoly]:
    """スカラー値の調和多項式と、右からブレードを掛けた Clifford 値版"""
    n = h.n
    return [h, h.right_mul(Multivector.basis(n, 1, n))]


@register("dirac-square", "Note D²=−Δ_n", EXACT_ALGEBRA)
def dirac_square(ctx: CheckContext) -> Residual:
    x = VarSpace("x", ctx.n)
    polys = [ctx.cast(p) for p in random_polynomials(ctx.n, DIRAC_SAMPLES, ctx.config.seed)]
    residuals = []
    for p in polys:
        residuals.append(Residual.of(p.dirac(x).dirac(x) + p.laplacian(x)))
        residuals.append(Residual.of(p.dirac(x, "right").dirac(x, "right") + p.laplacian(x)))
    return worst(residuals)


@register("almansi-fischer", "h_k=p_k+up_{k-1}", EXACT_ALGEBRA)
def almansi_fischer(ctx: CheckContext) -> Residual:
    """H_k を張る集合の各元を分解し、再構成と各成分のモノジェニック性を確かめる"""
    u = VarSpace("u", ctx.n)
    k = ctx.k
    residuals = []
    for h in spanning_harmonics(ctx.n, k):
        for g in _clifford_valued(h):
            for split, side in ((almansi_fischer_split(g, k, u), "left"), (right_split(g, k, u), "right")):
                residuals.append(Residual.of(split.reconstruct(u) - g))
                residuals.append(Residual.of(split.p_k.dirac(u, side)))
                residuals.append(Residual.of(split.p_km1.dirac(u, side)))
    return worst(residuals)


@register("projection-formula", "P_k=(uD_u/(n+2k-2)+1)", EXACT_ALGEBRA)
def projection_formula(ctx: CheckContext) -> Residual:
    """P_k h は左モノジェニックで、M_k 上では恒等写像"""
    u = VarSpace("u", ctx.n)
    k = ctx.k
    residuals = []
    for h in spanning_harmonics(ctx.n, k):
        for g in _clifford_valued(h):
            residuals.append(Residual.of(projection_Pk(ctx.cast(g), k, u, check=False).dirac(u)))
    for p in basis_P_sigma(ctx.n, k).elements.values():
        p = ctx.cast(p)
        residuals.append(Residual.of(projection_Pk(p, k, u, check=False) - p))
    return worst(residuals)


@register("orthonormality", "∫V_σ(u)uP_μ(u)dS(u)=δ_{σ,μ}", EXACT_ALGEBRA)
def orthonormality(ctx: CheckContext) -> Residual:
    residuals = []
    for (s, mu), value in orthonormality_matrix(ctx.n, ctx.k).items():
        expected = Multivector.scalar(ctx.n, 1 if s == mu else 0)
        residuals.append(Residual.of(value - expected))
    return worst(residuals)


@register("reproducing", "p_k(u)=(Z_k(u,v), p_k(v))_v", EXACT_ALGEBRA, needs_kernel=True)
def reproducing(ctx: CheckContext) -> Residual:
    Z = ctx.kernel("Zk")
    basis = basis_P_sigma(ctx.n, ctx.k)
    residuals = [Residual.of(reproduce(Z, p) - p) for p in basis.elements.values()]
    # 右から定数を掛けても M_k に留まる
    e1 = Multivector.basis(ctx.n, 1)
    residuals += [Residual.of(reproduce(Z, p.right_mul(e1)) - p.right_mul(e1)) for p in basis.elements.values()]
    return worst(residuals)


@register("lemma5", "p̃_{k-1}(u)up_k(u)dS(u)=0", EXACT_ALGEBRA)
def lemma5(ctx: CheckContext) -> Residual:
    """M_{k−1} と M_k の直交性: p̃_{k−1} u p_k の球面平均が 0"""
    k = ctx.k
    if k == 0:
        return Residual.zero()
    u = VarSpace("u", ctx.n)
    lower = basis_P_sigma(ctx.n, k - 1).elements.values()
    upper = basis_P_sigma(ctx.n, k).elements.values()
    return worst(
        Residual.of(orthogonality_residual(ctx.cast(p), ctx.cast(q), u)) for p in lower for q in upper
    )


@register("lemma6", "c_k=(n-2)/(n-2+2k)", EXACT_ALGEBRA)
def lemma6(ctx: CheckContext) -> Residual:
    residuals = []
    for h in spanning_harmonics(ctx.n, ctx.k):
        lhs, rhs = lemma6_check(h, ctx.n, ctx.k)
        residuals.append(Residual.of(lhs - rhs))
    return worst(residuals)


@register("gegenbauer-integral", "normalized Gegenbauer polynomial is", EXACT_ALGEBRA, numeric=True)
def gegenbauer_integral(ctx: CheckContext) -> Residual:
    """数値積分と閉形式の一致、および k = 0 との比が c_k であること"""
    numeric, closed = gegenbauer_integral_check(ctx.n, ctx.k)
    _, closed0 = gegenbauer_integral_check(ctx.n, 0)
    ratio_gap = abs(closed / closed0 - float(c_k(ctx.n, ctx.k)))
    gap = abs(numeric - closed) / abs(closed)
    if gap >= ratio_gap:
        return Residual.float_gap(gap, f"数値積分 {numeric!r} と閉形式 {closed!r}")
    return Residual.float_gap(ratio_gap, f"比 {closed / closed0!r} と c_k {c_k(ctx.n, ctx.k)}")


@register("rk-annihilates-Zk", "R_kZ_k=0", EXACT_ALGEBRA, needs_kernel=True)
def rk_annihilates_zk(ctx: CheckContext) -> Residual:
    Z = ctx.kernel("Zk")
    left = apply_Rk(RSFunction(Z.poly, ctx.k, "left", "u")).body
    right = apply_Rk(RSFunction(Z.poly, ctx.k, "right", "v")).body
    return worst([Residual.of(left), Residual.of(right)])


@register("ek-left", "non-trivial solution to R_kf(x,u)=0", EXACT_ALGEBRA, needs_kernel=True)
def ek_left(ctx: CheckContext) -> Residual:
    E = ctx.kernel("Ek")
    check_monogenic(E.F_prime, VarSpace("u", ctx.n), ctx.k, "left")
    return Residual.of(left_annihilation_residual(E))


@register("ek-right", "non-trivial solution to R_kf(x,u)=0", EXACT_ALGEBRA, needs_kernel=True)
def ek_right(ctx: CheckContext) -> Residual:
    E = ctx.kernel("Ek")
    check_monogenic(E.F_prime, VarSpace("v", ctx.n), ctx.k, "right")
    return Residual.of(right_annihilation_check(E))


@register("fk-two-representations", "Z_k(u,xvx/‖x‖²) x/‖x‖^n", EXACT_ALGEBRA, needs_kernel=True)
def fk_two_representations(ctx: CheckContext) -> Residual:
    return Residual.of(two_representation_residual(ctx.kernel("Zk")))


@register("zk-reflection", "±ãZ_k(auã,avã)a", EXACT_ALGEBRA, needs_kernel=True)
def zk_reflection(ctx: CheckContext) -> Residual:
    Z = ctx.kernel("Zk")
    points = [Multivector.vector(ctx.n, [Fraction(3, 5), Fraction(4, 5)] + [0] * (ctx.n - 2))]
    points += ctx.points(REFLECTION_POINTS, salt=11)
    return worst(Residual.of(zk_reflection_residual(Z, p.vector_coords())) for p in points)
