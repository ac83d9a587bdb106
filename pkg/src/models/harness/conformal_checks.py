"""
Möbius 変換に対する P_k, R_k, D の共変性と核の変換則のチェック

記号的に確かめるもの (Lemma 1–4, Theorem 2–3) と、有理標本点で厳密に
確かめるもの (Theorem 1, 4, Dirac, 核の変換則) がある。
"""

from fractions import Fraction
from typing import Dict, List, Tuple

from src.core.errors import ConformalError
from src.models.clifford.multivector import Multivector
from src.models.clifford.versor import Versor
from src.models.conformal.intertwining import (
    dilation_Pk_residual,
    dirac_conformal_check,
    intertwine_Pk_check,
    intertwine_Rk_check,
    inversion_Pk_residual,
    inversion_Rk_residual,
    kernel_conformal_check,
    reflection_Pk_residual,
    reflection_Rk_residual,
    translation_Pk_residual,
)
from src.models.conformal.vahlen import (
    VahlenMatrix,
    compose,
    dilation,
    inversion,
    mobius_apply,
    reflection,
    translation,
)
from src.models.harness.check_spec import CONFORMAL, CheckContext, register
from src.models.monogenic.basis import basis_P_sigma, spanning_harmonics
from src.models.poly.mpoly import MPoly
from src.models.poly.var_space import VarSpace
from src.models.rarita_schwinger.operator import RSFunction
from src.models.residual import Residual, worst

KERNEL_PAIRS = 6


def _pythagorean(n: int, p: int, q: int) -> Multivector:
    """(p/5, q/5, 0, …) の単位ベクトル (p² + q² = 25)"""
    return Multivector.vector(n, [Fraction(p, 5), Fraction(q, 5)] + [0] * (n - 2))


def sample_versors(n: int) -> List[Versor]:
    """Pin∖Spin の元 1 つと Spin の元 1 つ"""
    a = _pythagorean(n, 3, 4)
    b = Multivector.vector(n, [0] * (n - 1) + [1])
    return [Versor(n, [a]), Versor(n, [a, b])]


def sample_matrices(n: int) -> Dict[str, VahlenMatrix]:
    """反射・反転・平行移動・拡大と、それらの合成"""
    shift = [1, Fraction(-1, 2)] + [0] * (n - 2)
    refl = reflection(sample_versors(n)[0])
    general = compose(translation(shift), compose(inversion(n), compose(refl, dilation(n, 2))))
    return {
        "reflection": refl,
        "inversion": inversion(n),
        "translation": translation(shift),
        "dilation": dilation(n, Fraction(3, 2)),
        "general": general,
    }


def harmonic_samples(n: int, k: int) -> List[MPoly]:
    """x に依存し、u について k 次調和な Clifford 値多項式"""
    x = VarSpace("x", n)
    x1 = MPoly.variable(x, 1)
    x2 = MPoly.variable(x, 2)
    harmonics = spanning_harmonics(n, k)
    e12 = Multivector.basis(n, 1, 2)
    out = []
    for i, h in enumerate(harmonics[:3]):
        out.append(x1 * h + (x2 * x2) * h.right_mul(e12) + MPoly.constant(i + 1, n) * h)
    return out


def monogenic_samples(n: int, k: int) -> List[MPoly]:
    """x に依存し、u について k 次左モノジェニックな多項式"""
    x = VarSpace("x", n)
    x1 = MPoly.variable(x, 1)
    xn = MPoly.variable(x, n)
    elements = list(basis_P_sigma(n, k).elements.values())
    first = elements[0]
    last = elements[-1]
    e1 = Multivector.basis(n, 1)
    return [x1 * first, (x1 * xn) * last.right_mul(e1) + xn * first]


def _nonsingular(M: VahlenMatrix):
    def accept(x: Multivector) -> bool:
        return not M.denominator(x).is_zero()

    return accept


# Lemma 1–4: P_k の共変性 (記号的)


@register("lemma1", "P_{k,w}ãf(ayã,awã)=ãP_{k,u}f(x,u)", CONFORMAL)
def lemma1(ctx: CheckContext) -> Residual:
    return worst(
        Residual.of(reflection_Pk_residual(f, ctx.k, a))
        for f in harmonic_samples(ctx.n, ctx.k)
        for a in sample_versors(ctx.n)
    )


@register("lemma2", "P_{k,w} y/‖y‖^n f(y^{-1}, ywy/‖y‖²)", CONFORMAL)
def lemma2(ctx: CheckContext) -> Residual:
    return worst(Residual.of(inversion_Pk_residual(f, ctx.k)) for f in harmonic_samples(ctx.n, ctx.k))


@register("lemma3", "P_kf(x,u)=P_kf(y+a,u)", CONFORMAL)
def lemma3(ctx: CheckContext) -> Residual:
    shift = [Fraction(1, 2), -2] + [Fraction(1, 3)] * (ctx.n - 2)
    return worst(Residual.of(translation_Pk_residual(f, ctx.k, shift)) for f in harmonic_samples(ctx.n, ctx.k))


@register("lemma4", "P_kf(x,u)=P_kf(λy,u)", CONFORMAL)
def lemma4(ctx: CheckContext) -> Residual:
    return worst(
        Residual.of(dilation_Pk_residual(f, ctx.k, lam))
        for f in harmonic_samples(ctx.n, ctx.k)
        for lam in (Fraction(3, 2), -2)
    )


# Theorem 1–4: 一般の Möbius 変換と R_k


@register("theorem1", "P_{k,w}J(φ,x)f(φ(x),…)=J(φ,x)P_{k,u}f(φ(x),u)", CONFORMAL)
def theorem1(ctx: CheckContext) -> Residual:
    residuals = []
    f = harmonic_samples(ctx.n, ctx.k)[0]
    for salt, M in enumerate(sample_matrices(ctx.n).values()):
        points = ctx.points(salt=100 + salt, accept=_nonsingular(M))
        residuals.append(intertwine_Pk_check(M, f, ctx.k, points))
    return worst(residuals)


@register("theorem2", "aR_{k,u}f(x,u)=R_{k,w}ãf(ayã,awã)", CONFORMAL)
def theorem2(ctx: CheckContext) -> Residual:
    return worst(
        Residual.of(reflection_Rk_residual(f, ctx.k, a))
        for f in monogenic_samples(ctx.n, ctx.k)
        for a in sample_versors(ctx.n)
    )


@register("theorem3", "y/‖y‖^{n+2}R_{k,u}f(x,u)=R_{k,w}G(y)f(y^{-1},ywy/‖y‖²)", CONFORMAL)
def theorem3(ctx: CheckContext) -> Residual:
    # x に依らない解では左辺が 0 になる
    solution = next(iter(basis_P_sigma(ctx.n, ctx.k).elements.values()))
    samples = monogenic_samples(ctx.n, ctx.k) + [solution]
    return worst(Residual.of(inversion_Rk_residual(f, ctx.k)) for f in samples)


@register("theorem4", "R_{k,x,w}J_1(φ,x)ψ(φ(x),…)=J_{-1}(φ,x)R_{k,y,u}ψ(y,u)", CONFORMAL)
def theorem4(ctx: CheckContext) -> Residual:
    residuals = []
    f = RSFunction(monogenic_samples(ctx.n, ctx.k)[-1], ctx.k)
    for salt, M in enumerate(sample_matrices(ctx.n).values()):
        points = ctx.points(salt=200 + salt, accept=_nonsingular(M))
        residuals.append(intertwine_Rk_check(M, f, points))
    return worst(residuals)


@register("dirac-conformal", "D_x=J_{-1}(φ,x)^{-1}D_yJ_1(φ,x)", CONFORMAL)
def dirac_conformal(ctx: CheckContext) -> Residual:
    x = VarSpace("x", ctx.n)
    x1 = MPoly.variable(x, 1)
    x2 = MPoly.variable(x, 2)
    f = (x1 * x1 * x2).right_mul(Multivector.basis(ctx.n, 1, 2)) + x2
    residuals = []
    for salt, M in enumerate(sample_matrices(ctx.n).values()):
        points = ctx.points(salt=300 + salt, accept=_nonsingular(M))
        residuals.append(dirac_conformal_check(M, f, points))
    return worst(residuals)


# 核の変換則


def kernel_pairs(ctx: CheckContext, M: VahlenMatrix, count: int, salt: int) -> List[Tuple[Multivector, Multivector]]:
    """x, y, x−y, cx+d, cy+d, φx−φy が全て非零になる有理点の組"""
    accept = _nonsingular(M)
    xs = ctx.points(count, salt=salt, accept=accept)
    ys = ctx.points(count, salt=salt + 1, accept=accept)
    pairs = []
    for x, y in zip(xs, ys):
        if (x - y).is_zero():
            continue
        try:
            if (mobius_apply(M, x) - mobius_apply(M, y)).is_zero():
                continue
        except ConformalError:
            continue
        pairs.append((x, y))
    return pairs


@register(
    "kernel-conformal",
    "−G(y)^{-1}E_k(x−y,u′,v′)G(x)^{-1}",
    CONFORMAL,
    needs_kernel=True,
    note="反射・反転・平行移動・一般の合成で E_k の変換則を確かめる",
)
def kernel_conformal(ctx: CheckContext) -> Residual:
    E = ctx.kernel("Ek")
    residuals = []
    for salt, (name, M) in enumerate(sample_matrices(ctx.n).items()):
        pairs = kernel_pairs(ctx, M, KERNEL_PAIRS, 400 + 2 * salt)
        if name == "inversion":
            x = Multivector.vector(ctx.n, [2] + [0] * (ctx.n - 1))
            y = Multivector.vector(ctx.n, [0, 3] + [0] * (ctx.n - 2))
            pairs.append((x, y))
        residuals.append(kernel_conformal_check(E, M, pairs))
    return worst(residuals)
