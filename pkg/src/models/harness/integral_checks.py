"""
単位球体上の積分公式の数値チェック

残差は浮動小数点で、tolerance (チェックごとの緩和値があればそちら) と比べる。
"""

from src.models.harness.check_spec import INTEGRAL, CheckContext, register
from src.models.quadrature.integral_formulas import (
    borel_pompeiu_check,
    cauchy_theorem_check,
    cauchy_theorem_conformal_check,
    cif_check,
    cif_conformal_check,
    rs_stokes_check,
    stokes_check,
    tk_delta_check,
    tk_inverse_check,
)
from src.models.residual import Residual

BOREL_POMPEIU_TOL = 1e-4
CONFORMAL_CIF_TOL = 1e-5
TK_TOL = 1e-3
DIRAC_BOREL_POMPEIU_TOL = 1e-6


@register("stokes", "∫_{∂Ω}g(x,u)dσ_xf(x,u)", INTEGRAL)
def stokes(ctx: CheckContext) -> Residual:
    return stokes_check(ctx.n, ctx.setup())


@register("rs-stokes", "(g(x,u)dσ_xf(x,u))_u", INTEGRAL)
def rs_stokes(ctx: CheckContext) -> Residual:
    return rs_stokes_check(ctx.n, ctx.k, ctx.setup())


@register(
    "cauchy-theorem",
    "(g(x,u),P_kdσ_xf(x,u))_u=0",
    INTEGRAL,
    needs_kernel=True,
    note="g は右モノジェニック (左の解の反転) として構成する",
)
def cauchy_theorem(ctx: CheckContext) -> Residual:
    return cauchy_theorem_check(ctx.kernel("Ek"), ctx.setup())


@register("cauchy-theorem-conformal", "Cauchy's Theorem is conformally invariant", INTEGRAL, needs_kernel=True)
def cauchy_theorem_conformal(ctx: CheckContext) -> Residual:
    return cauchy_theorem_conformal_check(ctx.kernel("Ek"), ctx.setup())


@register(
    "borel-pompeiu",
    "(Borel-Pompeiu Theorem)",
    INTEGRAL,
    needs_kernel=True,
    tolerance=BOREL_POMPEIU_TOL,
    slow=True,
)
def borel_pompeiu(ctx: CheckContext) -> Residual:
    return borel_pompeiu_check(ctx.kernel("Ek"), ctx.setup())


@register(
    "borel-pompeiu-dirac",
    "(Borel-Pompeiu Theorem)",
    INTEGRAL,
    needs_kernel=True,
    tolerance=DIRAC_BOREL_POMPEIU_TOL,
    slow=True,
    note="k = 0 では Clifford 解析の古典的な Borel-Pompeiu 公式",
)
def borel_pompeiu_dirac(ctx: CheckContext) -> Residual:
    return borel_pompeiu_check(ctx.kernel("Ek", k=0), ctx.setup(k=0))


@register("cif", "(Cauchy's Integral Formula)", INTEGRAL, needs_kernel=True)
def cif(ctx: CheckContext) -> Residual:
    return cif_check(ctx.kernel("Ek"), ctx.setup())


@register(
    "cif-conformal",
    "Cauchy's Integral Formula is conformally invariant",
    INTEGRAL,
    needs_kernel=True,
    tolerance=CONFORMAL_CIF_TOL,
)
def cif_conformal(ctx: CheckContext) -> Residual:
    return cif_conformal_check(ctx.kernel("Ek"), ctx.setup())


@register(
    "tk-delta",
    "−(E_k(x−y,u,v),R_kψ(x,v))_v",
    INTEGRAL,
    needs_kernel=True,
    tolerance=TK_TOL,
    slow=True,
    note="台が Ω に含まれる ψ に対する Borel-Pompeiu 公式と同値",
)
def tk_delta(ctx: CheckContext) -> Residual:
    return tk_delta_check(ctx.kernel("Ek"), ctx.setup())


@register(
    "tk-inverse",
    "R_kT_kψ=ψ",
    INTEGRAL,
    needs_kernel=True,
    tolerance=TK_TOL,
    slow=True,
    note="台が Ω に含まれる ψ に対する Borel-Pompeiu 公式と同値",
)
def tk_inverse(ctx: CheckContext) -> Residual:
    return tk_inverse_check(ctx.kernel("Ek"), ctx.setup())
