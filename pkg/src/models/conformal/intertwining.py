"""
P_k, D, R_k の Möbius 変換に対する共変性と核の変換則の検証

反射・反転・平行移動・拡大は記号的に (多項式 / 動径有理関数の恒等式として)、
一般の Vahlen 行列は有理点での厳密な連鎖律で確かめる。後者では u 側は記号のまま残す。

変換後の関数の u 側の引数は U(x, w) = (cx+d) w (cx+d)~/‖cx+d‖² とする。
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from src.core.errors import ConformalError, MonogenicError
from src.core.logger import get_logger
from src.models.clifford.multivector import Multivector
from src.models.clifford.versor import Versor
from src.models.conformal.vahlen import VahlenMatrix, mobius_apply, radial_power
from src.models.monogenic.almansi_fischer import check_harmonic, projection_Pk
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational, substitute_rational
from src.models.poly.radical import RadicalScaled
from src.models.poly.sandwich import combined_images, linear_images, xux_images
from src.models.poly.var_space import VarSpace, spaces
from src.models.rarita_schwinger.kernel_ek import KernelEk
from src.models.rarita_schwinger.operator import RSFunction, apply_Rk
from src.models.residual import Residual, worst


def _rk(f: MPoly, k: int) -> MPoly:
    return apply_Rk(RSFunction(f, k, validate=False)).body


def _rk_w(g, k: int):
    return apply_Rk(RSFunction(g, k, "left", "w", validate=False)).body


# 反射 (Lemma 1 / Theorem 2 型)


def reflect_poly(f: MPoly, a: Multivector) -> MPoly:
    """f(a y ã, a w ã)。y は x 空間、w は w 空間の変数"""
    x, u, _, w = spaces(f.n)
    a_rev = a.reversion()
    moved = f.substitute(x, linear_images(a, a_rev, x))
    return moved.substitute(u, linear_images(a, a_rev, w))


def reflection_Pk_residual(f: MPoly, k: int, a: Versor) -> MPoly:
    """P_{k,w}[ã f(ayã, awã)] − ã (P_{k,u} f)(ayã, awã)"""
    _, u, _, w = spaces(f.n)
    check_harmonic(f, u, k)
    am = a.as_multivector()
    a_rev = am.reversion()
    lhs = projection_Pk(a_rev * reflect_poly(f, am), k, w)
    rhs = a_rev * reflect_poly(projection_Pk(f, k, u), am)
    return lhs - rhs


def reflection_Rk_residual(f: MPoly, k: int, a: Versor) -> MPoly:
    """R_{k,w}[ã f(ayã, awã)] − (aã) ã (R_k f)(ayã, awã)"""
    RSFunction(f, k)  # 前提条件の確認
    am = a.as_multivector()
    a_rev = am.reversion()
    sign = (am * a_rev).scalar_part()
    lhs = _rk_w(a_rev * reflect_poly(f, am), k)
    rhs = (a_rev * reflect_poly(_rk(f, k), am)).scale(sign)
    return lhs - rhs


# 反転 (Lemma 2 / Theorem 3 型)


def invert_poly(f: MPoly) -> RadialRational:
    """f(y^{-1}, y w y/‖y‖²) を y (= x 空間) の動径有理関数として返す"""
    x, u, _, w = spaces(f.n)
    n = f.n
    inv_images = [RadialRational(-MPoly.variable(x, i, f.mode), 2, x, reduce=False) for i in range(1, n + 1)]
    step = substitute_rational(f, x, inv_images, x)
    u_images = [RadialRational(img, 2, x, reduce=False) for img in xux_images(x, w, f.mode)]
    moved = substitute_rational(step.numerator, u, u_images, x)
    return moved.times_radius_power(-step.power)


def _inversion_weight(n: int, extra: int, mode: str) -> RadialRational:
    """y/‖y‖^{n+extra}"""
    x = VarSpace("x", n)
    return RadialRational(MPoly.vector_variable(x, mode), n + extra, x, reduce=False)


def inversion_Pk_residual(f: MPoly, k: int) -> RadialRational:
    """P_{k,w}[y/‖y‖^n f(y^{-1}, ywy/‖y‖²)] − y/‖y‖^n (P_{k,u} f)(…)"""
    _, u, _, w = spaces(f.n)
    check_harmonic(f, u, k)
    weight = _inversion_weight(f.n, 0, f.mode)
    lhs = projection_Pk(weight * invert_poly(f), k, w)
    rhs = weight * invert_poly(projection_Pk(f, k, u))
    return lhs - rhs


def inversion_Rk_residual(f: MPoly, k: int) -> RadialRational:
    """R_{k,w}[G′(y) f(y^{-1}, ywy/‖y‖²)] + y/‖y‖^{n+2} (R_k f)(…)"""
    RSFunction(f, k)  # 前提条件の確認
    g_prime = -_inversion_weight(f.n, 0, f.mode)
    lhs = _rk_w(g_prime * invert_poly(f), k)
    rhs = -(_inversion_weight(f.n, 2, f.mode) * invert_poly(_rk(f, k)))
    return lhs - rhs


# 平行移動・拡大 (Lemma 3 / Lemma 4)


def _affine_poly(f: MPoly, scale, shift: Sequence) -> MPoly:
    """f(λ y + t, u)"""
    x = VarSpace("x", f.n)
    images = [
        MPoly.variable(x, i + 1, f.mode).scale(scale) + MPoly.constant(shift[i], f.n, f.mode)
        for i in range(f.n)
    ]
    return f.substitute(x, images)


def translation_Pk_residual(f: MPoly, k: int, t: Sequence) -> MPoly:
    u = VarSpace("u", f.n)
    check_harmonic(f, u, k)
    return projection_Pk(_affine_poly(f, 1, t), k, u) - _affine_poly(projection_Pk(f, k, u), 1, t)


def dilation_Pk_residual(f: MPoly, k: int, lam) -> MPoly:
    u = VarSpace("u", f.n)
    check_harmonic(f, u, k)
    zero = [0] * f.n
    return projection_Pk(_affine_poly(f, lam, zero), k, u) - _affine_poly(projection_Pk(f, k, u), lam, zero)


# 一般の Vahlen 行列: 有理点での連鎖律


class _PointFrame:
    """点 x での cx+d、φ(x)、およびそれらの x_j 微分"""

    def __init__(self, M: VahlenMatrix, x: Multivector):
        self.M = M
        self.n = M.n
        self.x = x
        self.B = M.denominator(x)
        self.N = self.B.norm_squared()
        if self.N == 0:
            raise ConformalError(f"cx+d が 0 になる点です: {x}")
        self.B_rev = self.B.reversion()
        self.B_inv = self.B.inverse()
        self.phi = mobius_apply(M, x)
        self.e = [Multivector.basis(self.n, j, mode=M.mode) for j in range(1, self.n + 1)]

    def dB(self, j: int) -> Multivector:
        return self.M.c * self.e[j]

    def dN(self, j: int):
        """∂_j ‖B‖² = 2⟨B, c e_j⟩ (係数ベクトルとしての内積)"""
        db = self.dB(j)
        return 2 * sum((c * db[m] for m, c in self.B.items()), self.N * 0)

    def dphi(self, j: int) -> Multivector:
        """∂_j φ = a e_j B^{-1} − (ax+b) B^{-1} c e_j B^{-1}"""
        M = self.M
        head = M.a * self.e[j] * self.B_inv
        tail = (M.a * self.x + M.b) * self.B_inv * self.dB(j) * self.B_inv
        value = head - tail
        if not value.is_vector():
            raise ConformalError(f"∂φ がベクトルになりません: {value}")
        return value

    def U_images(self, w: VarSpace) -> List[MPoly]:
        return linear_images(self.B / self.N, self.B_rev, w)

    def dU_images(self, j: int, w: VarSpace) -> List[MPoly]:
        """∂_j U = [(ce_j) w B̃ + B w (ce_j)~]/‖B‖² − B w B̃ ∂_j‖B‖²/‖B‖⁴"""
        db = self.dB(j)
        pairs = [
            (db / self.N, self.B_rev),
            (self.B / self.N, db.reversion()),
            (self.B.scale(-self.dN(j) / self.N ** 2), self.B_rev),
        ]
        return combined_images(pairs, w)

    def dJ_over_rho(self, j: int) -> Multivector:
        """∂_j J_1 を ρ = ‖B‖^{-n} で割ったもの: (ce_j)~ − (n/2) B̃ ∂_j‖B‖²/‖B‖²"""
        half_n = Fraction(self.n, 2) if isinstance(self.N, Fraction) else self.n / 2
        return self.dB(j).reversion() - self.B_rev.scale(half_n * self.dN(j) / self.N)

    def rho(self) -> float:
        return float(self.N) ** (-self.n / 2)


def _transform(frame: _PointFrame, p: MPoly, transform_u: bool) -> MPoly:
    x, u, _, w = spaces(p.n)
    moved = p.restrict(x, frame.phi.vector_coords())
    return moved.substitute(u, frame.U_images(w)) if transform_u else moved


def transformed_dirac(frame: _PointFrame, f: MPoly, transform_u: bool) -> MPoly:
    """D_x [J_1(x) f(φ(x), U(x,w))] / ρ を点 x で評価したもの (w は記号)"""
    x, u, _, w = spaces(f.n)
    n = f.n
    f_y = [f.partial_derivative(x, i) for i in range(1, n + 1)]
    f_u = [f.partial_derivative(u, i) for i in range(1, n + 1)] if transform_u else []
    base = _transform(frame, f, transform_u)
    moved_y = [_transform(frame, p, transform_u) for p in f_y]
    moved_u = [_transform(frame, p, transform_u) for p in f_u]
    total = MPoly.zero(n, f.mode)
    for j in range(n):
        inner = frame.dJ_over_rho(j) * base
        dphi = frame.dphi(j).vector_coords()
        chain = MPoly.zero(n, f.mode)
        for i in range(n):
            if dphi[i] != 0 and not moved_y[i].is_zero():
                chain = chain + moved_y[i].scale(dphi[i])
        if transform_u:
            dU = frame.dU_images(j, w)
            for i in range(n):
                if not moved_u[i].is_zero():
                    chain = chain + dU[i] * moved_u[i]
        inner = inner + frame.B_rev * chain
        total = total + frame.e[j] * inner
    return total


def theorem1_point_residual(M: VahlenMatrix, f: MPoly, k: int, x: Multivector) -> Residual:
    """P_{k,w}[J_1 f(φ(x), U)] − J_1 (P_{k,u} f)(φ(x), U) を点 x で"""
    _, u, _, w = spaces(f.n)
    frame = _PointFrame(M, x)
    lhs = projection_Pk(frame.B_rev * _transform(frame, f, True), k, w)
    rhs = frame.B_rev * _transform(frame, projection_Pk(f, k, u), True)
    return Residual.of(lhs - rhs).scaled(frame.rho())


def theorem4_point_residual(M: VahlenMatrix, f: MPoly, k: int, x: Multivector) -> Residual:
    """R_{k,w}[J_1 f(φ(x), U)] − ε J_{−1} (R_k f)(φ(x), U) を点 x で"""
    w = VarSpace("w", f.n)
    frame = _PointFrame(M, x)
    lhs = projection_Pk(transformed_dirac(frame, f, True), k, w)
    rhs = (frame.B_rev * _transform(frame, _rk(f, k), True)).scale(M.epsilon) / frame.N
    return Residual.of(lhs - rhs).scaled(frame.rho())


def dirac_point_residual(M: VahlenMatrix, f: MPoly, x: Multivector) -> Residual:
    """D_x[J_1 f(φ(x))] − ε J_{−1} (D f)(φ(x))。u は変換しない"""
    xs = VarSpace("x", f.n)
    frame = _PointFrame(M, x)
    lhs = transformed_dirac(frame, f, False)
    rhs = (frame.B_rev * _transform(frame, f.dirac(xs), False)).scale(M.epsilon) / frame.N
    return Residual.of(lhs - rhs).scaled(frame.rho())


def _over_points(name: str, fn, points: Iterable[Multivector]) -> Residual:
    results = [fn(p) for p in points]
    result = worst(results)
    get_logger().debug("点ごとの検証を行いました", check=name, points=len(results), residual=result.describe())
    return result


def intertwine_Pk_check(M: VahlenMatrix, f: MPoly, k: int, points: Iterable[Multivector]) -> Residual:
    check_harmonic(f, VarSpace("u", f.n), k)
    return _over_points("theorem1", lambda p: theorem1_point_residual(M, f, k, p), points)


def intertwine_Rk_check(M: VahlenMatrix, f: RSFunction, points: Iterable[Multivector]) -> Residual:
    if not isinstance(f.body, MPoly):
        raise MonogenicError("一般の Möbius 変換の検証は多項式の f に限ります")
    return _over_points("theorem4", lambda p: theorem4_point_residual(M, f.body, f.k, p), points)


def dirac_conformal_check(M: VahlenMatrix, f: MPoly, points: Iterable[Multivector]) -> Residual:
    return _over_points("dirac-conformal", lambda p: dirac_point_residual(M, f, p), points)


# 核の変換則


def _inverse_weight(b: Multivector, n: int) -> RadicalScaled:
    """b^{-1} ‖b‖^n"""
    factor, radicand = radial_power(b.norm_squared(), n)
    return RadicalScaled(b.inverse().scale(factor), radicand)


def kernel_point_residual(E: KernelEk, M: VahlenMatrix, x: Multivector, y: Multivector) -> Residual:
    """
    F′(φx−φy, u, v) − pdet J(y)^{-1} F′(x−y, u′, v′) J̃(x)^{-1}

    u′ = (cy+d)~ u (cy+d)/‖cy+d‖²、v′ = (cx+d)~ v (cx+d)/‖cx+d‖²
    """
    _, u, v, _ = spaces(E.n)
    fx, fy = _PointFrame(M, x), _PointFrame(M, y)
    z = fx.phi - fy.phi
    if z.is_zero() or (x - y).is_zero():
        raise ConformalError("x と y が一致しています")
    lhs = E.evaluate_exact(z.vector_coords())
    u_images = linear_images(fy.B_rev / fy.N, fy.B, u)
    v_images = linear_images(fx.B_rev / fx.N, fx.B, v)
    mid = E.evaluate_exact((x - y).vector_coords()).map(
        lambda p: p.substitute(u, u_images).substitute(v, v_images)
    )
    left = _inverse_weight(fy.B_rev, E.n)
    right = _inverse_weight(fx.B, E.n)
    rhs = (left * mid * right).scale(M.pdet)
    return Residual.between(lhs, rhs)


def kernel_conformal_check(E: KernelEk, M: VahlenMatrix, pairs: Iterable[Tuple[Multivector, Multivector]]) -> Residual:
    return _over_points("kernel-conformal", lambda xy: kernel_point_residual(E, M, *xy), pairs)
