"""
積分公式の数値検証

Ω は単位球体。境界積分は球面則、体積積分は球体則 (特異点 y のまわりは極座標の細分) で
評価し、u / v についての pairing は球面平均で厳密に計算する。
再生核は K_k = −E_k で、pairing を球面平均で正規化しているので ω_n を掛けて使う。
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.core.errors import QuadratureError
from src.core.logger import get_logger
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT
from src.models.monogenic.almansi_fischer import projection_Pk, right_projection_Pk
from src.models.monogenic.basis import P_sigma, sigmas
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.sphere import omega
from src.models.poly.var_space import VarSpace, spaces
from src.models.quadrature.ball_rule import BallRule, ball_points, build_ball_rule, singular_ball_points
from src.models.quadrature.fields import (
    NodeField,
    Source,
    apply_operator,
    coefficient_gap,
    evaluate_on_nodes,
    from_callable,
    integrate_pairing,
    integrate_pairing_chunked,
    left_vector_product,
    right_vector_product,
)
from src.models.quadrature.sphere_rule import SphereRule, build_sphere_rule
from src.models.rarita_schwinger.kernel_ek import KernelEk
from src.models.rarita_schwinger.operator import RSFunction, apply_Rk
from src.models.residual import Residual, worst

MIN_VOLUME_ORDER = 8
INTERIOR_POINT = 0.2
EXTERIOR_DISTANCE = 3.0
SINGULARITY_DISTANCE = 2.0


def axis_point(n: int, value: float, axis: int = -1) -> np.ndarray:
    point = np.zeros(n)
    point[axis] = value
    return point


@dataclass(frozen=True)
class QuadratureSetup:
    """単位球体 Ω 上の積分に使う求積則"""

    n: int
    k: int
    order: int

    @property
    def volume_order(self) -> int:
        return max(MIN_VOLUME_ORDER, self.order // 2)

    @property
    def sphere(self) -> SphereRule:
        return build_sphere_rule(self.n, self.order)

    @property
    def ball(self) -> BallRule:
        return build_ball_rule(build_sphere_rule(self.n, self.volume_order))

    def boundary(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """単位球面のノード、外向き法線、重み"""
        return self.sphere.nodes, self.sphere.nodes, self.sphere.weights

    def volume(self, y: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        if y is not None and float(np.dot(y, y)) < 1.0:
            return singular_ball_points(self.ball, np.zeros(self.n), 1.0, y)
        return ball_points(self.ball, np.zeros(self.n), 1.0)


# ノード上の場


def field_source(p, shift: Optional[np.ndarray] = None, scale: float = 1.0) -> Source:
    """x ↦ p(x − shift) をノードで評価する場"""
    x = VarSpace("x", p.n)

    def source(points: np.ndarray) -> NodeField:
        moved = points if shift is None else points - shift
        return evaluate_on_nodes(p, moved, x).scale(scale)

    return source


def kernel_source(E: KernelEk, y: np.ndarray) -> Source:
    """x ↦ K_k(x − y, u, v)"""
    return field_source(E.F_prime, y, E.cauchy_scale())


def translated_solution(E: KernelEk, w0: Sequence, target: VarSpace, slot: str = "left") -> RadialRational:
    """
    R_k の解として使う核の片側を固定したもの (target の変数の関数)

    left: F′_k(x, w, w0) (左モノジェニック)、right: F′_k(x, w0, w) (右モノジェニック)
    """
    _, u, v, _ = spaces(E.n)
    if slot == "left":
        value, free = E.F_prime.restrict(v, w0), u
    else:
        value, free = E.F_prime.restrict(u, w0), v
    return value.rename(free, target) if free != target else value


def value_at(p, point: Sequence, source: VarSpace, target: VarSpace) -> MPoly:
    """p(point, ·) を float で評価し、残った変数を source から target に付け替える"""
    x = VarSpace("x", p.n)
    if isinstance(p, RadialRational):
        value = p.to_float().evaluate_radical([float(c) for c in point]).value
    else:
        value = p.to_float().restrict(x, [float(c) for c in point])
    return value.rename(source, target) if source != target else value


def _project(field: NodeField, k: int, space: VarSpace, side: str = "left") -> NodeField:
    if side == "left":
        return apply_operator(field, lambda p: projection_Pk(p, k, space, check=False))
    return apply_operator(field, lambda p: right_projection_Pk(p, k, space, check=False))


def boundary_cauchy_term(E: KernelEk, f: Source, y: np.ndarray, setup: QuadratureSetup) -> MPoly:
    """ω_n ∫_{∂Ω} (K_k(x−y, u, v), P_k dσ_x f(x, v))_v"""
    v = VarSpace("v", E.n)
    points, _, weights = setup.boundary()

    # 単位球面では外向き法線はノードそのもの
    def projected_flux(nodes: np.ndarray) -> NodeField:
        return _project(left_vector_product(nodes, f(nodes)), E.k, v)

    return integrate_pairing_chunked(kernel_source(E, y), projected_flux, points, weights * omega(E.n), v)


def volume_kernel_term(E: KernelEk, g: Source, y: np.ndarray, setup: QuadratureSetup) -> MPoly:
    """ω_n ∫_Ω (K_k(x−y, u, v), g(x, v))_v dx。y が内部なら極座標で細分する"""
    v = VarSpace("v", E.n)
    points, weights = setup.volume(y)
    return integrate_pairing_chunked(kernel_source(E, y), g, points, weights * omega(E.n), v)


def _relative(value: MPoly, expected: MPoly, label: str) -> Residual:
    diff, rel = coefficient_gap(value, expected)
    get_logger().debug("積分公式の比較", label=label, absolute=diff, relative=rel)
    return Residual.float_gap(rel, f"{label}: 相対誤差 {rel:.3e} (絶対 {diff:.3e})")


def _vanishing(value: MPoly, scale: float, label: str) -> Residual:
    magnitude = value.max_abs() / scale if scale > 0 else value.max_abs()
    get_logger().debug("積分公式の比較", label=label, magnitude=magnitude)
    return Residual.float_gap(magnitude, f"{label}: {magnitude:.3e}")


def _sample_monogenic(space: VarSpace, k: int, index: int = 0) -> MPoly:
    options = sigmas(space.n, k)
    return P_sigma(space, options[min(index, len(options) - 1)])


# Cauchy の積分公式


def cif_residual(E: KernelEk, f: Source, expected: MPoly, y: np.ndarray, setup: QuadratureSetup, label: str) -> Residual:
    value = boundary_cauchy_term(E, f, np.asarray(y, dtype=float), setup)
    if expected.is_zero():
        return _vanishing(value, 1.0, label)
    return _relative(value, expected, label)


def cif_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """
    f(y, u) = ω_n ∫_{∂Ω} (K_k(x−y, u, v), P_k dσ_x f(x, v))_v

    x に依らない f = P_σ(v) (y = 0 と Ω の外の y)、および Ω の外に特異点をもつ
    平行移動した核の二通りで確かめる。
    """
    n, k = E.n, E.k
    _, u, v, _ = spaces(n)
    p_v = _sample_monogenic(v, k)
    p_u = _sample_monogenic(u, k)
    y_in = axis_point(n, INTERIOR_POINT, axis=0)
    y_out = axis_point(n, EXTERIOR_DISTANCE)
    z0 = axis_point(n, SINGULARITY_DISTANCE)
    v0 = axis_point(n, 1.0, axis=0)
    solution = translated_solution(E, [int(c) for c in v0], v)
    scale = E.cauchy_scale()
    results = [
        cif_residual(E, field_source(p_v), p_u, np.zeros(n), setup, "P_σ, y=0"),
        cif_residual(E, field_source(p_v), MPoly.zero(n, FLOAT), y_out, setup, "P_σ, y∉Ω"),
        cif_residual(
            E,
            field_source(solution, z0, scale),
            value_at(solution, y_in - z0, v, u).scale(scale),
            y_in,
            setup,
            "平行移動した核",
        ),
    ]
    return worst(results)


# Cauchy の定理


def cauchy_pairing(g: Source, f: Source, k: int, n: int, setup: QuadratureSetup) -> Tuple[MPoly, float]:
    """∫_{∂Ω} (g(x, u), P_k dσ_x f(x, u))_u と、その大きさの目安"""
    u = VarSpace("u", n)
    points, normals, weights = setup.boundary()
    g_nodes = g(points)
    pnf = _project(left_vector_product(normals, f(points)), k, u)
    value = integrate_pairing(g_nodes, pnf, weights, u)
    scale = np.abs(g_nodes.values).max(initial=0.0) * np.abs(pnf.values).max(initial=0.0) * weights.sum()
    return value, float(scale)


def cauchy_theorem_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """
    g が右の解、f が左の解なら ∫_{∂Ω} (g, P_k dσ_x f)_u = 0

    g は x に依らない P̃_σ(u) と、Ω の外に特異点をもつ右側の核の二通り。
    """
    n, k = E.n, E.k
    u = VarSpace("u", n)
    z0 = axis_point(n, SINGULARITY_DISTANCE)
    z1 = axis_point(n, -SINGULARITY_DISTANCE)
    w0 = [int(c) for c in axis_point(n, 1.0, axis=0)]
    scale = E.cauchy_scale()
    f = field_source(translated_solution(E, w0, u), z0, scale)
    cases = {
        "P̃_σ": field_source(_sample_monogenic(u, k).reversion()),
        "右側の核": field_source(translated_solution(E, w0, u, "right"), z1, scale),
    }
    results = []
    for label, g in cases.items():
        value, size = cauchy_pairing(g, f, k, n, setup)
        results.append(_vanishing(value, size, label))
    return worst(results)


# Stokes の定理


def _stokes_pair(n: int) -> Tuple[MPoly, MPoly]:
    x = VarSpace("x", n)

    def term(exps, *blade) -> MPoly:
        mono = MPoly.monomial(x, list(exps) + [0] * (n - len(exps)))
        return mono.left_mul(Multivector.basis(n, *blade)) if blade else mono

    tail = [0] * (n - 1)
    g = term([2], 1) + term([1, 1]) + term(tail + [1], 2, n)
    f = term([1, 1], 2) + term(tail + [2], 1, 2) + term([0, 3])
    return g, f


def stokes_check(n: int, setup: QuadratureSetup) -> Residual:
    """Clifford-Stokes: ∫_{∂Ω} g dσ_x f = ∫_Ω (g D) f + g (D f) dx"""
    x = VarSpace("x", n)
    g, f = _stokes_pair(n)
    points, normals, weights = setup.boundary()
    boundary = integrate_pairing(field_source(g)(points), left_vector_product(normals, field_source(f)(points)), weights, None)
    vpoints, vweights = setup.volume()
    gd = g.dirac(x, "right")
    df = f.dirac(x, "left")
    volume = integrate_pairing(field_source(gd)(vpoints), field_source(f)(vpoints), vweights, None) + integrate_pairing(
        field_source(g)(vpoints), field_source(df)(vpoints), vweights, None
    )
    return _relative(boundary, volume, "Stokes")


def _rs_pair(n: int, k: int) -> Tuple[MPoly, MPoly]:
    """u について右 / 左モノジェニックで、x に多項式で依存する g, f"""
    x, u, _, _ = spaces(n)
    x1 = MPoly.variable(x, 1)
    x2 = MPoly.variable(x, 2)
    xn = MPoly.variable(x, n)
    p1 = _sample_monogenic(u, k, 0)
    p2 = _sample_monogenic(u, k, 1)
    f = x1 * p1 + (x2 * x2) * p2
    g = x2 * p1.reversion() + (x1 * xn) * p2.reversion()
    return g, f


def rs_stokes_check(n: int, k: int, setup: QuadratureSetup) -> Residual:
    """
    ∫_{∂Ω} (g dσ_x f)_u = ∫_Ω (g R_k, f)_u + (g, R_k f)_u dx
    = ∫_{∂Ω} (g, P_k dσ_x f)_u = ∫_{∂Ω} (g dσ_x P_k, f)_u
    """
    u = VarSpace("u", n)
    g, f = _rs_pair(n, k)
    g_rk = apply_Rk(RSFunction(g, k, "right", "u")).body
    rk_f = apply_Rk(RSFunction(f, k, "left", "u")).body
    points, normals, weights = setup.boundary()
    g_nodes = field_source(g)(points)
    nf = left_vector_product(normals, field_source(f)(points))
    plain = integrate_pairing(g_nodes, nf, weights, u)
    projected = integrate_pairing(g_nodes, _project(nf, k, u), weights, u)
    gn = _project(right_vector_product(g_nodes, normals), k, u, "right")
    projected_right = integrate_pairing(gn, field_source(f)(points), weights, u)
    vpoints, vweights = setup.volume()
    volume = integrate_pairing(field_source(g_rk)(vpoints), field_source(f)(vpoints), vweights, u) + integrate_pairing(
        field_source(g)(vpoints), field_source(rk_f)(vpoints), vweights, u
    )
    return worst(
        [
            _relative(plain, volume, "境界 = 体積"),
            _relative(plain, projected, "P_k dσ f"),
            _relative(plain, projected_right, "g dσ P_k"),
        ]
    )


# Borel-Pompeiu と T_k


def borel_pompeiu_residual(E: KernelEk, f: MPoly, y: np.ndarray, setup: QuadratureSetup, label: str) -> Residual:
    """f(y, u) = ω_n ∫_{∂Ω} (K, P_k dσ_x f)_v − ω_n ∫_Ω (K, R_{k,v} f)_v dx"""
    _, u, v, _ = spaces(E.n)
    rk_f = apply_Rk(RSFunction(f, E.k, "left", "v")).body
    boundary = boundary_cauchy_term(E, field_source(f), y, setup)
    volume = volume_kernel_term(E, field_source(rk_f), y, setup)
    return _relative(boundary - volume, value_at(f, y, v, u), label)


def borel_pompeiu_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """解ではない f = (1 + x_1) P_σ(v) で、y = 0 と y = (1/5, 0, ...)"""
    n = E.n
    x, _, v, _ = spaces(n)
    f = MPoly.variable(x, 1) * _sample_monogenic(v, E.k) + _sample_monogenic(v, E.k)
    return worst(
        [
            borel_pompeiu_residual(E, f, np.zeros(n), setup, "y=0"),
            borel_pompeiu_residual(E, f, axis_point(n, INTERIOR_POINT, axis=0), setup, "y 内点"),
        ]
    )


def bump(n: int) -> MPoly:
    """(1 − ‖x‖²)³。Ω の外に 0 で延長すると C²"""
    x = VarSpace("x", n)
    return (MPoly.constant(1, n) - MPoly.radius_squared(x)) ** 3


def bump_test_function(n: int, k: int) -> MPoly:
    """ψ(x, v) = (1 − ‖x‖²)³ P_σ(v)"""
    return bump(n) * _sample_monogenic(VarSpace("v", n), k)


def tk_apply(E: KernelEk, psi: Source, y: np.ndarray, setup: QuadratureSetup) -> MPoly:
    """(T_k ψ)(y, u) = −ω_n ∫_Ω (K_k(x−y, u, v), ψ(x, v))_v dx"""
    return -volume_kernel_term(E, psi, y, setup)


def tk_delta_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """T_k R_k ψ = ψ (台が Ω に含まれる ψ では境界項が消えた Borel-Pompeiu)"""
    n = E.n
    _, u, v, _ = spaces(n)
    psi = bump_test_function(n, E.k)
    rk_psi = apply_Rk(RSFunction(psi, E.k, "left", "v")).body
    y = axis_point(n, INTERIOR_POINT, axis=0)
    value = tk_apply(E, field_source(rk_psi), y, setup)
    return _relative(value, value_at(psi, y, v, u), "T_k R_k ψ")


def tk_inverse_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """
    R_k T_k ψ = ψ

    ψ は 0 延長で C² なので ∂_{y_j} T_k ψ = T_k ∂_j ψ。R_k T_k ψ = P_{k,u} Σ_j e_j T_k ∂_j ψ。
    """
    n, k = E.n, E.k
    x, u, v, _ = spaces(n)
    psi = bump_test_function(n, k)
    y = axis_point(n, INTERIOR_POINT, axis=0)
    total = MPoly.zero(n, FLOAT)
    for j in range(1, n + 1):
        part = tk_apply(E, field_source(psi.partial_derivative(x, j)), y, setup)
        total = total + part.left_mul(Multivector.basis(n, j, mode=FLOAT))
    value = projection_Pk(total, k, u, check=False)
    return _relative(value, value_at(psi, y, v, u), "R_k T_k ψ")


# 共形変換した解


@dataclass(frozen=True)
class ShiftedInversion:
    """
    φ(x) = (x − t)^{-1}。Vahlen 行列 [[0, 1], [1, −t]] で cx+d = x − t はベクトル

    J_1(x) = (x−t)/‖x−t‖^n、U(x, w) = (x−t) w (x−t)/‖x−t‖² = w − 2⟨x−t, w⟩(x−t)/‖x−t‖²
    """

    t: Tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.t)

    def _b(self, point: np.ndarray) -> Tuple[np.ndarray, float]:
        b = np.asarray(point, dtype=float) - np.asarray(self.t, dtype=float)
        N = float(b @ b)
        if N == 0:
            raise QuadratureError("φ の特異点です")
        return b, N

    def phi(self, point: np.ndarray) -> np.ndarray:
        b, N = self._b(point)
        return -b / N

    def J1(self, point: np.ndarray) -> Multivector:
        b, N = self._b(point)
        return Multivector.vector(self.n, b / N ** (self.n / 2), FLOAT)

    def U_images(self, point: np.ndarray, space: VarSpace):
        b, N = self._b(point)
        inner = MPoly.zero(self.n, FLOAT)
        for j in range(self.n):
            inner = inner + MPoly.variable(space, j + 1, FLOAT).scale(float(b[j]))
        return [MPoly.variable(space, i + 1, FLOAT) - inner.scale(2 * b[i] / N) for i in range(self.n)]

    def transform(self, f: MPoly, point: np.ndarray, target: VarSpace) -> MPoly:
        """J_1(x) f(φ(x), U(x, w)) を target = w の多項式として返す (f は u について)"""
        x, u, _, _ = spaces(self.n)
        moved = f.to_float().restrict(x, list(self.phi(point)))
        if target != u:
            moved = moved.rename(u, target)
        return moved.substitute(target, self.U_images(point, target)).left_mul(self.J1(point))


def transformed_source(phi: ShiftedInversion, f: MPoly, target: VarSpace, reverse: bool = False) -> Source:
    def source(points: np.ndarray) -> NodeField:
        def one(point: np.ndarray) -> MPoly:
            value = phi.transform(f, point, target)
            return value.reversion() if reverse else value

        return from_callable(phi.n, points, one)

    return source


def default_inversion(n: int) -> ShiftedInversion:
    return ShiftedInversion(tuple(axis_point(n, EXTERIOR_DISTANCE)))


def cif_conformal_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """共形変換した解 J_1 f(φ(x), U) も Cauchy の積分公式で再現される"""
    n, k = E.n, E.k
    _, u, v, _ = spaces(n)
    phi = default_inversion(n)
    f = _sample_monogenic(u, k)
    y = axis_point(n, INTERIOR_POINT, axis=0)
    expected = phi.transform(f, y, u)
    return cif_residual(E, transformed_source(phi, f, v), expected, y, setup, "共形変換した解")


def cauchy_theorem_conformal_check(E: KernelEk, setup: QuadratureSetup) -> Residual:
    """左の解 J_1 f(φ(x), U) と、別の解の反転 (右の解) で Cauchy の定理が成り立つ"""
    n, k = E.n, E.k
    u = VarSpace("u", n)
    phi = default_inversion(n)
    f = _sample_monogenic(u, k, 0)
    g = _sample_monogenic(u, k, 1)
    value, size = cauchy_pairing(
        transformed_source(phi, g, u, reverse=True), transformed_source(phi, f, u), k, n, setup
    )
    return _vanishing(value, size, "共形変換した解")
