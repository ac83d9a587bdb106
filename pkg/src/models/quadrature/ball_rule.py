"""
球体 B(c, R) 上の体積積分

通常の被積分関数は動径 Gauss-Jacobi (重み r^{n-1}) と球面則の積で積分する。
y で弱特異な被積分関数は y を中心とする極座標 x = y + ρω に切り替え、
ρ 方向を y に向かって幾何的に細分して各区間で Gauss-Legendre を使う。
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special

from src.core.errors import QuadratureError
from src.models.quadrature.sphere_rule import SphereRule

DEFAULT_LEVELS = 8
DEFAULT_RATIO = 0.25


@dataclass(frozen=True)
class BallRule:
    sphere: SphereRule
    radial_nodes: np.ndarray
    radial_weights: np.ndarray

    @property
    def n(self) -> int:
        return self.sphere.n


def build_ball_rule(sphere: SphereRule, q: Optional[int] = None) -> BallRule:
    """[−1, 1] 上の重み (1+t)^{n−1} の Gauss-Jacobi。r = (1+t)/2 で単位区間へ写す"""
    q = q or sphere.order
    t, w = special.roots_jacobi(q, 0.0, float(sphere.n - 1))
    return BallRule(sphere, (1.0 + t) / 2.0, w / 2.0 ** sphere.n)


def _check(values: np.ndarray, expected: int) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape[0] != expected:
        raise QuadratureError(f"被積分関数の値の個数 {values.shape[0]} がノード数 {expected} と一致しません")
    if not np.all(np.isfinite(values)):
        raise QuadratureError("被積分関数が有限ではありません")
    return values


def ball_points(rule: BallRule, center, radius: float):
    """通常の積則のノード (N, n) と重み (N,)"""
    center = np.asarray(center, dtype=float)
    r = rule.radial_nodes * radius
    points = center + (r[:, None, None] * rule.sphere.nodes[None, :, :]).reshape(-1, rule.n)
    weights = (rule.radial_weights[:, None] * rule.sphere.weights[None, :]).reshape(-1) * radius ** rule.n
    return points, weights


def singular_ball_points(
    rule: BallRule,
    center,
    radius: float,
    singular: Sequence[float],
    levels: int = DEFAULT_LEVELS,
    ratio: float = DEFAULT_RATIO,
):
    """
    y = singular を中心とする極座標でのノードと重み

    ω 方向の境界までの距離は ρ(ω) = −⟨ω, y−c⟩ + √(⟨ω, y−c⟩² − (‖y−c‖² − R²))。
    [0, ρ(ω)] を ratio^m で幾何分割し、各区間に q 点の Gauss-Legendre を置く。
    """
    center = np.asarray(center, dtype=float)
    y = np.asarray(singular, dtype=float)
    offset = y - center
    gap = float(offset @ offset) - radius ** 2
    if gap >= 0:
        raise QuadratureError("特異点が球体の内部にありません")
    omega = rule.sphere.nodes
    proj = omega @ offset
    rho_max = -proj + np.sqrt(proj ** 2 - gap)
    t, w = special.roots_legendre(rule.sphere.order)
    # 単位区間 [0, 1] 上の細分: [ratio^{m+1}, ratio^m] と最後の [0, ratio^levels]
    edges = [ratio ** m for m in range(levels + 1)] + [0.0]
    s_nodes, s_weights = [], []
    for hi, lo in zip(edges[:-1], edges[1:]):
        half = (hi - lo) / 2.0
        s_nodes.append(lo + half * (t + 1.0))
        s_weights.append(half * w)
    s = np.concatenate(s_nodes)
    sw = np.concatenate(s_weights)
    rho = s[:, None] * rho_max[None, :]
    points = y + (rho[:, :, None] * omega[None, :, :]).reshape(-1, rule.n)
    jac = sw[:, None] * rho_max[None, :] * rho ** (rule.n - 1)
    weights = (jac * rule.sphere.weights[None, :]).reshape(-1)
    return points, weights


def integrate_ball(
    f: Callable[[np.ndarray], np.ndarray],
    center,
    radius: float,
    rule: BallRule,
    singular: Optional[Sequence[float]] = None,
    refine: bool = True,
    levels: int = DEFAULT_LEVELS,
) -> np.ndarray:
    """
    ∫_{B(center, radius)} f dx

    singular に内部の特異点を渡すと極座標の細分を使う。refine=False で特異点が
    内部にあればエラー。
    """
    if singular is not None:
        offset = np.asarray(singular, dtype=float) - np.asarray(center, dtype=float)
        inside = float(offset @ offset) < radius ** 2
        if inside and not refine:
            raise QuadratureError("球体の内部に特異点があります。refine=True が必要です")
        if inside:
            points, weights = singular_ball_points(rule, center, radius, singular, levels)
            return np.tensordot(weights, _check(f(points), len(weights)), axes=1)
    points, weights = ball_points(rule, center, radius)
    return np.tensordot(weights, _check(f(points), len(weights)), axes=1)
