"""
S^{n-1} 上の積型 Gauss 求積

超球座標 x_1 = cos θ_1, x_2 = sin θ_1 cos θ_2, ..., x_n = sin θ_1 ... sin θ_{n-2} sin φ。
θ_j は t = cos θ_j の Gauss-Jacobi (α = β = (n−2−j)/2)、φ は 2q 点の台形則。
q 点の各則は次数 2q−1 まで厳密なので、積則も同じ次数まで厳密。
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from src.core.errors import QuadratureError
from src.core.logger import get_logger
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT


@dataclass(frozen=True)
class SphereRule:
    n: int
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return len(self.weights)


def _polar_rule(alpha: float, q: int):
    if alpha == 0:
        return special.roots_legendre(q)
    return special.roots_jacobi(q, alpha, alpha)


@lru_cache(maxsize=None)
def build_sphere_rule(n: int, q: int) -> SphereRule:
    if n < 2:
        raise QuadratureError(f"球面の求積には n ≥ 2 が必要です: {n}")
    if q < 1:
        raise QuadratureError(f"次数 q は 1 以上が必要です: {q}")
    phi = np.arange(2 * q) * np.pi / q
    # 最内の角度 φ から始めて、外側の θ_j の座標を先頭に足していく
    nodes = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    weights = np.full(2 * q, np.pi / q)
    for j in range(n - 2, 0, -1):
        t, w = _polar_rule((n - 2 - j) / 2, q)
        s = np.sqrt(1.0 - t ** 2)
        m = len(weights)
        nodes = np.hstack([np.repeat(t, m)[:, None], np.repeat(s, m)[:, None] * np.tile(nodes, (q, 1))])
        weights = np.repeat(w, m) * np.tile(weights, q)
    rule = SphereRule(n, q, nodes, weights)
    get_logger().debug("球面求積則を構成しました", n=n, order=q, nodes=rule.size)
    return rule


def integrate_surface(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    center,
    radius: float,
    rule: SphereRule,
) -> np.ndarray:
    """
    ∫_{∂B(center, radius)} f dS

    f は (点 (N, n), 外向き単位法線 (N, n)) を受け取り、先頭軸が N の配列を返す。
    """
    center = np.asarray(center, dtype=float)
    points = center + radius * rule.nodes
    values = np.asarray(f(points, rule.nodes), dtype=float)
    if values.shape[0] != rule.size:
        raise QuadratureError(f"被積分関数の値の個数 {values.shape[0]} がノード数 {rule.size} と一致しません")
    if not np.all(np.isfinite(values)):
        raise QuadratureError("球面上で被積分関数が有限ではありません")
    return np.tensordot(rule.weights * radius ** (rule.n - 1), values, axes=1)


def integrate_surface_mv(f, center, radius: float, rule: SphereRule) -> Multivector:
    """f がブレード係数 (N, 2^n) を返すときの Multivector 版"""
    coeffs = integrate_surface(f, center, radius, rule)
    return Multivector(rule.n, {m: float(c) for m, c in enumerate(coeffs)}, FLOAT)
