"""
M_k の基底 P_σ と双対系 V′_σ

z_i = u_i + u_1 e_1 e_i (i ≥ 2) は 1 次のモノジェニック多項式。σ = (j_2, ..., j_n) は
各 z_i の個数を表し、P_σ はその多重集合の相異なる並べ方すべてにわたる積の平均。
V′_σ は G′(v) = −v/‖v‖^n の Taylor 係数 (−1)^k/σ! · ∂^σ G′ で、これにより
sphere_mean(V′_σ u P_μ) = δ_{σμ} が成り立つ。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

from src.core.errors import MonogenicError
from src.core.logger import get_logger
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import EXACT
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.sphere import sphere_mean
from src.models.poly.var_space import VarSpace

Sigma = Tuple[int, ...]


def sigmas(n: int, k: int) -> List[Sigma]:
    """Σ j_i = k を満たす (j_2, ..., j_n) を辞書順に列挙する"""

    def rec(slots: int, total: int) -> Iterator[Sigma]:
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in rec(slots - 1, total - first):
                yield (first,) + rest

    if n < 2:
        raise MonogenicError(f"基底は n ≥ 2 で定義されます: {n}")
    return list(rec(n - 1, k))


def basis_size(n: int, k: int) -> int:
    return comb(k + n - 2, n - 2)


def sigma_factorial(sigma: Sigma) -> int:
    result = 1
    for j in sigma:
        result *= factorial(j)
    return result


def z_factor(space: VarSpace, i: int, mode: str = EXACT) -> MPoly:
    """z_i = u_i − u_1 e_1^{-1} e_i = u_i + u_1 e_1 e_i"""
    if not 2 <= i <= space.n:
        raise MonogenicError(f"z_i は 2 ≤ i ≤ n で定義されます: {i}")
    e1ei = Multivector.basis(space.n, 1, i, mode=mode)
    return MPoly.variable(space, i, mode) + MPoly.variable(space, 1, mode).left_mul(e1ei)


def _indices(sigma: Sigma) -> Tuple[int, ...]:
    """σ を添字の多重集合 (2 が j_2 個, 3 が j_3 個, ...) に展開する"""
    out: List[int] = []
    for offset, j in enumerate(sigma):
        out.extend([offset + 2] * j)
    return tuple(out)


def P_sigma(space: VarSpace, sigma: Sigma, mode: str = EXACT) -> MPoly:
    orderings = sorted(set(permutations(_indices(sigma))))
    z = {i: z_factor(space, i, mode) for i in range(2, space.n + 1)}
    total = MPoly.zero(space.n, mode)
    for order in orderings:
        term = MPoly.constant(1, space.n, mode)
        for i in order:
            term = term * z[i]
        total = total + term
    return total / len(orderings)


def G_prime(space: VarSpace, mode: str = EXACT) -> RadialRational:
    """ω_n G = −s/‖s‖^n"""
    return RadialRational(-MPoly.vector_variable(space, mode), space.n, space, reduce=False)


def dual_V_sigma(space: VarSpace, sigma: Sigma, normalized: bool = True, mode: str = EXACT) -> RadialRational:
    """
    ∂^σ G′ (∂_{v_2}^{j_2} ... ∂_{v_n}^{j_n})

    normalized=True なら Taylor 係数 (−1)^k/σ! を掛けた双対元を返す。
    """
    if len(sigma) != space.n - 1:
        raise MonogenicError(f"σ は {space.n - 1} 成分が必要です: {sigma}")
    result = G_prime(space, mode)
    for offset, j in enumerate(sigma):
        for _ in range(j):
            result = result.partial_derivative(space, offset + 2)
    if normalized:
        k = sum(sigma)
        coeff = Fraction((-1) ** k, sigma_factorial(sigma))
        result = result * (coeff if mode == EXACT else float(coeff))
    return result


@dataclass
class MonogenicBasis:
    n: int
    k: int
    space: VarSpace
    elements: Dict[Sigma, MPoly]


@lru_cache(maxsize=None)
def basis_P_sigma(n: int, k: int, space_name: str = "u") -> MonogenicBasis:
    if k < 0:
        raise MonogenicError(f"k は 0 以上が必要です: {k}")
    space = VarSpace(space_name, n)
    elements = {sigma: P_sigma(space, sigma) for sigma in sigmas(n, k)}
    get_logger().debug("モノジェニック基底を構成しました", n=n, k=k, size=len(elements))
    return MonogenicBasis(n, k, space, elements)


def orthonormality_matrix(n: int, k: int) -> Dict[Tuple[Sigma, Sigma], Multivector]:
    """
    sphere_mean(V′_σ(u) u P_μ(u)) を全組 (σ, μ) について返す

    u は単位球面上の点なので、V′_σ の分母 ‖u‖^p は 1 として分子だけを使う。
    """
    basis = basis_P_sigma(n, k)
    space = basis.space
    u = MPoly.vector_variable(space)
    out = {}
    for s in basis.elements:
        v_num = dual_V_sigma(space, s).numerator
        for mu, p_mu in basis.elements.items():
            out[(s, mu)] = sphere_mean(v_num * u * p_mu, space).to_multivector()
    return out


def spanning_harmonics(n: int, k: int, space_name: str = "u") -> List[MPoly]:
    """
    H_k を張る集合: 各単項式 u^β に調和射影を施したもの

    調和射影は Σ_j (−1)^j ‖u‖^{2j} Δ^j h / (4^j j! Π_{i=1..j} (n/2+k−1−i)) を使う。
    """
    space = VarSpace(space_name, n)
    r2 = MPoly.radius_squared(space)
    out = []
    for beta in _exponent_tuples(n, k):
        h = MPoly.monomial(space, beta)
        result = h
        lap = h
        coeff = Fraction(1)
        for j in range(1, k // 2 + 1):
            lap = lap.laplacian(space)
            coeff *= Fraction(-1, 4 * j) / (Fraction(n, 2) + k - 1 - j)
            result = result + (r2 ** j * lap).scale(coeff)
        if not result.is_zero():
            out.append(result)
    return out


def _exponent_tuples(n: int, k: int) -> List[Tuple[int, ...]]:
    if n == 1:
        return [(k,)]
    return [(first,) + rest for first in range(k, -1, -1) for rest in _exponent_tuples(n - 1, k - first)]

