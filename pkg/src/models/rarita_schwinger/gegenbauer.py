"""
正規化 Gegenbauer 多項式 P_m^λ (P_m^λ(1) = 1) と c_k を与える積分恒等式

P_m^λ(t) = Σ_i (−m)_i (m+2λ)_i / ((λ+½)_i i!) ((1−t)/2)^i
"""

from fractions import Fraction
from numbers import Rational
from typing import Tuple

import numpy as np
from scipy import special

from src.core.errors import MonogenicError
from src.models.poly.sphere import pochhammer

DEFAULT_NODES = 96


def _is_exact(value) -> bool:
    return isinstance(value, Rational)


def gegenbauer_P(m: int, lam, t):
    """λ と t がともに有理数なら Fraction、そうでなければ float を返す"""
    if m < 0:
        raise MonogenicError(f"次数 m は 0 以上が必要です: {m}")
    if lam <= 0:
        raise MonogenicError(f"λ は正が必要です: {lam}")
    if _is_exact(lam) and _is_exact(t):
        lam, t = Fraction(lam), Fraction(t)
        s = (1 - t) / 2
        return sum(
            (pochhammer(Fraction(-m), i) * pochhammer(m + 2 * lam, i)
             / (pochhammer(lam + Fraction(1, 2), i) * special.factorial(i, exact=True)) * s ** i
             for i in range(m + 1)),
            Fraction(0),
        )
    lam, t = float(lam), np.asarray(t, dtype=float)
    s = (1.0 - t) / 2.0
    total = np.zeros_like(s)
    for i in range(m + 1):
        total = total + special.poch(-m, i) * special.poch(m + 2 * lam, i) / (
            special.poch(lam + 0.5, i) * special.factorial(i)
        ) * s ** i
    return float(total) if total.ndim == 0 else total


def gegenbauer_reference(m: int, lam: float, t):
    """scipy の C_m^λ を C_m^λ(1) で割ったもの"""
    return special.eval_gegenbauer(m, lam, t) / special.eval_gegenbauer(m, lam, 1.0)


def gegenbauer_integral_check(n: int, k: int, nodes: int = DEFAULT_NODES) -> Tuple[float, float]:
    """
    ∫_0^π P_k^λ(1−2cos²θ) sin^{n−2}θ dθ (λ = n/2 − 1) の数値積分と閉形式

    閉形式は Γ(½)Γ(λ+½)/Γ(λ+1) · λ/(λ+k)。比は c_k に等しい。
    """
    if n <= 2:
        raise MonogenicError(f"λ = n/2 − 1 > 0 には n > 2 が必要です: {n}")
    lam = n / 2 - 1
    t, w = special.roots_legendre(nodes)
    theta = (t + 1.0) * np.pi / 2.0
    integrand = gegenbauer_P(k, lam, 1.0 - 2.0 * np.cos(theta) ** 2) * np.sin(theta) ** (n - 2)
    numeric = float(np.pi / 2.0 * np.dot(w, integrand))
    closed = float(special.gamma(0.5) * special.gamma(lam + 0.5) / special.gamma(lam + 1.0) * lam / (lam + k))
    return numeric, closed
