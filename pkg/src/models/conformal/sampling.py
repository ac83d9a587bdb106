"""
恒等式の点ごとの検証に使う有理標本点
"""

from fractions import Fraction
from math import comb
from typing import Callable, List, Optional

import numpy as np

from src.core.errors import ConformalError, SingularPointError
from src.models.clifford.multivector import Multivector

MAX_ATTEMPTS_FACTOR = 20


def default_sample_count(n: int, k: int) -> int:
    """u 側の係数の個数 C(k+n−1, n−1) × ブレード数 2^n の 2 倍"""
    return 2 * comb(k + n - 1, n - 1) * 2 ** n


def rational_points(
    n: int,
    count: int,
    seed: int,
    span: int = 3,
    denominator: int = 7,
    accept: Optional[Callable[[Multivector], bool]] = None,
) -> List[Multivector]:
    """
    各座標が p/q (|p/q| ≤ span, q ≤ denominator) の点を count 個返す

    accept が False を返す点 (特異点など) は捨てて引き直す。
    """
    rng = np.random.default_rng(seed)
    out: List[Multivector] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > MAX_ATTEMPTS_FACTOR * max(count, 1):
            raise ConformalError(f"条件を満たす標本点が {count} 個得られません")
        q = rng.integers(1, denominator + 1, size=n)
        p = rng.integers(-span * q, span * q + 1)
        point = Multivector.vector(n, [Fraction(int(a), int(b)) for a, b in zip(p, q)])
        if point.is_zero():
            continue
        try:
            if accept is not None and not accept(point):
                continue
        except (ConformalError, SingularPointError):
            continue
        out.append(point)
    return out
