"""
ベクトル変数へのサンドイッチ代入 w ↦ a w b の像

代入 (substitute) はスカラー値の像を要求するので、ベクトル w = Σ w_i e_i の像を
成分ごとのスカラー多項式に分解して渡す。
"""

from typing import List, Sequence, Tuple

from src.core.errors import PolyError
from src.models.clifford.multivector import Multivector
from src.models.poly.mpoly import MPoly
from src.models.poly.var_space import VarSpace


def linear_images(left: Multivector, right: Multivector, space: VarSpace) -> List[MPoly]:
    """
    固定の left, right に対する w ↦ left·w·right の成分像

    left·e_i·right がすべてベクトルである必要がある (Clifford 群の元 a と ã など)。
    """
    return combined_images([(left, right)], space)


def combined_images(pairs: Sequence[Tuple[Multivector, Multivector]], space: VarSpace) -> List[MPoly]:
    """w ↦ Σ left·w·right の成分像。和がベクトルになれば個々の項はベクトルでなくてよい"""
    n = space.n
    mode = pairs[0][0].mode
    columns = []
    for i in range(1, n + 1):
        e_i = Multivector.basis(n, i, mode=mode)
        m = Multivector.zero(n, mode)
        for left, right in pairs:
            m = m + left * e_i * right
        if not m.is_vector() and not m.is_zero():
            raise PolyError(f"e_{i} の像がベクトルになりません: {m}")
        columns.append(m.vector_coords())
    images = []
    for j in range(n):
        img = MPoly.zero(n, mode)
        for i in range(n):
            c = columns[i][j]
            if c != 0:
                img = img + MPoly.variable(space, i + 1, mode).scale(c)
        images.append(img)
    return images


def xux_images(x_space: VarSpace, target: VarSpace, mode: str = "exact") -> List[MPoly]:
    """
    x が記号変数のときの u ↦ x u x の成分像 (u は target 空間の変数)

    (xux)_i = ‖x‖² u_i − 2⟨x,u⟩ x_i
    """
    r2 = MPoly.radius_squared(x_space, mode)
    inner = MPoly.zero(x_space.n, mode)
    for j in range(1, x_space.n + 1):
        inner = inner + MPoly.variable(x_space, j, mode) * MPoly.variable(target, j, mode)
    return [
        MPoly.variable(target, i, mode) * r2 - (inner * MPoly.variable(x_space, i, mode)).scale(2)
        for i in range(1, x_space.n + 1)
    ]
