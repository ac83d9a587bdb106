"""
hypothesis 用の生成器: 小さな整数係数の Multivector と多項式
"""

from hypothesis import strategies as st

from src.models.clifford.multivector import Multivector
from src.models.poly.mpoly import MPoly
from src.models.poly.var_space import VarSpace

coefficients = st.integers(min_value=-4, max_value=4)


def multivectors(n: int = 3):
    return st.dictionaries(st.integers(0, (1 << n) - 1), coefficients, max_size=4).map(
        lambda terms: Multivector(n, terms)
    )


def vectors(n: int = 3, nonzero: bool = False):
    coords = st.lists(coefficients, min_size=n, max_size=n)
    if nonzero:
        coords = coords.filter(any)
    return coords.map(lambda c: Multivector.vector(n, c))


def polynomials(n: int = 3, space_name: str = "x", max_degree: int = 3):
    """space の変数について次数 max_degree 以下の Clifford 値多項式"""
    space = VarSpace(space_name, n)
    exps = st.lists(st.integers(0, max_degree), min_size=n, max_size=n).filter(lambda e: sum(e) <= max_degree)
    term = st.tuples(exps, st.integers(0, (1 << n) - 1), coefficients)

    def build(terms):
        p = MPoly.zero(n)
        for e, mask, c in terms:
            p = p + MPoly.monomial(space, e, Multivector(n, {mask: c}))
        return p

    return st.lists(term, min_size=1, max_size=4).map(build)
