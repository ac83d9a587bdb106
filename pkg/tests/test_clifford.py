from fractions import Fraction

import pytest
from hypothesis import given

from src.core.errors import CliffordError
from src.models.clifford import blade as bl
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import EXACT, FLOAT, coerce, exact_sqrt
from src.models.clifford.versor import Versor, versor_apply
from tests.strategies import multivectors, vectors


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_basis_squares_to_minus_one(n):
    """e_i² = −1"""
    for i in range(1, n + 1):
        e = Multivector.basis(n, i)
        assert e * e == Multivector.scalar(n, -1)


def test_basis_anticommute():
    """e_1 e_2 = −e_2 e_1 = e_12"""
    e1, e2 = Multivector.basis(3, 1), Multivector.basis(3, 2)
    assert e1 * e2 == -(e2 * e1)
    assert e1 * e2 == Multivector(3, {0b011: 1})
    assert bl.blade_product(0b001, 0b010) == (1, 0b011)
    assert bl.blade_product(0b010, 0b001) == (-1, 0b011)


def test_blade_names_and_signs():
    """ブレード名と対合の符号"""
    assert bl.blade_name(0) == "1"
    assert bl.blade_name(0b101) == "e13"
    assert bl.reversion_sign(0b011) == -1
    assert bl.conjugation_sign(0b001) == -1
    assert bl.conjugation_sign(0b011) == -1
    assert bl.involution_sign(0b011) == 1


@given(multivectors(), multivectors(), multivectors())
def test_product_is_associative(a, b, c):
    """Clifford 積の結合律"""
    assert (a * b) * c == a * (b * c)


@given(multivectors(), multivectors())
def test_reversion_and_conjugation_are_anti_automorphisms(a, b):
    """(ab)~ = b̃ ã、(ab)‾ = b̄ ā"""
    assert (a * b).reversion() == b.reversion() * a.reversion()
    assert (a * b).conjugation() == b.conjugation() * a.conjugation()


@given(vectors())
def test_vector_square_is_minus_norm(x):
    """x² = −‖x‖²"""
    assert x * x == Multivector.scalar(3, -x.norm_squared())


@given(vectors(nonzero=True), vectors(nonzero=True))
def test_inverse_of_vector_products(x, y):
    """ベクトルの積は Clifford 群の元で逆元を持つ"""
    g = x * y
    assert g * g.inverse() == Multivector.scalar(3, 1)
    assert x * x.vector_inverse() == Multivector.scalar(3, 1)


def test_inverse_rejects_non_group_element():
    """1 + e_12 + e_3 のような元には逆元を定義しない"""
    m = Multivector(3, {0: 1, 0b011: 1, 0b100: 1})
    with pytest.raises(CliffordError):
        m.inverse()


def test_mode_mixing_is_rejected():
    """exact と float の混在はエラー"""
    a = Multivector.vector(3, [1, 0, 0])
    b = Multivector.vector(3, [1.0, 0.0, 0.0], mode=FLOAT)
    with pytest.raises(CliffordError):
        a + b
    with pytest.raises(CliffordError):
        coerce(0.5, EXACT)


def test_blade_out_of_range():
    """次元に収まらないブレードはエラー"""
    with pytest.raises(CliffordError):
        Multivector(3, {0b1000: 1})
    with pytest.raises(CliffordError):
        Multivector.basis(3, 4)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(2)) is None
    assert exact_sqrt(Fraction(-1)) is None


def test_versor_normalizes_pythagorean_factor():
    """(3, 4, 0) は (3/5, 4/5, 0) に正規化される"""
    a = Versor(3, [Multivector.vector(3, [3, 4, 0])])
    assert a.factors[0] == Multivector.vector(3, [Fraction(3, 5), Fraction(4, 5), 0])
    assert a.parity == 1
    assert a.sign == -1


def test_versor_rejects_irrational_norm():
    """exact モードで ‖y‖ = √2 の因子は正規化できない"""
    with pytest.raises(CliffordError):
        Versor(3, [Multivector.vector(3, [1, 1, 0])])


def test_reflection_by_unit_vector():
    """e_1 による反射は e_1 を反転し、e_2 を保つ"""
    a = Versor(3, [Multivector.basis(3, 1)])
    assert versor_apply(a, Multivector.basis(3, 1)) == -Multivector.basis(3, 1)
    assert versor_apply(a, Multivector.basis(3, 2)) == Multivector.basis(3, 2)


@given(vectors())
def test_versor_apply_preserves_norm(x):
    """a x ã は直交変換"""
    a = Versor(3, [Multivector.vector(3, [Fraction(3, 5), Fraction(4, 5), 0]), Multivector.basis(3, 3)])
    y = a.apply(x)
    assert y.is_vector()
    assert y.norm_squared() == x.norm_squared()
    # 展開した積によるサンドイッチと一致する
    am = a.as_multivector()
    assert y == am * x * am.reversion()
    assert a.parity == 0
