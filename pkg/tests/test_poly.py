from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from src.core.errors import NotDivisibleError, PolyError, SingularPointError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.radical import RadicalScaled
from src.models.poly.sandwich import linear_images, xux_images
from src.models.poly.sphere import omega, pairing, sphere_mean, sphere_moment
from src.models.poly.var_space import VarSpace, spaces
from tests.strategies import polynomials

X, U, V, W = spaces(3)


def _var(space, i):
    return MPoly.variable(space, i)


@given(polynomials())
def test_dirac_square_is_minus_laplacian(p):
    """D² = −Δ (左右とも)"""
    assert p.dirac(X).dirac(X) == -p.laplacian(X)
    assert p.dirac(X, "right").dirac(X, "right") == -p.laplacian(X)


@given(polynomials(max_degree=2))
def test_divide_by_r2_inverts_multiplication(p):
    """(‖x‖² p) / ‖x‖² = p"""
    assert (MPoly.radius_squared(X) * p).divide_by_r2(X) == p


def test_divide_by_r2_rejects_remainder():
    with pytest.raises(NotDivisibleError):
        _var(X, 1).divide_by_r2(X)


def test_euler_scales_homogeneous_parts():
    """Euler 作用素は斉次 d 次の部分を d 倍する"""
    p = _var(X, 1) ** 2 * _var(X, 2) + _var(X, 3) + MPoly.constant(5, 3)
    expected = (_var(X, 1) ** 2 * _var(X, 2)).scale(3) + _var(X, 3)
    assert p.euler(X) == expected


def test_simultaneous_substitution():
    """x1 ↔ x2 の同時代入"""
    p = _var(X, 1) ** 2 * _var(X, 2)
    swapped = p.substitute(X, [_var(X, 2), _var(X, 1), _var(X, 3)])
    assert swapped == _var(X, 2) ** 2 * _var(X, 1)


def test_substitution_requires_scalar_images():
    p = _var(X, 1)
    image = _var(X, 1).left_mul(Multivector.basis(3, 1))
    with pytest.raises(PolyError):
        p.substitute(X, [image, _var(X, 2), _var(X, 3)])


def test_rename_and_evaluate():
    """空間の付け替えと全変数の評価"""
    p = MPoly.vector_variable(X)
    assert p.rename(X, U) == MPoly.vector_variable(U)
    assert p.evaluate({"x": [1, 2, 3]}) == Multivector.vector(3, [1, 2, 3])
    with pytest.raises(PolyError):
        (p * MPoly.vector_variable(U)).evaluate({"x": [1, 2, 3]})


def test_homogeneous_part_and_degrees():
    p = _var(U, 1) * _var(U, 2) + _var(U, 3) + _var(X, 1)
    assert p.degrees(U) == {0, 1, 2}
    assert p.homogeneous_part(U, 2) == _var(U, 1) * _var(U, 2)
    assert not p.is_homogeneous(U, 2)


def test_xux_images_match_clifford_sandwich():
    """x u x の成分像は固定点でのサンドイッチ積と一致する"""
    point = [1, 2, -1]
    images = [img.restrict(X, point) for img in xux_images(X, U)]
    x = Multivector.vector(3, point)
    expected = linear_images(x, x, U)
    assert images == expected


def test_sphere_moments():
    """単項式の球面平均: x1² → 1/3、x1² x2² → 1/15、奇数次 → 0"""
    assert sphere_moment((2, 0, 0), 3) == Fraction(1, 3)
    assert sphere_moment((2, 2, 0), 3) == Fraction(1, 15)
    assert sphere_moment((1, 0, 0), 3) == 0
    assert sphere_moment((4, 0, 0), 3) == Fraction(1, 5)
    assert sphere_moment((2, 0, 0), 3, mode="float") == pytest.approx(1 / 3)


def test_sphere_mean_of_radius_is_one():
    """単位球面上で ‖x‖² = 1"""
    for n in (2, 3, 4, 5):
        x = VarSpace("x", n)
        assert sphere_mean(MPoly.radius_squared(x), x) == MPoly.constant(1, n)


def test_omega():
    assert omega(2) == pytest.approx(2 * np.pi)
    assert omega(3) == pytest.approx(4 * np.pi)
    assert omega(4) == pytest.approx(2 * np.pi ** 2)


def test_pairing_keeps_other_variables():
    """(P, Q)_u は v の多項式として残る"""
    P = _var(U, 1)
    Q = _var(U, 1) * _var(V, 2)
    assert pairing(P, Q, U) == _var(V, 2).scale(Fraction(1, 3))
    with pytest.raises(PolyError):
        pairing(P, Q, U, normalized=False)


def test_cauchy_kernel_is_monogenic():
    """x/‖x‖^3 は n = 3 で左右モノジェニック、1/‖x‖ は調和"""
    G = RadialRational(MPoly.vector_variable(X), 3, X, reduce=False)
    assert G.dirac(X).is_zero()
    assert G.dirac(X, "right").is_zero()
    assert G.homogeneity(X) == -2
    newton = RadialRational(MPoly.constant(1, 3), 1, X, reduce=False)
    assert newton.laplacian(X).is_zero()


def test_radial_reduction():
    """‖x‖² x / ‖x‖^5 は x / ‖x‖^3 に約分される"""
    r = RadialRational(MPoly.radius_squared(X) * MPoly.vector_variable(X), 5, X)
    assert r.power == 3
    assert r.numerator == MPoly.vector_variable(X)


def test_radial_addition_requires_same_parity():
    a = RadialRational(MPoly.constant(1, 3), 1, X, reduce=False)
    b = RadialRational(MPoly.constant(1, 3), 2, X, reduce=False)
    with pytest.raises(PolyError):
        a + b


def test_evaluate_radical():
    """1/‖x‖ は (0,3,4) で 1/5、(1,1,0) で √2/2"""
    newton = RadialRational(MPoly.constant(1, 3), 1, X, reduce=False)
    rational = newton.evaluate_radical([0, 3, 4])
    assert rational.rational_value() == MPoly.constant(Fraction(1, 5), 3)
    irrational = newton.evaluate_radical([1, 1, 0])
    assert irrational.rational_value() is None
    assert irrational.magnitude() == pytest.approx(2 ** -0.5)
    with pytest.raises(SingularPointError):
        newton.evaluate_radical([0, 0, 0])


def test_radical_scaled_absorbs_square_factor():
    """√(9/4) は有理数として吸収される"""
    value = RadicalScaled(MPoly.constant(2, 3), Fraction(9, 4))
    assert value.radicand == 1
    assert value.value == MPoly.constant(3, 3)


@pytest.mark.parametrize(
    "value",
    [MPoly.constant(1, 3), Multivector.vector(3, [1, 2, 0])],
    ids=["mpoly", "multivector"],
)
def test_radical_scaled_to_float_keeps_value_type(value):
    """to_float は √R を掛け込み、値の型 (MPoly / Multivector) はそのまま"""
    converted = RadicalScaled(value, 2).to_float()
    assert type(converted) is type(value)
    assert converted.mode == FLOAT
    assert converted == value.to_float().scale(2**0.5)
