from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import ConformalError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT
from src.models.clifford.versor import Versor
from src.models.conformal.intertwining import (
    dilation_Pk_residual,
    dirac_conformal_check,
    intertwine_Pk_check,
    inversion_Pk_residual,
    inversion_Rk_residual,
    kernel_point_residual,
    reflection_Pk_residual,
    reflection_Rk_residual,
    translation_Pk_residual,
)
from src.models.conformal.sampling import default_sample_count, rational_points
from src.models.conformal.vahlen import (
    J1,
    JM1,
    MobiusAction,
    U_transform,
    VahlenMatrix,
    compose,
    dilation,
    inversion,
    mobius_apply,
    reflection,
    translation,
    u_transform,
    weight_J,
)
from src.models.harness.conformal_checks import harmonic_samples, monogenic_samples, sample_matrices, sample_versors
from src.models.quadrature.integral_formulas import ShiftedInversion
from src.models.rarita_schwinger.kernel_ek import build_Ek

N = 3


def _vec(*coords):
    return Multivector.vector(N, [Fraction(c) for c in coords])


def _one():
    return Multivector.scalar(N, 1)


def _zero():
    return Multivector.zero(N)


def test_identity_is_vahlen():
    M = VahlenMatrix(_one(), _zero(), _zero(), _one())
    assert M.pdet == 1
    assert M.epsilon == 1
    assert mobius_apply(M, _vec(1, 2, 3)) == _vec(1, 2, 3)


def test_invalid_matrix_is_rejected():
    """擬行列式 0 の行列や、Clifford 群に属さない成分は拒否する"""
    with pytest.raises(ConformalError):
        VahlenMatrix(_one(), _one(), _one(), _one())
    mixed = Multivector(N, {0: 1, 0b001: 1, 0b011: 1})
    with pytest.raises(ConformalError):
        VahlenMatrix(mixed, _zero(), _zero(), _one())


def test_elementary_transformations():
    x = _vec(1, 2, 2)
    assert mobius_apply(translation([1, 0, -1]), x) == _vec(2, 2, 1)
    assert mobius_apply(dilation(N, 2), x) == x.scale(4)
    # x^{-1} = −x/‖x‖²
    assert mobius_apply(inversion(N), x) == x.scale(Fraction(-1, 9))
    assert mobius_apply(reflection(Versor(N, [Multivector.basis(N, 1)])), x) == _vec(-1, 2, 2)


def test_signs():
    """pdet と ε = pdet·(−1)^parity"""
    inv = inversion(N)
    assert inv.pdet == -1
    assert inv.epsilon == -1 * (-1) ** inv.parity
    refl = reflection(Versor(N, [Multivector.basis(N, 1)]))
    assert refl.pdet == 1
    assert refl.parity == 1
    assert refl.epsilon == -1
    assert translation([1, 2, 3]).epsilon == 1


@pytest.mark.parametrize("name", ["reflection", "inversion", "translation", "dilation", "general"])
def test_iwasawa_evaluation_agrees(name):
    """MobiusAction (分解による評価) と (ax+b)(cx+d)^{-1} が一致する"""
    M = sample_matrices(N)[name]
    action = MobiusAction(M)
    for x in rational_points(N, 6, seed=3, accept=lambda p: not M.denominator(p).is_zero()):
        assert action.apply(x) == mobius_apply(M, x)


def test_composition_is_matrix_product():
    M1, M2 = translation([1, 0, 0]), inversion(N)
    M = compose(M1, M2)
    for x in rational_points(N, 5, seed=11):
        assert mobius_apply(M, x) == mobius_apply(M1, mobius_apply(M2, x))


def test_u_and_U_are_inverse():
    M = sample_matrices(N)["general"]
    x = _vec(Fraction(1, 2), 1, -1)
    w = _vec(2, -1, 3)
    assert U_transform(M, x, u_transform(M, x, w)) == w


def test_weights():
    """平行移動では J_1 = J_{−1} = 1、反転では J_1 = x/‖x‖^3"""
    x = _vec(0, 3, 4)
    J = weight_J(translation([1, 1, 1]), x, J1)
    assert J.rational_value() == _one()
    inv = weight_J(inversion(N), x, J1)
    assert inv.rational_value() == x.scale(Fraction(1, 125))
    inv_m1 = weight_J(inversion(N), x, JM1)
    assert inv_m1.rational_value() == x.scale(Fraction(1, 3125))
    with pytest.raises(ConformalError):
        weight_J(translation([1, 1, 1]), x, "J2")


def test_rational_points_are_reproducible():
    a = rational_points(N, 10, seed=5)
    b = rational_points(N, 10, seed=5)
    assert a == b
    assert len(a) == 10
    assert all(not p.is_zero() for p in a)
    far = rational_points(N, 4, seed=5, accept=lambda p: p.norm_squared() > 1)
    assert all(p.norm_squared() > 1 for p in far)
    assert default_sample_count(3, 1) == 2 * 3 * 8


def test_rational_points_give_up():
    with pytest.raises(ConformalError):
        rational_points(N, 3, seed=1, accept=lambda p: False)


@pytest.mark.parametrize("k", [1, 2])
def test_projection_covariance(k):
    """反射・反転・平行移動・拡大に対する P_k の共変性"""
    for f in harmonic_samples(N, k):
        for a in sample_versors(N):
            assert reflection_Pk_residual(f, k, a).is_zero()
        assert inversion_Pk_residual(f, k).is_zero()
        assert translation_Pk_residual(f, k, [1, Fraction(-1, 2), 0]).is_zero()
        assert dilation_Pk_residual(f, k, Fraction(3, 2)).is_zero()


def test_rk_covariance():
    """反射と反転に対する R_k の変換則"""
    for f in monogenic_samples(N, 1):
        for a in sample_versors(N):
            assert reflection_Rk_residual(f, 1, a).is_zero()
        assert inversion_Rk_residual(f, 1).is_zero()


def test_general_matrix_pointwise():
    """一般の Vahlen 行列での P_k と D の共変性 (有理点で厳密)"""
    M = sample_matrices(N)["general"]
    points = rational_points(N, 3, seed=2, accept=lambda p: not M.denominator(p).is_zero())
    f = harmonic_samples(N, 1)[0]
    assert intertwine_Pk_check(M, f, 1, points).exact_zero
    g = monogenic_samples(N, 1)[1]
    assert dirac_conformal_check(M, g, points).exact_zero


def test_kernel_transformation_under_inversion():
    """x = 2e_1, y = 3e_2 での核の変換則"""
    E = build_Ek(N, 1)
    residual = kernel_point_residual(E, inversion(N), _vec(2, 0, 0), _vec(0, 3, 0))
    assert residual.exact_zero
    with pytest.raises(ConformalError):
        kernel_point_residual(E, inversion(N), _vec(2, 0, 0), _vec(2, 0, 0))


def test_shifted_inversion_agrees_with_vahlen_matrix():
    """φ(x) = (x − t)^{-1} は行列 [[0, 1], [1, −t]] の Möbius 変換"""
    t = (0.0, 0.0, 3.0)
    phi = ShiftedInversion(t)
    M = VahlenMatrix(_zero(), _one(), _one(), _vec(0, 0, -3))
    x = _vec(Fraction(1, 2), Fraction(1, 3), 0)
    point = np.array([float(c) for c in x.vector_coords()])
    assert np.allclose(phi.phi(point), [float(c) for c in mobius_apply(M, x).vector_coords()])
    J = weight_J(M, x, J1).to_float()
    expected = phi.J1(point)
    for mask in range(8):
        assert J[mask] == pytest.approx(expected[mask], abs=1e-14)
    assert expected.mode == FLOAT
