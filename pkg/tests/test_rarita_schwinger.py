from fractions import Fraction

import numpy as np
import pytest

from src.core.errors import MonogenicError
from src.models.clifford.multivector import Multivector
from src.models.monogenic.basis import basis_P_sigma, spanning_harmonics
from src.models.poly.mpoly import MPoly
from src.models.poly.sphere import omega
from src.models.poly.var_space import spaces
from src.models.rarita_schwinger.gegenbauer import (
    gegenbauer_integral_check,
    gegenbauer_P,
    gegenbauer_reference,
)
from src.models.rarita_schwinger.kernel_ek import (
    build_Ek,
    left_annihilation_residual,
    right_annihilation_check,
    two_representation_residual,
)
from src.models.monogenic.kernel_zk import build_Zk
from src.models.rarita_schwinger.lemma6 import c_k, lemma6_check
from src.models.rarita_schwinger.operator import RSFunction, apply_Rk, is_annihilated

X, U, V, W = spaces(3)


def test_c_k_values():
    assert c_k(3, 0) == 1
    assert c_k(3, 1) == Fraction(1, 3)
    assert c_k(4, 2) == Fraction(1, 3)
    assert c_k(5, 1) == Fraction(3, 5)
    with pytest.raises(MonogenicError):
        c_k(2, 1)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2)])
def test_lemma6_sphere_mean(n, k):
    """(1/ω_n)∫ h(xux) dS(x) = c_k h(u)"""
    for h in spanning_harmonics(n, k):
        lhs, rhs = lemma6_check(h, n, k)
        assert lhs == rhs


def test_gegenbauer_exact_values():
    """λ = 1/2 では Legendre 多項式 (P_2(1/3) = −1/3)"""
    assert gegenbauer_P(0, Fraction(1, 2), Fraction(1, 3)) == 1
    assert gegenbauer_P(2, Fraction(1, 2), Fraction(1, 3)) == Fraction(-1, 3)
    assert gegenbauer_P(5, Fraction(3, 2), 1) == 1


@pytest.mark.parametrize("m,lam", [(1, 0.5), (3, 1.0), (4, 1.5)])
def test_gegenbauer_matches_scipy(m, lam):
    t = np.linspace(-1.0, 1.0, 9)
    assert np.allclose(gegenbauer_P(m, lam, t), gegenbauer_reference(m, lam, t))


@pytest.mark.parametrize("n,k", [(3, 1), (3, 3), (4, 2), (5, 1)])
def test_gegenbauer_integral_ratio_is_c_k(n, k):
    """数値積分と閉形式が一致し、k = 0 との比が c_k になる"""
    numeric, closed = gegenbauer_integral_check(n, k)
    assert numeric == pytest.approx(closed, rel=1e-10)
    _, closed0 = gegenbauer_integral_check(n, 0)
    assert closed / closed0 == pytest.approx(float(c_k(n, k)))


def test_rs_function_validation():
    u1 = MPoly.variable(U, 1)
    with pytest.raises(MonogenicError):
        RSFunction(u1, 1)
    p = basis_P_sigma(3, 1).elements[(1, 0)]
    with pytest.raises(MonogenicError):
        RSFunction(p, 1, side="middle")
    with pytest.raises(MonogenicError):
        RSFunction(p, 1, space_name="x")


def test_r0_is_dirac():
    """k = 0 では R_0 = D_x"""
    x1, x2 = MPoly.variable(X, 1), MPoly.variable(X, 2)
    f = x1 * x1 * x2 + x2.left_mul(Multivector.basis(3, 1, 3))
    assert apply_Rk(RSFunction(f, 0)).body == f.dirac(X)


def test_rk_annihilates_x_independent_functions():
    for p in basis_P_sigma(3, 2).elements.values():
        assert is_annihilated(RSFunction(p, 2))


def test_rk_result_is_monogenic():
    """R_k f は再び u について k 次モノジェニック (RSFunction の検証を通る)"""
    x1 = MPoly.variable(X, 1)
    for p in basis_P_sigma(3, 1).elements.values():
        out = apply_Rk(RSFunction(x1 * x1 * p, 1))
        assert not out.body.is_zero()
        assert out.k == 1


@pytest.mark.parametrize("k", [0, 1, 2])
def test_fundamental_solution_is_annihilated(k):
    """R_k E_k = 0 (x, u)、E_k R_k = 0 (x, v)、二つの表示が一致する"""
    E = build_Ek(3, k)
    assert E.denominator_power == 3 + 2 * k
    assert left_annihilation_residual(E).is_zero()
    assert right_annihilation_check(E).is_zero()
    assert two_representation_residual(build_Zk(3, k)).is_zero()


def test_kernel_scales():
    E = build_Ek(3, 1)
    assert E.scale() == pytest.approx(3 / (4 * np.pi) ** 2)
    assert E.cauchy_scale() == pytest.approx(-E.scale())
    assert omega(3) ** 2 * float(E.c_k) * E.scale() == pytest.approx(1.0)


def test_float_evaluation_matches_exact():
    """浮動小数点の E_k は厳密な F′_k に scale を掛けたもの"""
    E = build_Ek(3, 1)
    x, u, v = [1, 2, 2], [0, 1, 0], [1, 0, -1]
    exact = E.evaluate_exact(x, u, v).to_float().to_multivector()
    numeric = E.evaluate([float(c) for c in x], [float(c) for c in u], [float(c) for c in v])
    for mask in range(8):
        assert numeric[mask] == pytest.approx(exact[mask] * E.scale(), abs=1e-14)
