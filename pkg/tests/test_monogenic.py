from math import comb

import pytest

from src.core.errors import MonogenicError
from src.models.clifford.multivector import Multivector
from src.models.monogenic.almansi_fischer import (
    almansi_fischer_split,
    check_harmonic,
    check_monogenic,
    orthogonality_residual,
    projection_Pk,
    right_projection_Pk,
    right_split,
)
from src.models.monogenic.basis import (
    basis_P_sigma,
    basis_size,
    orthonormality_matrix,
    sigmas,
    spanning_harmonics,
    z_factor,
)
from src.models.monogenic.kernel_zk import build_Zk, reproduce, zk_reflection_residual
from src.models.poly.mpoly import MPoly
from src.models.poly.var_space import VarSpace

U3 = VarSpace("u", 3)


def test_sigmas_enumeration():
    """Σ j_i = k の多重指数を辞書順 (降順) で列挙する"""
    assert sigmas(3, 2) == [(2, 0), (1, 1), (0, 2)]
    assert sigmas(3, 0) == [(0, 0)]
    for n, k in [(3, 1), (4, 2), (5, 3)]:
        assert len(sigmas(n, k)) == basis_size(n, k) == comb(k + n - 2, n - 2)


def test_z_factor_is_monogenic():
    for i in (2, 3):
        check_monogenic(z_factor(U3, i), U3, 1)
    with pytest.raises(MonogenicError):
        z_factor(U3, 1)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 1), (4, 2)])
def test_basis_elements_are_left_monogenic(n, k):
    basis = basis_P_sigma(n, k)
    assert len(basis.elements) == basis_size(n, k)
    for p in basis.elements.values():
        check_monogenic(p, basis.space, k)


@pytest.mark.parametrize("n,k", [(3, 0), (3, 1), (3, 2), (4, 1)])
def test_orthonormality(n, k):
    """sphere_mean(V′_σ u P_μ) = δ_{σμ}"""
    for (s, mu), value in orthonormality_matrix(n, k).items():
        assert value == Multivector.scalar(n, 1 if s == mu else 0)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2)])
def test_almansi_fischer_split(n, k):
    """h = p_k + u p_{k−1} で、p_k と p_{k−1} はモノジェニックかつ直交する"""
    u = VarSpace("u", n)
    e1 = Multivector.basis(n, 1)
    for h in spanning_harmonics(n, k):
        for hh in (h, h.right_mul(e1)):
            split = almansi_fischer_split(hh, k, u)
            assert split.reconstruct(u) == hh
            check_monogenic(split.p_k, u, k)
            check_monogenic(split.p_km1, u, k - 1)
            assert orthogonality_residual(split.p_km1, split.p_k, u).is_zero()
            right = right_split(hh, k, u)
            assert right.reconstruct(u) == hh
            check_monogenic(right.p_k, u, k, "right")


def test_projection_is_idempotent():
    for h in spanning_harmonics(3, 2):
        p = projection_Pk(h, 2, U3)
        assert projection_Pk(p, 2, U3) == p
        r = right_projection_Pk(h, 2, U3)
        assert right_projection_Pk(r, 2, U3) == r


def test_projection_fixes_monogenic_input():
    for p in basis_P_sigma(3, 2).elements.values():
        assert projection_Pk(p, 2, U3) == p


def test_harmonic_precondition():
    """u1² は調和ではなく、u1 + u1 u2 は斉次ではない"""
    u1 = MPoly.variable(U3, 1)
    u2 = MPoly.variable(U3, 2)
    with pytest.raises(MonogenicError):
        check_harmonic(u1 * u1, U3, 2)
    with pytest.raises(MonogenicError):
        projection_Pk(u1 + u1 * u2, 2, U3)


def test_zk_for_k_zero_is_constant_one():
    Z = build_Zk(3, 0)
    assert Z.poly == MPoly.constant(1, 3)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 1)])
def test_zk_reproduces_basis(n, k):
    """(Z′_k(u, v), P(v))_v = P(u)、Z′_k は u で左、v で右モノジェニック"""
    Z = build_Zk(n, k)
    check_monogenic(Z.poly, Z.u, k)
    check_monogenic(Z.poly, Z.v, k, "right")
    for p in basis_P_sigma(n, k).elements.values():
        assert reproduce(Z, p) == p
        # 右から定数を掛けた元も再生される
        e1 = Multivector.basis(n, 1)
        assert reproduce(Z, p.right_mul(e1)) == p.right_mul(e1)


def test_zk_reflection_invariance():
    Z = build_Zk(3, 1)
    for x in ([1, 2, 0], [3, -1, 2], [0, 0, 5]):
        assert zk_reflection_residual(Z, x).is_zero()


def test_zk_requires_n_at_least_three():
    with pytest.raises(MonogenicError):
        build_Zk(2, 1)
