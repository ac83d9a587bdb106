import tracemalloc

import numpy as np
import pytest

from src.core.errors import QuadratureError
from src.models.clifford.scalar import FLOAT
from src.models.poly.mpoly import MPoly
from src.models.poly.var_space import spaces
from src.models.quadrature.integral_formulas import (
    QuadratureSetup,
    ShiftedInversion,
    bump,
    cif_check,
    stokes_check,
)
from src.models.harness.report import PASS
from src.models.harness.check_spec import CheckContext
from src.models.harness.runner import CheckRunner, run_check
from src.models.rarita_schwinger.kernel_ek import build_Ek

X, U, V, W = spaces(3)


def test_setup_rules():
    setup = QuadratureSetup(3, 1, 16)
    assert setup.volume_order == 8
    points, normals, weights = setup.boundary()
    assert np.array_equal(points, normals)
    assert weights.sum() == pytest.approx(4 * np.pi)
    vpoints, vweights = setup.volume()
    assert vweights.sum() == pytest.approx(4 * np.pi / 3)
    # 内部の特異点では極座標の細分に切り替わる
    spoints, sweights = setup.volume(np.array([0.2, 0.0, 0.0]))
    assert len(sweights) != len(vweights)
    assert sweights.sum() == pytest.approx(4 * np.pi / 3)


def test_clifford_stokes():
    """多項式の Stokes の公式は求積の次数内で丸め誤差まで一致する"""
    residual = stokes_check(3, QuadratureSetup(3, 1, 12))
    assert residual.magnitude < 1e-10


def test_bump_vanishes_on_boundary():
    b = bump(3)
    assert b.evaluate({"x": [1, 0, 0]}).is_zero()
    assert b.evaluate({"x": [0, 0, 0]})[0] == 1


def test_shifted_inversion_preserves_norm_of_w():
    """U(x, ·) は直交変換"""
    phi = ShiftedInversion((0.0, 0.0, 3.0))
    point = np.array([0.3, -0.2, 0.5])
    images = phi.U_images(point, W)
    w = [1.0, 2.0, -0.5]
    value = [img.evaluate({"w": w})[0] for img in images]
    assert np.dot(value, value) == pytest.approx(np.dot(w, w))
    with pytest.raises(QuadratureError):
        phi.phi(np.array([0.0, 0.0, 3.0]))


def test_shifted_inversion_transform_of_constant():
    """f = 1 なら J_1(x) f(φ(x), U) = J_1(x)"""
    phi = ShiftedInversion((0.0, 0.0, 3.0))
    point = np.array([0.1, 0.2, 0.0])
    value = phi.transform(MPoly.constant(1, 3), point, U)
    assert value == MPoly.from_multivector(phi.J1(point))
    assert value.mode == FLOAT


@pytest.mark.slow
def test_cauchy_integral_formula_n3_k1():
    residual = cif_check(build_Ek(3, 1), QuadratureSetup(3, 1, 24))
    assert residual.magnitude < 1e-6


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    [
        "stokes",
        "rs-stokes",
        "cauchy-theorem",
        "cauchy-theorem-conformal",
        "cif-conformal",
        "borel-pompeiu",
        "borel-pompeiu-dirac",
        "tk-delta",
        "tk-inverse",
    ],
)
def test_integral_checks_pass(make_config, name):
    result = run_check(name, make_config(quad_order=24))
    assert result.status == PASS, result.witness or result.reason


@pytest.mark.slow
@pytest.mark.parametrize("name", ["tk-inverse", "borel-pompeiu"])
def test_volume_checks_memory_is_bounded_n4_k2(make_config, name):
    """特異点まわりの細分でノードが数十万になっても、ノード × キーの配列を一度に持たない"""
    config = make_config(n=4, k=2, quad_order=24)
    ctx = CheckContext(config)
    ctx.kernel("Ek")
    tracemalloc.start()
    try:
        result = run_check(name, config, ctx)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert result.status == PASS, result.witness or result.reason
    assert peak < 1.5 * 1024**3


@pytest.mark.slow
def test_check_all_n4_k2_finishes(make_config):
    report = CheckRunner(make_config(n=4, k=2, quad_order=24, max_workers=4)).run("all")
    assert report.exit_code == 0, [r.name for r in report.results if r.status != PASS]
