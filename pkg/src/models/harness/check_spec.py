"""
名前付きチェックの定義と、チェック本体に渡す実行コンテキスト

各チェックは register で登録され、CheckContext を受け取って Residual を返す。
恒等式が成り立たないことは例外ではなく残差として返す。
"""

import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from src.core.config_loader import CheckConfig
from src.core.errors import CheckError, KernelFileError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT
from src.models.conformal.sampling import default_sample_count, rational_points
from src.models.harness.kernel_file import Kernel, load_or_build
from src.models.quadrature.integral_formulas import QuadratureSetup
from src.models.residual import Residual

EXACT_ALGEBRA = "exact"
CONFORMAL = "conformal"
INTEGRAL = "integral"
CATEGORIES = (EXACT_ALGEBRA, CONFORMAL, INTEGRAL)

KERNEL_MIN_N = 3


@dataclass(frozen=True)
class CheckSpec:
    """
    Attributes:
        name: CLI で指定する名前
        anchor: 対応する恒等式の引用
        category: exact / conformal / integral
        run: CheckContext -> Residual
        needs_kernel: n ≥ 3 の核 (Z′_k, F′_k) を使うか
        tolerance: 設定の tolerance より緩める場合の値 (数値チェック)
        slow: 既定の実行で時間のかかるもの
        numeric: 浮動小数点の残差を tolerance と比べるチェック。
            False のチェックは exact モードでは厳密に 0 のときだけ合格
    """

    name: str
    anchor: str
    category: str
    run: Callable[["CheckContext"], Residual]
    needs_kernel: bool = False
    tolerance: Optional[float] = None
    slow: bool = False
    numeric: bool = False
    note: str = ""

    def effective_tolerance(self, configured: float) -> float:
        if self.tolerance is None:
            return configured
        return max(configured, self.tolerance)

    def skip_reason(self, config: CheckConfig) -> Optional[str]:
        """実行できない設定なら理由を返す"""
        if (self.needs_kernel or self.category == INTEGRAL) and config.n < KERNEL_MIN_N:
            return f"n={config.n} では核が定義されません (n ≥ {KERNEL_MIN_N} が必要)"
        return None


_REGISTRY: Dict[str, CheckSpec] = {}


def register(
    name: str,
    anchor: str,
    category: str,
    needs_kernel: bool = False,
    tolerance: Optional[float] = None,
    slow: bool = False,
    numeric: Optional[bool] = None,
    note: str = "",
):
    """チェック関数を名前付きで登録するデコレータ"""
    if category not in CATEGORIES:
        raise CheckError(f"未知のカテゴリです: {category}")

    def decorator(fn: Callable[["CheckContext"], Residual]):
        if name in _REGISTRY:
            raise CheckError(f"チェック名が重複しています: {name}")
        is_numeric = category == INTEGRAL if numeric is None else numeric
        _REGISTRY[name] = CheckSpec(name, anchor, category, fn, needs_kernel, tolerance, slow, is_numeric, note)
        return fn

    return decorator


def registered() -> Dict[str, CheckSpec]:
    return _REGISTRY


class CheckContext:
    """
    1 回の実行で共有する設定・核・求積則

    核は最初に要求されたときに構成 (またはファイルから読み込み) され、
    スレッド間で共有される。
    """

    def __init__(self, config: CheckConfig):
        self.config = config
        self._kernels: Dict[str, Kernel] = {}
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def float_mode(self) -> bool:
        return self.config.mode == FLOAT

    def cast(self, p):
        """float モードなら入力を浮動小数点に変換する"""
        return p.to_float() if self.float_mode else p

    def kernel(self, kind: str, n: Optional[int] = None, k: Optional[int] = None) -> Kernel:
        n = self.n if n is None else n
        k = self.k if k is None else k
        key = f"{kind}:{n}:{k}"
        with self._lock:
            if key not in self._kernels:
                try:
                    self._kernels[key] = load_or_build(n, k, kind, self.config.kernel_dir)
                except KernelFileError as e:
                    raise CheckError(f"核 {kind} (n={n}, k={k}) を用意できません: {e}") from e
            return self._kernels[key]

    def setup(self, k: Optional[int] = None) -> QuadratureSetup:
        return QuadratureSetup(self.n, self.k if k is None else k, self.config.quad_order)

    def sample_count(self, k: Optional[int] = None) -> int:
        if self.config.sample_count is not None:
            return self.config.sample_count
        return default_sample_count(self.n, self.k if k is None else k)

    def points(self, count: Optional[int] = None, salt: int = 0, accept=None) -> List[Multivector]:
        """シードから決まる有理標本点。salt でチェックごとに系列をずらす"""
        count = self.sample_count() if count is None else count
        return rational_points(self.n, count, self.config.seed + salt, accept=accept)


def judge(spec: CheckSpec, residual: Residual, config: CheckConfig) -> bool:
    """合否。exact モードの記号チェックは厳密に 0 であることを要求する"""
    if not spec.numeric and config.mode != FLOAT:
        return residual.exact_zero
    return residual.passes(spec.effective_tolerance(config.tolerance))
