"""
再生核 Z′_k と基本解 F′_k のファイル形式

1 行 1 項目のテキスト。係数は "p/q" の有理数文字列なので、読み戻しは厳密に一致する。

    # rarita-schwinger kernel
    n 3
    k 1
    normalization omega_n
    kind Ek
    terms 24
    u=1,0,0 v=0,1,0 x=2,0,1 m=5 blade=3 coeff=-1/2
    ...

Zk の項は x, m を持たない。Ek の m は全項共通の分母 ‖x‖^m の指数。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.core.errors import KernelFileError, MonogenicError, PolyError
from src.core.logger import get_logger
from src.models.monogenic.basis import basis_P_sigma
from src.models.monogenic.kernel_zk import NORMALIZATION, KernelZk, build_Zk, reproduce
from src.models.poly.mpoly import Key, MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.var_space import spaces
from src.models.rarita_schwinger.kernel_ek import (
    KernelEk,
    build_Ek,
    left_annihilation_residual,
    right_annihilation_check,
)
from src.models.rarita_schwinger.lemma6 import c_k
from src.models.residual import Residual, worst

HEADER = "# rarita-schwinger kernel"
KINDS = ("Zk", "Ek")

Kernel = Union[KernelZk, KernelEk]


def _format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    except (ValueError, ZeroDivisionError) as e:
        raise KernelFileError(f"係数は p/q の形式が必要です: {text}") from e


def _format_exps(values) -> str:
    return ",".join(str(e) for e in values)


def _parse_exps(text: str, n: int) -> Tuple[int, ...]:
    try:
        values = tuple(int(e) for e in text.split(","))
    except ValueError as e:
        raise KernelFileError(f"指数を解析できません: {text}") from e
    if len(values) != n or any(e < 0 for e in values):
        raise KernelFileError(f"指数は非負の {n} 成分が必要です: {text}")
    return values


@dataclass
class KernelFile:
    n: int
    k: int
    kind: str
    terms: Dict[Key, Fraction] = field(default_factory=dict)
    denominator_power: int = 0
    normalization: str = NORMALIZATION

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KernelFileError(f"kind は {KINDS} のいずれかです: {self.kind}")

    # 核との変換

    @classmethod
    def from_kernel(cls, kernel: Kernel) -> "KernelFile":
        if isinstance(kernel, KernelZk):
            poly, kind, power = kernel.poly, "Zk", 0
        else:
            poly, kind, power = kernel.numerator, "Ek", kernel.denominator_power
        if poly.mode != "exact":
            raise KernelFileError("保存できるのは exact モードの核だけです")
        return cls(kernel.n, kernel.k, kind, dict(poly.items()), power)

    def polynomial(self) -> MPoly:
        return MPoly(self.n, self.terms)

    def to_kernel(self) -> Kernel:
        if self.normalization != NORMALIZATION:
            raise KernelFileError(f"未対応の正規化です: {self.normalization}")
        poly = self.polynomial()
        if self.kind == "Zk":
            return KernelZk(self.n, self.k, poly)
        x = spaces(self.n)[0]
        return KernelEk(self.n, self.k, RadialRational(poly, self.denominator_power, x, reduce=False), c_k(self.n, self.k))

    # テキスト形式

    def dumps(self) -> str:
        x, u, v, _ = spaces(self.n)
        lines = [
            HEADER,
            f"n {self.n}",
            f"k {self.k}",
            f"normalization {self.normalization}",
            f"kind {self.kind}",
            f"terms {len(self.terms)}",
        ]
        for (exps, mask), coeff in sorted(self.terms.items()):
            fields = [f"u={_format_exps(u.part(exps))}", f"v={_format_exps(v.part(exps))}"]
            if self.kind == "Ek":
                fields += [f"x={_format_exps(x.part(exps))}", f"m={self.denominator_power}"]
            elif any(x.part(exps)):
                raise KernelFileError("Zk の項が x に依存しています")
            fields += [f"blade={mask}", f"coeff={_format_fraction(Fraction(coeff))}"]
            lines.append(" ".join(fields))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "KernelFile":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or lines[0] != HEADER:
            raise KernelFileError("核ファイルのヘッダーがありません")
        header: Dict[str, str] = {}
        body: List[str] = []
        for line in lines[1:]:
            if "=" in line:
                body.append(line)
                continue
            key, _, value = line.partition(" ")
            header[key] = value.strip()
        try:
            n, k, count = int(header["n"]), int(header["k"]), int(header["terms"])
            kind = header["kind"]
        except (KeyError, ValueError) as e:
            raise KernelFileError(f"ヘッダー項目が不足しています: {e}") from e
        if count != len(body):
            raise KernelFileError(f"項の数 {len(body)} がヘッダーの {count} と一致しません")
        result = cls(n, k, kind, normalization=header.get("normalization", NORMALIZATION))
        for line in body:
            result._parse_term(line)
        return result

    def _parse_term(self, line: str) -> None:
        zero = (0,) * self.n
        try:
            fields = dict(item.split("=", 1) for item in line.split())
            parts = {
                "x": _parse_exps(fields["x"], self.n) if self.kind == "Ek" else zero,
                "u": _parse_exps(fields["u"], self.n),
                "v": _parse_exps(fields["v"], self.n),
                "w": zero,
            }
            mask = int(fields["blade"])
            coeff = _parse_fraction(fields["coeff"])
            power = int(fields.get("m", -1))
        except (KeyError, ValueError) as e:
            raise KernelFileError(f"項を解析できません ({e}): {line}") from e
        if self.kind == "Ek":
            if power < 0:
                raise KernelFileError(f"Ek の項には m が必要です: {line}")
            if self.terms and power != self.denominator_power:
                raise KernelFileError(f"分母の指数が項ごとに異なります: {line}")
            self.denominator_power = power
        if not 0 <= mask < (1 << self.n):
            raise KernelFileError(f"ブレード {mask} が次元 {self.n} に収まりません")
        exps = parts["x"] + parts["u"] + parts["v"] + parts["w"]
        key = (exps, mask)
        if key in self.terms:
            raise KernelFileError(f"同じ項が重複しています: {line}")
        self.terms[key] = coeff

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.dumps(), encoding="utf-8")
        except OSError as e:
            raise KernelFileError(f"核ファイルを書き込めません: {path}: {e}") from e
        get_logger().info("核ファイルを保存しました", path=str(path), kind=self.kind, n=self.n, k=self.k)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> "KernelFile":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise KernelFileError(f"核ファイルを読み込めません: {path}: {e}") from e
        return cls.loads(text)


# 生成と検証


def validate_kernel(kernel: Kernel) -> Residual:
    """Zk は基底の再生、Ek は左右の消滅を確かめる"""
    if isinstance(kernel, KernelZk):
        basis = basis_P_sigma(kernel.n, kernel.k)
        return worst(Residual.of(reproduce(kernel, p) - p) for p in basis.elements.values())
    return worst([Residual.of(left_annihilation_residual(kernel)), Residual.of(right_annihilation_check(kernel))])


def build_kernel(n: int, k: int, kind: str) -> Kernel:
    if kind not in KINDS:
        raise KernelFileError(f"kind は {KINDS} のいずれかです: {kind}")
    try:
        return build_Zk(n, k) if kind == "Zk" else build_Ek(n, k)
    except (MonogenicError, PolyError) as e:
        raise KernelFileError(f"核を構成できません (n={n}, k={k}, kind={kind}): {e}") from e


def gen_kernel(n: int, k: int, kind: str, path: Union[str, Path]) -> KernelFile:
    """核を構成して検証し、成功したときだけ書き出す"""
    kernel = build_kernel(n, k, kind)
    residual = validate_kernel(kernel)
    if not residual.exact_zero:
        raise KernelFileError(f"核の検証に失敗したため書き出しません: {residual.witness}")
    kernel_file = KernelFile.from_kernel(kernel)
    kernel_file.save(path)
    return kernel_file


def kernel_path(kernel_dir: Union[str, Path], n: int, k: int, kind: str) -> Path:
    return Path(kernel_dir) / f"{kind.lower()}_n{n}_k{k}.kernel"


def load_or_build(n: int, k: int, kind: str, kernel_dir: Optional[Union[str, Path]] = None) -> Kernel:
    """
    kernel_dir にキャッシュがあれば読み込み、なければ構成して保存する

    kernel_dir が None ならファイルは使わない。
    """
    if kernel_dir is None:
        return build_kernel(n, k, kind)
    path = kernel_path(kernel_dir, n, k, kind)
    if path.exists():
        kernel_file = KernelFile.load(path)
        if (kernel_file.n, kernel_file.k, kernel_file.kind) != (n, k, kind):
            raise KernelFileError(f"キャッシュの内容がファイル名と一致しません: {path}")
        get_logger().debug("核ファイルを読み込みました", path=str(path))
        return kernel_file.to_kernel()
    return gen_kernel(n, k, kind, path).to_kernel()
