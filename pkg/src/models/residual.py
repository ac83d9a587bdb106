"""
恒等式チェックの残差

exact モードでは「厳密に 0 か」と、報告用の浮動小数点の大きさを併せて持つ。
"""

from dataclasses import dataclass
from typing import Iterable

from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.radical import RadicalScaled, radical_residual

WITNESS_LIMIT = 160


@dataclass(frozen=True)
class Residual:
    exact_zero: bool
    magnitude: float
    witness: str = ""

    @classmethod
    def zero(cls) -> "Residual":
        return cls(True, 0.0)

    @classmethod
    def of(cls, value) -> "Residual":
        """MPoly / RadialRational / Multivector / RadicalScaled の差から作る"""
        if isinstance(value, RadicalScaled):
            mag = value.magnitude()
            body = value.value
        elif isinstance(value, RadialRational):
            mag = value.numerator.max_abs()
            body = value.numerator
        else:
            mag = value.max_abs()
            body = value
        exact = body.is_zero()
        return cls(exact, mag, "" if exact else _witness(body))

    @classmethod
    def between(cls, a: RadicalScaled, b: RadicalScaled) -> "Residual":
        exact, mag = radical_residual(a, b)
        if exact:
            return cls(True, 0.0)
        return cls(False, mag, f"{a!r} ≠ {b!r}"[:WITNESS_LIMIT])

    @classmethod
    def float_gap(cls, magnitude: float, witness: str = "") -> "Residual":
        return cls(False, float(magnitude), witness)

    def scaled(self, factor: float) -> "Residual":
        return Residual(self.exact_zero, self.magnitude * abs(factor), self.witness)

    def passes(self, tolerance: float) -> bool:
        return self.exact_zero or self.magnitude <= tolerance

    def describe(self) -> str:
        return "exact-zero" if self.exact_zero else f"{self.magnitude:.3e}"


def worst(residuals: Iterable[Residual]) -> Residual:
    """全てが厳密に 0 なら exact-zero、そうでなければ最大の残差"""
    result = Residual.zero()
    for r in residuals:
        if r.exact_zero:
            continue
        if result.exact_zero or r.magnitude > result.magnitude:
            result = r
    return result


def _witness(body) -> str:
    if isinstance(body, MPoly):
        for (exps, m), c in body.items():
            single = MPoly(body.n, {(exps, m): c}, body.mode)
            return f"{single!r} (他 {len(body) - 1} 項)"[:WITNESS_LIMIT]
    return repr(body)[:WITNESS_LIMIT]
