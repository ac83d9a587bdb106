"""
Vahlen 行列と Möbius 変換 y = (ax+b)(cx+d)^{-1}

成分 a, b, c, d は Clifford 群の元 (ベクトルの積) か 0。条件は
a b̃, c d̃, c̃ a, d̃ b がベクトル (または 0)、擬行列式 a d̃ − b c̃ = ±1。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from src.core.errors import CliffordError, ConformalError
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import EXACT, FLOAT, exact_sqrt
from src.models.clifford.versor import Versor
from src.models.poly.radical import RadicalScaled

FLOAT_TOL = 1e-12

J1 = "J1"
JM1 = "Jm1"


def _element_parity(m: Multivector) -> Optional[int]:
    """全成分が偶 (0) か奇 (1) か。混在なら None"""
    parities = {g % 2 for g in m.grades()}
    return parities.pop() if len(parities) == 1 else None


def _is_group_element(m: Multivector) -> bool:
    if m.is_zero():
        return True
    s = m.conjugation() * m
    return s.is_scalar() and not s.is_zero() and _element_parity(m) is not None


@dataclass(frozen=True)
class VahlenMatrix:
    a: Multivector
    b: Multivector
    c: Multivector
    d: Multivector

    def __post_init__(self):
        entries = (self.a, self.b, self.c, self.d)
        n = self.a.n
        mode = self.a.mode
        if any(e.n != n or e.mode != mode for e in entries):
            raise ConformalError("成分の次元またはモードが一致しません")
        problems = self.violations()
        if problems:
            raise ConformalError("Vahlen 行列の条件を満たしません: " + "; ".join(problems))

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def mode(self) -> str:
        return self.a.mode

    def violations(self) -> Tuple[str, ...]:
        out = []
        for name, e in zip("abcd", (self.a, self.b, self.c, self.d)):
            if not _is_group_element(e):
                out.append(f"{name} が Clifford 群の元ではありません")
        pairs = {
            "a b̃": self.a * self.b.reversion(),
            "c d̃": self.c * self.d.reversion(),
            "c̃ a": self.c.reversion() * self.a,
            "d̃ b": self.d.reversion() * self.b,
        }
        for name, value in pairs.items():
            if not value.is_vector():
                out.append(f"{name} がベクトルではありません")
        det = self.pseudo_determinant_mv()
        if not det.is_scalar():
            out.append("擬行列式がスカラーではありません")
        elif not _is_unit(det.scalar_part(), self.mode):
            out.append(f"擬行列式が ±1 ではありません: {det.scalar_part()}")
        return tuple(out)

    def pseudo_determinant_mv(self) -> Multivector:
        return self.a * self.d.reversion() - self.b * self.c.reversion()

    @property
    def pdet(self) -> int:
        return 1 if float(self.pseudo_determinant_mv().scalar_part()) > 0 else -1

    @property
    def parity(self) -> int:
        """d ≠ 0 なら d の偶奇、d = 0 なら c の偶奇の反対"""
        if not self.d.is_zero():
            return _element_parity(self.d)
        return 1 - _element_parity(self.c)

    @property
    def epsilon(self) -> int:
        """D_x J_1 f(φ(x)) = ε J_{−1} (Df)(φ(x)) の符号"""
        return self.pdet * (-1) ** self.parity

    def denominator(self, x: Multivector) -> Multivector:
        """cx + d"""
        return self.c * x + self.d


def _is_unit(value, mode: str) -> bool:
    if mode == FLOAT:
        return abs(abs(value) - 1.0) < FLOAT_TOL
    return abs(value) == 1


def _one(n: int, mode: str) -> Multivector:
    return Multivector.scalar(n, 1, mode)


def translation(t: Sequence, mode: str = EXACT) -> VahlenMatrix:
    n = len(t)
    zero = Multivector.zero(n, mode)
    return VahlenMatrix(_one(n, mode), Multivector.vector(n, t, mode), zero, _one(n, mode))


def dilation(n: int, lam, mode: str = EXACT) -> VahlenMatrix:
    """x ↦ λ² x (a = λ, d = 1/λ)"""
    zero = Multivector.zero(n, mode)
    lam_mv = Multivector.scalar(n, lam, mode)
    return VahlenMatrix(lam_mv, zero, zero, lam_mv.inverse())


def inversion(n: int, mode: str = EXACT) -> VahlenMatrix:
    """x ↦ x^{-1}"""
    zero = Multivector.zero(n, mode)
    return VahlenMatrix(zero, _one(n, mode), _one(n, mode), zero)


def reflection(a: Versor) -> VahlenMatrix:
    """x ↦ a x ã。M = [[a, 0], [0, (ã)^{-1}]]"""
    am = a.as_multivector()
    zero = Multivector.zero(a.n, a.mode)
    return VahlenMatrix(am, zero, zero, am.reversion().inverse())


def compose(m1: VahlenMatrix, m2: VahlenMatrix) -> VahlenMatrix:
    """φ_1 ∘ φ_2 に対応する行列積 M_1 M_2"""
    return VahlenMatrix(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def _invert(b: Multivector) -> Multivector:
    try:
        return b.inverse()
    except CliffordError as e:
        raise ConformalError(f"cx+d が可逆ではありません: {b}") from e


def mobius_apply(M: VahlenMatrix, x: Multivector) -> Multivector:
    if not x.is_vector():
        raise ConformalError("Möbius 変換は 1-ベクトルに作用します")
    y = (M.a * x + M.b) * _invert(M.denominator(x))
    if not y.is_vector():
        raise ConformalError(f"像が 1-ベクトルになりません: {y}")
    return y


@dataclass(frozen=True)
class MobiusAction:
    """
    Iwasawa 分解による評価

    c = 0: y = a x d^{-1} + b d^{-1}
    c ≠ 0: y = a c^{-1} − pdet (c x c̃ + d c̃)^{-1}
    """

    matrix: VahlenMatrix

    def apply(self, x: Multivector) -> Multivector:
        M = self.matrix
        if M.c.is_zero():
            d_inv = _invert(M.d)
            return M.a * x * d_inv + M.b * d_inv
        c_rev = M.c.reversion()
        inner = M.c * x * c_rev + M.d * c_rev
        if not inner.is_vector() or inner.is_zero():
            raise ConformalError(f"c x c̃ + d c̃ が可逆なベクトルではありません: {inner}")
        return M.a * _invert(M.c) - inner.vector_inverse().scale(M.pdet)


def radial_power(r2, e: int) -> Tuple[object, object]:
    """
    ‖b‖^e を (有理因子, 被開平数) に分ける。‖b‖² = r2

    e が偶数なら (r2^{e/2}, 1)、奇数なら (r2^{(e−1)/2}, r2)。
    """
    if isinstance(r2, float):
        return r2 ** (e / 2), 1
    r2 = Fraction(r2)
    if e % 2 == 0:
        return r2 ** (e // 2), 1
    root = exact_sqrt(r2)
    if root is not None:
        return root ** e, 1
    return r2 ** ((e - 1) // 2), r2


def weight_J(M: VahlenMatrix, x: Multivector, kind: str = J1) -> RadicalScaled:
    """
    J_1 = (cx+d)~/‖cx+d‖^n、J_{−1} = (cx+d)~/‖cx+d‖^{n+2}

    exact モードで ‖cx+d‖ が無理数なら √ の因子を RadicalScaled に残す。
    """
    if kind not in (J1, JM1):
        raise ConformalError(f"kind は {J1} か {JM1} です: {kind}")
    b = M.denominator(x)
    _invert(b)
    e = -M.n if kind == J1 else -(M.n + 2)
    factor, radicand = radial_power(b.norm_squared(), e)
    return RadicalScaled(b.reversion().scale(factor), radicand)


def u_transform(M: VahlenMatrix, x: Multivector, w: Multivector) -> Multivector:
    """u = (cx+d)~ w (cx+d)/‖cx+d‖²"""
    b = M.denominator(x)
    _invert(b)
    return b.reversion() * w * b / b.norm_squared()


def U_transform(M: VahlenMatrix, x: Multivector, w: Multivector) -> Multivector:
    """U = (cx+d) w (cx+d)~/‖cx+d‖²。u_transform の逆写像"""
    b = M.denominator(x)
    _invert(b)
    return b * w * b.reversion() / b.norm_squared()
