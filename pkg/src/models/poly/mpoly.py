"""
Multivector 係数の多変数多項式

項は (指数タプル, ブレードマスク) → スカラー の平坦な辞書で持つ。指数タプルは
x, u, v, w の 4 空間を連結したもの (var_space 参照)。係数は常に左側にまとめて
書くが、変数はスカラーなので Clifford 積の順序に影響しない。
"""

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from src.core.errors import NotDivisibleError, PolyError
from src.models.clifford import blade as bl
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import EXACT, FLOAT, Scalar, check_same_mode, coerce
from src.models.poly.var_space import SPACE_NAMES, VarSpace

Exps = Tuple[int, ...]
Key = Tuple[Exps, int]

FLOAT_DIVISION_TOL = 1e-9


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(i + j for i, j in zip(a, b))


class MPoly:
    __slots__ = ("n", "mode", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Key, object]] = None, mode: str = EXACT):
        self.n = n
        self.mode = mode
        width = len(SPACE_NAMES) * n
        cleaned: Dict[Key, Scalar] = {}
        for (exps, mask), value in (terms or {}).items():
            if len(exps) != width:
                raise PolyError(f"指数タプルの長さは {width} が必要です: {exps}")
            if mask < 0 or mask >= (1 << n):
                raise PolyError(f"ブレード {mask} は次元 {n} に収まりません")
            c = coerce(value, mode)
            if c != 0:
                key = (tuple(exps), mask)
                cleaned[key] = cleaned.get(key, 0) + c
        self._terms = {k: c for k, c in cleaned.items() if c != 0}

    @classmethod
    def _raw(cls, n: int, terms: Dict[Key, Scalar], mode: str) -> "MPoly":
        p = cls.__new__(cls)
        p.n = n
        p.mode = mode
        p._terms = terms
        return p

    # 生成

    @classmethod
    def zero(cls, n: int, mode: str = EXACT) -> "MPoly":
        return cls._raw(n, {}, mode)

    @classmethod
    def zero_exps(cls, n: int) -> Exps:
        return (0,) * (len(SPACE_NAMES) * n)

    @classmethod
    def constant(cls, value, n: int, mode: str = EXACT) -> "MPoly":
        """スカラーまたは Multivector を定数多項式にする"""
        if isinstance(value, Multivector):
            return cls.from_multivector(value)
        return cls(n, {(cls.zero_exps(n), 0): value}, mode)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "MPoly":
        z = cls.zero_exps(mv.n)
        return cls._raw(mv.n, {(z, m): c for m, c in mv.items()}, mv.mode)

    @classmethod
    def monomial(cls, space: VarSpace, exps: Sequence[int], coeff=1, mode: str = EXACT) -> "MPoly":
        """空間 space の単項式 space^exps に係数 coeff (スカラーか Multivector) を掛けたもの"""
        full = list(cls.zero_exps(space.n))
        for i, e in enumerate(exps):
            full[space.offset + i] = e
        base = cls._raw(space.n, {(tuple(full), 0): coerce(1, mode)}, mode)
        if isinstance(coeff, Multivector):
            return base.left_mul(coeff)
        return base.scale(coeff)

    @classmethod
    def variable(cls, space: VarSpace, i: int, mode: str = EXACT) -> "MPoly":
        space.position(i)
        exps = [0] * space.n
        exps[i - 1] = 1
        return cls.monomial(space, exps, 1, mode)

    @classmethod
    def vector_variable(cls, space: VarSpace, mode: str = EXACT) -> "MPoly":
        """Σ_i s_i e_i"""
        terms = {}
        z = cls.zero_exps(space.n)
        for i in range(1, space.n + 1):
            exps = list(z)
            exps[space.position(i)] = 1
            terms[(tuple(exps), 1 << (i - 1))] = coerce(1, mode)
        return cls._raw(space.n, terms, mode)

    @classmethod
    def radius_squared(cls, space: VarSpace, mode: str = EXACT) -> "MPoly":
        """‖s‖² = Σ_i s_i²"""
        terms = {}
        z = cls.zero_exps(space.n)
        for i in range(1, space.n + 1):
            exps = list(z)
            exps[space.position(i)] = 2
            terms[(tuple(exps), 0)] = coerce(1, mode)
        return cls._raw(space.n, terms, mode)

    # 参照

    @property
    def terms(self) -> Mapping[Key, Scalar]:
        return self._terms

    def items(self) -> Iterator[Tuple[Key, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps, _ in self._terms)

    def to_multivector(self) -> Multivector:
        if not self.is_constant():
            raise PolyError("定数でない多項式は Multivector に変換できません")
        return Multivector._raw(self.n, {m: c for (_, m), c in self._terms.items()}, self.mode)

    def monomials(self) -> Set[Exps]:
        return {exps for exps, _ in self._terms}

    def depends_on(self, space: VarSpace) -> bool:
        return any(any(space.part(exps)) for exps, _ in self._terms)

    def degrees(self, space: VarSpace) -> Set[int]:
        return {space.degree(exps) for exps, _ in self._terms}

    def is_homogeneous(self, space: VarSpace, k: int) -> bool:
        return self.degrees(space) <= {k}

    def homogeneous_part(self, space: VarSpace, k: int) -> "MPoly":
        return MPoly._raw(
            self.n,
            {key: c for key, c in self._terms.items() if space.degree(key[0]) == k},
            self.mode,
        )

    def is_scalar_valued(self) -> bool:
        return all(m == 0 for _, m in self._terms)

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self._terms.values()), default=0.0)

    # 代数演算

    def _check(self, other: "MPoly") -> None:
        if self.n != other.n:
            raise PolyError(f"次元が一致しません: {self.n} と {other.n}")
        check_same_mode(self.mode, other.mode)

    def _lift(self, other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, Multivector):
            if other.n != self.n:
                raise PolyError(f"次元が一致しません: {self.n} と {other.n}")
            check_same_mode(self.mode, other.mode)
            return MPoly.from_multivector(other)
        if isinstance(other, (int, float, Fraction, np.integer, np.floating)):
            return MPoly.constant(other, self.n, self.mode)
        return None

    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return MPoly._raw(self.n, out, self.mode)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.n, {k: -c for k, c in self._terms.items()}, self.mode)

    def __sub__(self, other) -> "MPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, value) -> "MPoly":
        c = coerce(value, self.mode)
        if c == 0:
            return MPoly.zero(self.n, self.mode)
        return MPoly._raw(self.n, {k: v * c for k, v in self._terms.items()}, self.mode)

    def __truediv__(self, value) -> "MPoly":
        c = coerce(value, self.mode)
        if c == 0:
            raise PolyError("0 で割ることはできません")
        return self.scale(1 / c if self.mode == FLOAT else Fraction(1) / c)

    def _product(self, other: "MPoly") -> "MPoly":
        out: Dict[Key, Scalar] = {}
        for (ea, ma), ca in self._terms.items():
            for (eb, mb), cb in other._terms.items():
                sign, m = bl.blade_product(ma, mb)
                key = (_add_exps(ea, eb), m)
                v = ca * cb
                out[key] = out.get(key, 0) + (v if sign > 0 else -v)
        return MPoly._raw(self.n, {k: c for k, c in out.items() if c != 0}, self.mode)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, float, Fraction, np.integer, np.floating)):
            return self.scale(other)
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return self._product(lifted)

    def __rmul__(self, other) -> "MPoly":
        if isinstance(other, (int, float, Fraction, np.integer, np.floating)):
            return self.scale(other)
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return lifted._product(self)

    def left_mul(self, mv: Multivector) -> "MPoly":
        return self.__rmul__(mv)

    def right_mul(self, mv: Multivector) -> "MPoly":
        return self.__mul__(mv)

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise PolyError("負の冪は多項式になりません")
        result = MPoly.constant(1, self.n, self.mode)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.n == other.n and self.mode == other.mode and self._terms == other._terms
        if isinstance(other, (Multivector, int, Fraction, float)):
            lifted = self._lift(other)
            return lifted is not None and self._terms == lifted._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.mode, frozenset(self._terms.items())))

    def _signed(self, sign_of) -> "MPoly":
        return MPoly._raw(
            self.n,
            {(e, m): (c if sign_of(m) > 0 else -c) for (e, m), c in self._terms.items()},
            self.mode,
        )

    def reversion(self) -> "MPoly":
        return self._signed(bl.reversion_sign)

    def conjugation(self) -> "MPoly":
        return self._signed(bl.conjugation_sign)

    # 微分作用素

    def partial_derivative(self, space: VarSpace, i: int) -> "MPoly":
        pos = space.position(i)
        out: Dict[Key, Scalar] = {}
        for (exps, m), c in self._terms.items():
            e = exps[pos]
            if e == 0:
                continue
            new = exps[:pos] + (e - 1,) + exps[pos + 1 :]
            out[(new, m)] = c * e
        return MPoly._raw(self.n, out, self.mode)

    def dirac(self, space: VarSpace, side: str = "left") -> "MPoly":
        """左: Σ e_j ∂_j p、右: Σ (∂_j p) e_j"""
        if side not in ("left", "right"):
            raise PolyError(f"side は left か right です: {side}")
        result = MPoly.zero(self.n, self.mode)
        for j in range(1, space.n + 1):
            d = self.partial_derivative(space, j)
            if d.is_zero():
                continue
            e_j = Multivector.basis(self.n, j, mode=self.mode)
            result = result + (d.left_mul(e_j) if side == "left" else d.right_mul(e_j))
        return result

    def laplacian(self, space: VarSpace) -> "MPoly":
        result = MPoly.zero(self.n, self.mode)
        for j in range(1, space.n + 1):
            result = result + self.partial_derivative(space, j).partial_derivative(space, j)
        return result

    def euler(self, space: VarSpace) -> "MPoly":
        """Σ s_j ∂_j。斉次 k 次の部分を k 倍する"""
        out = {
            key: c * space.degree(key[0])
            for key, c in self._terms.items()
            if space.degree(key[0]) != 0
        }
        return MPoly._raw(self.n, out, self.mode)

    # 代入と評価

    def substitute(self, space: VarSpace, images: Sequence["MPoly"]) -> "MPoly":
        """
        space の変数を同時に images で置き換える

        images はスカラー値の多項式でなければならない。images が同じ空間の変数を
        含んでもよい (同時代入)。
        """
        if len(images) != space.n:
            raise PolyError(f"{space.name} 空間には {space.n} 個の像が必要です: {len(images)}")
        for img in images:
            self._check(img)
            if not img.is_scalar_valued():
                raise PolyError("代入する像はスカラー値の多項式でなければなりません")
        powers: Dict[Tuple[int, int], MPoly] = {}

        def power(i: int, e: int) -> MPoly:
            if (i, e) not in powers:
                powers[(i, e)] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[(i, e)]

        groups: Dict[Exps, Dict[Key, Scalar]] = {}
        for (exps, m), c in self._terms.items():
            part = space.part(exps)
            rest = exps[: space.offset] + (0,) * space.n + exps[space.offset + space.n :]
            groups.setdefault(part, {})[(rest, m)] = c

        result = MPoly.zero(self.n, self.mode)
        for part, rest_terms in groups.items():
            factor = MPoly.constant(1, self.n, self.mode)
            for i, e in enumerate(part):
                if e:
                    factor = factor * power(i, e)
            # factor はスカラー値なので積の順序は任意
            result = result + MPoly._raw(self.n, rest_terms, self.mode)._product(factor)
        return result

    def rename(self, source: VarSpace, target: VarSpace) -> "MPoly":
        """source の変数を target の変数に付け替える。target に既存の変数があれば加算される"""
        out: Dict[Key, Scalar] = {}
        for (exps, m), c in self._terms.items():
            lst = list(exps)
            part = source.part(exps)
            for i in range(source.n):
                lst[source.offset + i] = 0
            for i, e in enumerate(part):
                lst[target.offset + i] += e
            key = (tuple(lst), m)
            out[key] = out.get(key, 0) + c
        return MPoly._raw(self.n, {k: c for k, c in out.items() if c != 0}, self.mode)

    def restrict(self, space: VarSpace, point: Sequence) -> "MPoly":
        """space の変数に値を代入した多項式 (他の空間は残る)"""
        if len(point) != space.n:
            raise PolyError(f"{space.name} の点は {space.n} 成分が必要です")
        values = [coerce(p, self.mode) for p in point]
        out: Dict[Key, Scalar] = {}
        for (exps, m), c in self._terms.items():
            v = c
            for i, e in enumerate(space.part(exps)):
                if e:
                    v = v * values[i] ** e
            if v == 0:
                continue
            rest = exps[: space.offset] + (0,) * space.n + exps[space.offset + space.n :]
            key = (rest, m)
            out[key] = out.get(key, 0) + v
        return MPoly._raw(self.n, {k: c for k, c in out.items() if c != 0}, self.mode)

    def evaluate(self, points: Mapping[str, Sequence]) -> Multivector:
        """全ての変数に値を与えて Multivector を得る"""
        p = self
        for name, point in points.items():
            p = p.restrict(VarSpace(name, self.n), point)
        if not p.is_constant():
            raise PolyError("値が与えられていない変数が残っています")
        return p.to_multivector()

    # ‖·‖² による除算

    def divide_by_r2(self, space: VarSpace) -> "MPoly":
        """
        q ‖s‖² = p を満たす q を返す。割り切れなければ NotDivisibleError

        s_1² = ‖s‖² − Σ_{i≥2} s_i² を使って s_1 の次数を下げていく。余りは s_1 について
        1 次以下で一意に定まる。
        """
        pos = space.position(1)
        others = [space.position(i) for i in range(2, space.n + 1)]
        quotient: Dict[Key, Scalar] = {}
        rem: Dict[Key, Scalar] = dict(self._terms)
        while rem:
            # 最大の s_1 次数の項だけをまとめて処理する。生成される項は次数が 2 低い
            top = max(key[0][pos] for key in rem)
            if top < 2:
                break
            batch = {key: c for key, c in rem.items() if key[0][pos] == top}
            for (exps, m), c in batch.items():
                base = exps[:pos] + (exps[pos] - 2,) + exps[pos + 1 :]
                qk = (base, m)
                quotient[qk] = quotient.get(qk, 0) + c
                # rem -= c * base * ‖s‖²。s_1² の項は元の項と打ち消し合う
                del rem[(exps, m)]
                for q in others:
                    e = base[:q] + (base[q] + 2,) + base[q + 1 :]
                    rk = (e, m)
                    v = rem.get(rk, 0) - c
                    if v == 0:
                        rem.pop(rk, None)
                    else:
                        rem[rk] = v
        remainder = MPoly._raw(self.n, rem, self.mode)
        if self.mode == FLOAT:
            scale = max(1.0, self.max_abs())
            if remainder.max_abs() > FLOAT_DIVISION_TOL * scale:
                raise NotDivisibleError(f"‖{space.name}‖² で割り切れません", remainder)
        elif not remainder.is_zero():
            raise NotDivisibleError(f"‖{space.name}‖² で割り切れません", remainder)
        return MPoly._raw(self.n, {k: c for k, c in quotient.items() if c != 0}, self.mode)

    # 変換

    def to_float(self) -> "MPoly":
        if self.mode == FLOAT:
            return self
        return MPoly._raw(self.n, {k: float(c) for k, c in self._terms.items()}, FLOAT)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (exps, m), c in sorted(self._terms.items(), key=lambda t: (t[0][0], t[0][1])):
            mono = []
            for idx, e in enumerate(exps):
                if e:
                    name = SPACE_NAMES[idx // self.n]
                    var = f"{name}{idx % self.n + 1}"
                    mono.append(var if e == 1 else f"{var}^{e}")
            blade = "" if m == 0 else bl.blade_name(m)
            parts.append("*".join([str(c)] + mono + ([blade] if blade else [])))
        return " + ".join(parts)
