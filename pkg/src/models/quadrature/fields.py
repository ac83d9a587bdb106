"""
求積ノード上で評価した「u, v について多項式のまま」の場

値は (ノード数, キー数) の配列で、キーは x 以外の空間の指数とブレードの組。
球面 pairing や左からのベクトル積などの線形・双線形演算は、厳密層の MPoly から
作った行列・テンソルを numpy で適用する。
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from src.core.errors import QuadratureError
from src.models.clifford import blade as bl
from src.models.clifford.multivector import Multivector
from src.models.clifford.scalar import FLOAT
from src.models.poly.mpoly import Exps, Key, MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.sphere import sphere_moment
from src.models.poly.var_space import VarSpace

Field = Union[MPoly, RadialRational]

# integrate_pairing_chunked が一度に評価するノード数の上限
NODE_CHUNK = 8192


def _strip(exps: Exps, space: VarSpace) -> Exps:
    return exps[: space.offset] + (0,) * space.n + exps[space.offset + space.n :]


@dataclass(frozen=True)
class KeySpace:
    n: int
    keys: Tuple[Key, ...]

    @classmethod
    def of(cls, n: int, keys: Iterable[Key]) -> "KeySpace":
        return cls(n, tuple(sorted(set(keys))))

    @classmethod
    def from_polys(cls, n: int, polys: Iterable[MPoly]) -> "KeySpace":
        keys = set()
        for p in polys:
            keys.update(p.terms.keys())
        return cls.of(n, keys)

    @property
    def size(self) -> int:
        return len(self.keys)

    @property
    def index(self) -> Dict[Key, int]:
        return _index(self)

    def basis_poly(self, i: int) -> MPoly:
        return MPoly(self.n, {self.keys[i]: 1.0}, FLOAT)

    def to_vector(self, p: MPoly) -> np.ndarray:
        out = np.zeros(self.size)
        index = self.index
        for key, c in p.items():
            if key not in index:
                raise QuadratureError(f"キー空間に無い項です: {key}")
            out[index[key]] = float(c)
        return out

    def to_poly(self, values: np.ndarray) -> MPoly:
        return MPoly(self.n, {key: float(c) for key, c in zip(self.keys, values) if c != 0}, FLOAT)


@lru_cache(maxsize=None)
def _index(space: KeySpace) -> Dict[Key, int]:
    return {key: i for i, key in enumerate(space.keys)}


@dataclass
class NodeField:
    space: KeySpace
    values: np.ndarray

    def __add__(self, other: "NodeField") -> "NodeField":
        if other.space != self.space:
            other = other.recast(KeySpace.of(self.space.n, self.space.keys + other.space.keys))
            return self.recast(other.space) + other
        return NodeField(self.space, self.values + other.values)

    def scale(self, factor) -> "NodeField":
        return NodeField(self.space, self.values * factor)

    def recast(self, space: KeySpace) -> "NodeField":
        """キー空間を広げる (足りない成分は 0)"""
        out = np.zeros((self.values.shape[0], space.size))
        index = space.index
        for i, key in enumerate(self.space.keys):
            out[:, index[key]] = self.values[:, i]
        return NodeField(space, out)

    def integrate(self, weights: np.ndarray) -> MPoly:
        return self.space.to_poly(weights @ self.values)


Source = Callable[[np.ndarray], NodeField]


def evaluate_on_nodes(p: Field, points: np.ndarray, x: VarSpace) -> NodeField:
    """
    x 空間の変数をノード点で評価し、残りの変数は多項式のまま保つ

    RadialRational の動径空間は x でなければならない。
    """
    numerator = p.numerator if isinstance(p, RadialRational) else p
    if isinstance(p, RadialRational) and p.space != x:
        raise QuadratureError("ノード評価できるのは x を動径空間とする場だけです")
    numerator = numerator.to_float()
    groups: Dict[Key, List[Tuple[Exps, float]]] = {}
    for (exps, m), c in numerator.items():
        groups.setdefault((_strip(exps, x), m), []).append((x.part(exps), c))
    space = KeySpace.of(p.n, groups.keys())
    points = np.asarray(points, dtype=float)
    powers: Dict[Tuple[int, int], np.ndarray] = {}

    def power(i: int, e: int) -> np.ndarray:
        if (i, e) not in powers:
            powers[(i, e)] = points[:, i] ** e
        return powers[(i, e)]

    values = np.zeros((len(points), space.size))
    for key, monomials in groups.items():
        col = values[:, space.index[key]]
        for part, c in monomials:
            term = np.full(len(points), c)
            for i, e in enumerate(part):
                if e:
                    term = term * power(i, e)
            col += term
    if isinstance(p, RadialRational) and p.power:
        r2 = np.einsum("ij,ij->i", points, points)
        if np.any(r2 == 0):
            raise QuadratureError("動径有理関数の分母が 0 になるノードがあります")
        values = values * (r2 ** (-p.power / 2))[:, None]
    return NodeField(space, values)


def from_callable(n: int, points: np.ndarray, fn: Callable[[np.ndarray], MPoly]) -> NodeField:
    """各ノードで MPoly を返す関数から場を作る (ノードごとの代入が必要な場合)"""
    polys = [fn(point) for point in points]
    space = KeySpace.from_polys(n, polys)
    return NodeField(space, np.array([space.to_vector(p) for p in polys]).reshape(len(polys), space.size))


def operator_matrix(space: KeySpace, op: Callable[[MPoly], MPoly]) -> Tuple[KeySpace, np.ndarray]:
    """線形作用素 op をキー空間上の行列 (出力キー数, 入力キー数) にする"""
    images = [op(space.basis_poly(i)) for i in range(space.size)]
    out = KeySpace.from_polys(space.n, images)
    matrix = np.zeros((out.size, space.size))
    for i, img in enumerate(images):
        matrix[:, i] = out.to_vector(img)
    return out, matrix


def apply_operator(field: NodeField, op: Callable[[MPoly], MPoly]) -> NodeField:
    out, matrix = operator_matrix(field.space, op)
    return NodeField(out, field.values @ matrix.T)


def _vector_product(vectors: np.ndarray, field: NodeField, side: str) -> NodeField:
    n = field.space.n
    result = None
    for i in range(n):
        e_i = Multivector.basis(n, i + 1, mode=FLOAT)
        if side == "left":
            part = apply_operator(field, lambda p, e=e_i: p.left_mul(e))
        else:
            part = apply_operator(field, lambda p, e=e_i: p.right_mul(e))
        part = NodeField(part.space, part.values * vectors[:, i : i + 1])
        result = part if result is None else result + part
    return result


def left_vector_product(vectors: np.ndarray, field: NodeField) -> NodeField:
    """ノードごとのベクトル n(x) を左から掛けた n(x) f(x)"""
    return _vector_product(vectors, field, "left")


def right_vector_product(field: NodeField, vectors: np.ndarray) -> NodeField:
    """g(x) n(x)"""
    return _vector_product(vectors, field, "right")


def pairing_tensor(a: KeySpace, b: KeySpace, space: Optional[VarSpace]) -> Tuple[KeySpace, np.ndarray]:
    """
    T[i, j, o]: a のキー i と b のキー j の Clifford 積を space で球面平均したときの
    出力キー o の係数。space が None なら平均をとらない単なる積
    """
    entries: Dict[Tuple[int, int, Key], float] = {}
    for i, (ea, ma) in enumerate(a.keys):
        for j, (eb, mb) in enumerate(b.keys):
            exps = tuple(p + q for p, q in zip(ea, eb))
            weight = 1.0
            if space is not None:
                weight = sphere_moment(space.part(exps), space.n, FLOAT)
                if weight == 0:
                    continue
                exps = _strip(exps, space)
            sign, m = bl.blade_product(ma, mb)
            key = (exps, m)
            entries[(i, j, key)] = entries.get((i, j, key), 0.0) + sign * weight
    out = KeySpace.of(a.n, (key for _, _, key in entries))
    tensor = np.zeros((a.size, b.size, out.size))
    for (i, j, key), value in entries.items():
        tensor[i, j, out.index[key]] += value
    return out, tensor


def integrate_pairing(left: NodeField, right: NodeField, weights: np.ndarray, space: Optional[VarSpace]) -> MPoly:
    """Σ_nodes w · (left, right)_space (球面平均で正規化した pairing)"""
    out, tensor = pairing_tensor(left.space, right.space, space)
    gram = (left.values * weights[:, None]).T @ right.values
    return out.to_poly(np.einsum("ab,abo->o", gram, tensor))


def integrate_pairing_chunked(
    left: Source,
    right: Source,
    points: np.ndarray,
    weights: np.ndarray,
    space: Optional[VarSpace],
    chunk: int = NODE_CHUNK,
) -> MPoly:
    """
    integrate_pairing と同じ値を、ノードを chunk 個ずつ評価して求める

    Gram 行列は塊ごとに足し込むので、(ノード数, キー数) の配列は塊の大きさまでしか作らない。
    from_callable で作る場のように塊ごとにキー空間が変わる場合は、キー空間の組ごとに足し込む。
    """
    if chunk < 1:
        raise QuadratureError(f"塊の大きさは 1 以上です: {chunk}")
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if len(points) == 0 or len(points) != len(weights):
        raise QuadratureError(f"ノード数と重みの数が合いません: {len(points)}, {len(weights)}")
    grams: Dict[Tuple[KeySpace, KeySpace], np.ndarray] = {}
    for start in range(0, len(points), chunk):
        block = points[start : start + chunk]
        a, b = left(block), right(block)
        gram = (a.values * weights[start : start + chunk, None]).T @ b.values
        pair = (a.space, b.space)
        if pair in grams:
            grams[pair] += gram
        else:
            grams[pair] = gram
    total: Optional[MPoly] = None
    for (a_space, b_space), gram in grams.items():
        out, tensor = pairing_tensor(a_space, b_space, space)
        part = out.to_poly(np.einsum("ab,abo->o", gram, tensor))
        total = part if total is None else total + part
    return total


def pairing_values(left: NodeField, right: NodeField, space: Optional[VarSpace]) -> NodeField:
    """ノードごとの (left, right)_space"""
    out, tensor = pairing_tensor(left.space, right.space, space)
    return NodeField(out, np.einsum("na,nb,abo->no", left.values, right.values, tensor))


def coefficient_gap(value: MPoly, expected: MPoly) -> Tuple[float, float]:
    """係数ごとの最大絶対誤差と、期待値の最大係数で割った相対誤差"""
    diff = (value - expected.to_float()).max_abs()
    scale = expected.max_abs()
    return diff, diff / scale if scale > 0 else diff

