"""
Rarita-Schwinger 作用素 R_k

左: R_k f = P_{k,u} D_x f。右: f R_k = (f D_x) P_{k,r}。
R_0 は Dirac 作用素そのもの。
"""

from dataclasses import dataclass, field
from typing import Union

from src.core.errors import MonogenicError
from src.models.monogenic.almansi_fischer import check_monogenic, projection_Pk, right_projection_Pk
from src.models.poly.mpoly import MPoly
from src.models.poly.radial import RadialRational
from src.models.poly.var_space import VarSpace

Field = Union[MPoly, RadialRational]

SIDES = ("left", "right")


@dataclass(frozen=True)
class RSFunction:
    """
    x の関数で、u について k 次斉次なモノジェニック多項式になるもの

    body は MPoly か x を動径空間とする RadialRational。構成時に
    モノジェニック性を確認する (validate=False で省略)。
    """

    body: Field
    k: int
    side: str = "left"
    space_name: str = "u"
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.side not in SIDES:
            raise MonogenicError(f"side は left か right です: {self.side}")
        if self.space_name == "x":
            raise MonogenicError("u 側の空間に x は使えません")
        if self.validate:
            check_monogenic(self.body, self.u, self.k, self.side)

    @property
    def n(self) -> int:
        return self.body.n

    @property
    def u(self) -> VarSpace:
        return VarSpace(self.space_name, self.n)

    @property
    def x(self) -> VarSpace:
        return VarSpace("x", self.n)


def apply_Rk(f: RSFunction) -> RSFunction:
    dx = f.body.dirac(f.x, f.side)
    if f.side == "left":
        out = projection_Pk(dx, f.k, f.u)
    else:
        out = right_projection_Pk(dx, f.k, f.u)
    return RSFunction(out, f.k, f.side, f.space_name, validate=f.validate)


def is_annihilated(f: RSFunction) -> bool:
    return apply_Rk(f).body.is_zero()
