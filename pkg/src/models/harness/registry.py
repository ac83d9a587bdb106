"""
チェックの一覧と、番号付きの主張 (Lemma, Theorem, Corollary, Definition) との対応表

STATEMENT_MAP の各項目は、1 つ以上のチェック名か、実装上の位置づけを書いた
対象外 (OutOfScope) のどちらかに対応する。
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from src.core.errors import CheckError
from src.models.harness import conformal_checks, exact_checks, integral_checks  # noqa: F401  登録のため
from src.models.harness.check_spec import CATEGORIES, CheckSpec, registered


@dataclass(frozen=True)
class OutOfScope:
    reason: str


Coverage = Union[Tuple[str, ...], OutOfScope]

STATEMENT_MAP: Dict[str, Coverage] = {
    "Lemma 1": ("lemma1",),
    "Lemma 2": ("lemma2",),
    "Lemma 3": ("lemma3",),
    "Lemma 4": ("lemma4",),
    "Theorem 1": ("theorem1",),
    "Theorem 2": ("theorem2",),
    "Theorem 3": ("theorem3",),
    "Theorem 4": ("theorem4",),
    "Theorem 5": ("stokes",),
    "Definition 1": ("orthonormality", "reproducing"),
    "Lemma 5": ("lemma5",),
    "Theorem 6": ("rs-stokes",),
    "Corollary 1": ("cauchy-theorem",),
    "Cauchy's Theorem is conformally invariant": ("cauchy-theorem-conformal",),
    "Lemma 6": ("lemma6", "gegenbauer-integral"),
    "Theorem 7": ("borel-pompeiu", "borel-pompeiu-dirac"),
    "Theorem 8": ("cif",),
    "Cauchy's Integral Formula is conformally invariant": ("cif-conformal",),
    "Theorem 9": ("tk-delta",),
    "Definition 2": ("tk-delta", "tk-inverse"),
    "Theorem 10": ("tk-inverse",),
    "Theorem 11": ("kernel-conformal",),
}

# 番号の付いていない本文中の恒等式
SUPPORTING_CHECKS = (
    "dirac-square",
    "almansi-fischer",
    "projection-formula",
    "orthonormality",
    "reproducing",
    "rk-annihilates-Zk",
    "ek-left",
    "ek-right",
    "fk-two-representations",
    "zk-reflection",
    "dirac-conformal",
)


def all_checks() -> Dict[str, CheckSpec]:
    """カテゴリ順 (exact, conformal, integral) に並べた登録済みチェック"""
    specs = registered()
    ordered = sorted(specs.values(), key=lambda s: CATEGORIES.index(s.category))
    return {spec.name: spec for spec in ordered}


def get_check(name: str) -> CheckSpec:
    specs = registered()
    if name not in specs:
        raise CheckError(f"未知のチェックです: {name}")
    return specs[name]


def resolve(names: Union[str, Sequence[str]]) -> List[CheckSpec]:
    """
    "all"、カンマ区切りの文字列、または名前のリストから実行順のチェックを得る

    重複した名前は 1 回だけ実行する。
    """
    if isinstance(names, str):
        if names == "all":
            return list(all_checks().values())
        names = [name.strip() for name in names.split(",") if name.strip()]
    if not names:
        raise CheckError("チェックが指定されていません")
    if "all" in names:
        return list(all_checks().values())
    seen: Dict[str, CheckSpec] = {}
    for name in names:
        seen.setdefault(name, get_check(name))
    return list(seen.values())


def statements_for(check_name: str) -> List[str]:
    """チェックが裏付ける主張"""
    return [
        statement
        for statement, coverage in STATEMENT_MAP.items()
        if not isinstance(coverage, OutOfScope) and check_name in coverage
    ]


def coverage_problems() -> List[str]:
    """対応表の不整合 (存在しないチェック名、どこからも参照されないチェック)"""
    specs = registered()
    problems = []
    referenced = set(SUPPORTING_CHECKS)
    for statement, coverage in STATEMENT_MAP.items():
        if isinstance(coverage, OutOfScope):
            continue
        if not coverage:
            problems.append(f"{statement} に対応するチェックがありません")
        for name in coverage:
            referenced.add(name)
            if name not in specs:
                problems.append(f"{statement} のチェック {name} は登録されていません")
    for name in specs:
        if name not in referenced:
            problems.append(f"チェック {name} が対応表にありません")
    return problems
