# -*- coding: utf-8 -*-
"""
Num(X) への作用モジュール

自己同型 σ が数値的同値類の群 Num(X) に引き起こす作用 P_σ と、
そこから得られる σ-豊富性の判定・不変量 j・GK次元を計算します。

P_σ が明示的に求まるのは次の場合です。
    - σ が平行移動: 恒等作用
    - dim X = 1: Num(X) = Z で次数は保たれるので恒等作用
    - α = −Id: (−1)² = 1 より恒等作用
    - X = E×E: 基底 {0×E, E×0, 対角} に関する3×3行列

P は反変的に乗法的です: P(MN) = P(N)·P(M)。

Author: WildAbel Development Team
Created: 2025-08-09
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from src.algebra.exact_linalg import IntMatrix, det
from src.algebra.unipotency import is_quasi_unipotent, largest_jordan_block_quasi, quasi_unipotency
from src.utils.errors import ConsistencyError, DimensionError, NoSigmaAmpleSheafError, NotInvertibleError
from src.utils.logger import get_logger
from src.variety.abelian_model import BlockEndomorphism, VarietyModel
from src.variety.wildness import Automorphism

# ロガーを取得
logger = get_logger(__name__)

UNAVAILABLE_REASON = "no Num action formula for this model"


def p_matrix(m: IntMatrix, allow_isogeny: bool = False) -> IntMatrix:
    """
    E×E 上の α_M が Num(E×E) に引き起こす3×3行列を返します

    M = [[a, b], [c, d]] に対し、基底 {C¹ = 0×E, C² = E×0, C³ = 対角} で

        [[a²−ab, c²−cd, (a+c)²−(a+c)(b+d)],
         [b²−ab, d²−cd, (b+d)²−(a+c)(b+d)],
         [ab,    cd,    (a+c)(b+d)]]

    Args:
        m: 2×2 整数行列
        allow_isogeny: True なら |det M| ≠ 1 も許します（スカラー倍の検証用）

    Raises:
        DimensionError: 2×2 でない場合
        NotInvertibleError: |det M| ≠ 1 で allow_isogeny が False の場合
    """
    if m.shape != (2, 2):
        raise DimensionError(f"2×2 行列が必要です: {m.rows}×{m.cols}")
    if not allow_isogeny and abs(det(m)) != 1:
        raise NotInvertibleError(f"自己同型ではありません（det = {det(m)}）")

    a, b, c, d = m.entries
    s, t = a + c, b + d
    return IntMatrix.from_rows([
        [a * a - a * b, c * c - c * d, s * s - s * t],
        [b * b - a * b, d * d - c * d, t * t - s * t],
        [a * b, c * d, s * t],
    ])


class NumActionKind(Enum):
    """Num(X) への作用の種類"""
    IDENTITY = "IdentityOnNum"
    EXPLICIT = "ExplicitMatrix"
    UNAVAILABLE = "Unavailable"


@dataclass(frozen=True)
class NumAction:
    """
    Num(X) への作用 P_σ

    Attributes:
        kind (NumActionKind): 作用の種類
        matrix (Optional[IntMatrix]): EXPLICIT のときの行列
        reason (Optional[str]): IDENTITY / UNAVAILABLE の根拠
    """
    kind: NumActionKind
    matrix: Optional[IntMatrix] = None
    reason: Optional[str] = None

    @classmethod
    def identity(cls, reason: str = "translation") -> 'NumAction':
        return cls(NumActionKind.IDENTITY, None, reason)

    @classmethod
    def explicit(cls, matrix: IntMatrix) -> 'NumAction':
        if not matrix.is_square:
            raise DimensionError("Num への作用は正方行列である必要があります")
        return cls(NumActionKind.EXPLICIT, matrix, None)

    @classmethod
    def unavailable(cls, reason: str = UNAVAILABLE_REASON) -> 'NumAction':
        return cls(NumActionKind.UNAVAILABLE, None, reason)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "matrix": None if self.matrix is None else self.matrix.to_json(),
            "reason": self.reason,
        }


def _is_e_squared(model: VarietyModel) -> bool:
    return (len(model.blocks) == 1
            and model.blocks[0].multiplicity == 2
            and model.blocks[0].factor_dim == 1)


def p_sigma(model: VarietyModel, sigma: Automorphism) -> NumAction:
    """
    σ = T_b·α の Num(X) への作用を返します

    平行移動部分は Num に自明に作用するので α だけで決まります。

    Raises:
        DimensionError: 形状がモデルと一致しない場合
    """
    sigma.check_shape(model)
    alpha = sigma.alpha

    if alpha.is_identity:
        return NumAction.identity("translation")
    if model.dim == 1:
        return NumAction.identity("Num(X) = Z")
    if alpha == BlockEndomorphism.scalar(model, -1):
        return NumAction.identity("alpha = -Id")
    if _is_e_squared(model):
        return NumAction.explicit(p_matrix(alpha.matrices[0]))

    logger.info(f"Num(X) への作用は計算できません: dim X = {model.dim}, ブロック数 {len(model.blocks)}")
    return NumAction.unavailable()


# ----------------------------------------------------------------------
# σ-豊富性
# ----------------------------------------------------------------------

class AmplenessVerdict(Enum):
    """σ-豊富な可逆層についての判定"""
    ALL_AMPLE_ARE_SIGMA_AMPLE = "AllAmpleAreSigmaAmple"
    NO_SIGMA_AMPLE_EXISTS = "NoSigmaAmpleExists"
    UNKNOWN = "Unknown"


def ampleness_verdict(action: NumAction, alpha: Optional[BlockEndomorphism] = None) -> AmplenessVerdict:
    """
    Num への作用から σ-豊富性を判定します

    P_σ が準単冪ならすべての豊富な可逆層が σ-豊富であり、そうでなければ
    σ-豊富な可逆層は存在しません。P_σ が不明でも、α が準単冪なら
    σ は Num 上準単冪なので前者になります。

    Args:
        action: Num(X) への作用
        alpha: 自己同型の α（P_σ が不明なときの補助）
    """
    if action.kind is NumActionKind.IDENTITY:
        return AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
    if action.kind is NumActionKind.EXPLICIT:
        if is_quasi_unipotent(action.matrix):
            return AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
        return AmplenessVerdict.NO_SIGMA_AMPLE_EXISTS
    if alpha is not None and all(is_quasi_unipotent(m) for m in alpha.matrices):
        return AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
    return AmplenessVerdict.UNKNOWN


# ----------------------------------------------------------------------
# GK次元
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GkResult:
    """
    GK次元の値または評価

    Attributes:
        exact (Optional[int]): 確定値（lower = upper のとき）
        lower (Optional[int]): 下界 j + dim X + 1
        upper (Optional[int]): 上界 j(dim X − 1) + dim X + 1
        j (Optional[int]): P_σ の最大Jordanブロックのサイズ − 1
        note (Optional[str]): 補足（計算できない場合は "unknown"）
    """
    exact: Optional[int]
    lower: Optional[int]
    upper: Optional[int]
    j: Optional[int]
    note: Optional[str] = None

    @classmethod
    def unknown(cls) -> 'GkResult':
        return cls(None, None, None, None, "unknown")

    def to_dict(self) -> Dict[str, Any]:
        def enc(v):
            return None if v is None else str(v)
        return {
            "exact": enc(self.exact),
            "lower": enc(self.lower),
            "upper": enc(self.upper),
            "j": enc(self.j),
            "note": self.note,
        }


def gk_bounds(j: int, dim: int) -> GkResult:
    """
    j と dim X から GK次元の評価を作ります

        j + dim X + 1 ≤ GKdim ≤ j(dim X − 1) + dim X + 1

    Raises:
        ConsistencyError: j が奇数、または dim X = 2 で j ∉ {0, 2} の場合
    """
    if j % 2:
        raise ConsistencyError(f"j は偶数である必要があります: j = {j}")
    if dim == 2 and j not in (0, 2):
        raise ConsistencyError(f"dim X = 2 では j ∈ {{0, 2}} である必要があります: j = {j}")
    lower = j + dim + 1
    upper = j * (dim - 1) + dim + 1
    exact = lower if lower == upper else None
    return GkResult(exact, lower, upper, j)


def j_invariant(p: IntMatrix) -> int:
    """
    準単冪な P の最大Jordanブロックのサイズ − 1

    Raises:
        NoSigmaAmpleSheafError: P が準単冪でない場合
    """
    verdict = quasi_unipotency(p)
    if not verdict.is_quasi_unipotent:
        raise NoSigmaAmpleSheafError(
            f"P_σ が準単冪ではないため σ-豊富な可逆層は存在しません（因子 {verdict.witness}）"
        )
    return largest_jordan_block_quasi(p) - 1


def gk_dimension(model: VarietyModel, sigma: Automorphism,
                 action: Optional[NumAction] = None) -> GkResult:
    """
    B(X, L, σ) の GK次元を計算または評価します

    Args:
        model: 多様体モデル
        sigma: 自己同型
        action: 計算済みの P_σ（省略時は p_sigma で計算）

    Returns:
        GkResult: P_σ が不明なら全項目 None で note = "unknown"

    Raises:
        NoSigmaAmpleSheafError: P_σ が準単冪でない場合
    """
    if action is None:
        action = p_sigma(model, sigma)

    if action.kind is NumActionKind.UNAVAILABLE:
        return GkResult.unknown()
    if action.kind is NumActionKind.IDENTITY:
        return gk_bounds(0, model.dim)

    j = j_invariant(action.matrix)
    result = gk_bounds(j, model.dim)
    logger.debug(f"GK: j = {j}, 範囲 [{result.lower}, {result.upper}]")
    return result
