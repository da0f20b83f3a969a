# -*- coding: utf-8 -*-
"""
分類モジュール

単冪性・野性・Num への作用・σ-豊富性・GK次元をまとめ、
射影的単純性と GK次元による分類ラベルを付けた解析レポートを作ります。

野性判定は2つの経路で必ず両方計算し、食い違えば内部整合性エラーとします。
「野性でない」証明書はレポートに載せる前に直接評価で再検証します。

Author: WildAbel Development Team
Created: 2025-08-10
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from src.utils.errors import ConsistencyError, NoSigmaAmpleSheafError
from src.utils.logger import get_logger
from src.variety.abelian_model import VarietyModel
from src.variety.num_action import (
    AmplenessVerdict, GkResult, NumAction, ampleness_verdict, gk_dimension, p_sigma,
)
from src.variety.wildness import Automorphism, Route, WildnessVerdict, is_wild, verify_certificate

# ロガーを取得
logger = get_logger(__name__)

SCHEMA_VERSION = "1"

# (dim X, 平行移動か) → (ラベル, GK次元)
CLASSIFICATION_ROWS = {
    (1, True): ("gk2-translation-dim1", 2),
    (2, True): ("gk3-translation-dim2", 3),
    (3, True): ("gk4-translation-dim3", 4),
    (4, True): ("gk5-translation-dim4", 5),
    (2, False): ("gk5-unipotent-dim2", 5),
}


class ProjectiveSimplicity(Enum):
    YES = "Yes"
    NO = "No"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class ProjectiveSimplicityVerdict:
    """
    射影的単純性の判定

    Attributes:
        verdict (ProjectiveSimplicity): 判定
        reason (Optional[str]): NOT_APPLICABLE の理由
    """
    verdict: ProjectiveSimplicity
    reason: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict.value, "reason": self.reason}


@dataclass(frozen=True)
class AnalysisReport:
    """
    解析レポート

    Attributes:
        model (VarietyModel): 入力モデル
        automorphism (Automorphism): 入力の自己同型
        alpha_unipotent (bool): α が単冪かどうか
        wild (WildnessVerdict): 野性判定（商経路）
        set_generation (WildnessVerdict): 集合生成経路の判定
        num_action (NumAction): Num(X) への作用
        j (Optional[int]): 不変量 j
        gk (GkResult): GK次元
        sigma_ample_verdict (AmplenessVerdict): σ-豊富性
        projectively_simple (ProjectiveSimplicityVerdict): 射影的単純性
        classification_label (Optional[str]): 分類ラベル
    """
    model: VarietyModel
    automorphism: Automorphism
    alpha_unipotent: bool
    wild: WildnessVerdict
    set_generation: WildnessVerdict
    num_action: NumAction
    j: Optional[int]
    gk: GkResult
    sigma_ample_verdict: AmplenessVerdict
    projectively_simple: ProjectiveSimplicityVerdict
    classification_label: Optional[str]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "model": self.model.to_dict(),
            "automorphism": self.automorphism.to_dict(),
            "alpha_unipotent": self.alpha_unipotent,
            "wild": self.wild.to_dict(),
            "routes": {
                Route.QUOTIENT.value: self.wild.wild,
                Route.SET_GENERATION.value: self.set_generation.wild,
            },
            "num_action": self.num_action.to_dict(),
            "j": None if self.j is None else str(self.j),
            "gk": self.gk.to_dict(),
            "sigma_ample_verdict": self.sigma_ample_verdict.value,
            "projectively_simple": self.projectively_simple.to_dict(),
            "classification_label": self.classification_label,
        }


def projective_simplicity(wild: bool, ampleness: AmplenessVerdict) -> ProjectiveSimplicityVerdict:
    """
    射影的単純性を判定します

    σ-豊富な可逆層があるときに限り、射影的単純 ⟺ 野性です。
    """
    if ampleness is AmplenessVerdict.NO_SIGMA_AMPLE_EXISTS:
        return ProjectiveSimplicityVerdict(
            ProjectiveSimplicity.NOT_APPLICABLE,
            "no sigma-ample invertible sheaf exists; B(X,L,sigma) is not controlled",
        )
    if ampleness is AmplenessVerdict.UNKNOWN:
        return ProjectiveSimplicityVerdict(
            ProjectiveSimplicity.NOT_APPLICABLE,
            "sigma-ampleness is unknown for this model",
        )
    return ProjectiveSimplicityVerdict(ProjectiveSimplicity.YES if wild else ProjectiveSimplicity.NO)


def classification_label(model: VarietyModel, sigma: Automorphism,
                         wild: bool, gk: GkResult) -> Optional[str]:
    """
    GK次元の分類表に一致する行のラベルを返します

    Raises:
        ConsistencyError: 一致した行の GK次元と計算結果が食い違う場合
    """
    if not wild:
        return None
    row = CLASSIFICATION_ROWS.get((model.dim, sigma.is_translation))
    if row is None:
        return None
    label, expected_gk = row
    if gk.exact != expected_gk:
        raise ConsistencyError(f"{label}: GK次元 {gk.exact} が期待値 {expected_gk} と一致しません")
    return label


def analyze(model: VarietyModel, sigma: Automorphism) -> AnalysisReport:
    """
    モデルと自己同型を解析してレポートを作ります

    Args:
        model: 多様体モデル
        sigma: 自己同型

    Returns:
        AnalysisReport: 解析結果

    Raises:
        ModelError: モデルが不正な場合（CM因子を含む）
        NotInvertibleError: α が整数上可逆でない場合
        ConsistencyError: 経路が食い違う、または証明書の再検証に失敗した場合
    """
    model.require_valid()
    logger.info(f"解析開始: dim X = {model.dim}, ブロック数 {len(model.blocks)}")

    by_quotient = is_wild(model, sigma, Route.QUOTIENT)
    by_set = is_wild(model, sigma, Route.SET_GENERATION)
    if by_quotient.wild != by_set.wild:
        raise ConsistencyError(
            f"野性判定の経路が食い違います: 商経路 {by_quotient.wild}, 集合生成経路 {by_set.wild}"
        )
    for verdict in (by_quotient, by_set):
        if not verdict.wild and not verify_certificate(model, sigma, verdict):
            raise ConsistencyError(f"{verdict.route.value} 経路の証明書を検証できません: {verdict.certificate}")

    action = p_sigma(model, sigma)
    ampleness = ampleness_verdict(action, sigma.alpha)
    try:
        gk = gk_dimension(model, sigma, action)
    except NoSigmaAmpleSheafError as e:
        logger.warning(str(e))
        gk = GkResult(None, None, None, None, "no sigma-ample invertible sheaf")

    report = AnalysisReport(
        model=model,
        automorphism=sigma,
        alpha_unipotent=by_quotient.alpha_unipotent,
        wild=by_quotient,
        set_generation=by_set,
        num_action=action,
        j=gk.j,
        gk=gk,
        sigma_ample_verdict=ampleness,
        projectively_simple=projective_simplicity(by_quotient.wild, ampleness),
        classification_label=classification_label(model, sigma, by_quotient.wild, gk),
    )
    logger.info(f"解析完了: wild = {by_quotient.wild}, ラベル = {report.classification_label}")
    return report
