# -*- coding: utf-8 -*-
"""
野性判定モジュール

σ = T_b·α が野性（wild）かどうかを、同値な2つの経路で判定します。

    - 商経路: α が単冪で、b の X/β(X) での像が商を生成する
    - 集合生成経路: α が単冪で、S = {b, β(b), β²(b), …} が X を生成する

ここで β = α − Id です。β は冪零なので S は有限集合になります。
「野性でない」という判定には必ず機械的に検証できる証明書が付きます。

Author: WildAbel Development Team
Created: 2025-08-08
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from src.algebra.exact_linalg import IntMatrix, IntPoly, charpoly, det, factor_irreducible, matrix_power
from src.algebra.unipotency import is_unipotent, non_unipotent_factor
from src.utils.errors import DimensionError, DomainError, InputError, NotInvertibleError, NotUnipotentError
from src.utils.logger import get_logger
from src.variety.abelian_model import (
    BlockEndomorphism, Point, VarietyModel, apply_endo, generates_point,
    generates_set, image_quotient, verify_relation,
)

# ロガーを取得
logger = get_logger(__name__)


class Route(Enum):
    """野性判定の経路"""
    QUOTIENT = "Quotient"
    SET_GENERATION = "SetGeneration"


@dataclass(frozen=True)
class Automorphism:
    """
    自己同型 σ = T_b·α

    Attributes:
        alpha (BlockEndomorphism): 群自己同型部分（ブロック行列式 ±1）
        b (Point): 平行移動の点
    """
    alpha: BlockEndomorphism
    b: Point

    @classmethod
    def translation(cls, model: VarietyModel, b: Point) -> 'Automorphism':
        """平行移動 T_b"""
        return cls(BlockEndomorphism.identity(model), b)

    def check_shape(self, model: VarietyModel):
        """
        Raises:
            DimensionError: 形状がモデルと一致しない場合
        """
        self.alpha.check_shape(model)
        self.b.check_shape(model)

    def require_invertible(self):
        """
        Raises:
            NotInvertibleError: いずれかのブロックで |det| ≠ 1 の場合
        """
        for index, m in enumerate(self.alpha.matrices):
            d = det(m)
            if abs(d) != 1:
                raise NotInvertibleError(f"ブロック {index} の α が整数上可逆ではありません（det = {d}）")

    @property
    def is_translation(self) -> bool:
        return self.alpha.is_identity

    def to_dict(self) -> Dict[str, Any]:
        return {"alpha": self.alpha.to_json(), "b": self.b.to_dict()}

    @classmethod
    def from_dict(cls, model: VarietyModel, data: Dict[str, Any]) -> 'Automorphism':
        if "alpha" in data and data["alpha"] is not None:
            alpha = BlockEndomorphism.from_json(data["alpha"])
        else:
            alpha = BlockEndomorphism.identity(model)
        b = Point.from_dict(model, data.get("b", {}))
        try:
            alpha.check_shape(model)
        except DimensionError as e:
            raise InputError(str(e))
        return cls(alpha, b)


@dataclass(frozen=True)
class NonUnipotentFactor:
    """
    証明書: α のあるブロックの特性多項式に x − 1 以外の既約因子がある

    Attributes:
        factor (IntPoly): 既約因子
        block (int): ブロック番号
    """
    factor: IntPoly
    block: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "NonUnipotentFactor",
            "factor": self.factor.to_json(),
            "factor_text": str(self.factor),
            "block": str(self.block),
        }


@dataclass(frozen=True)
class RelationVector:
    """
    証明書: S の全点を消す非零の関係ベクトル θ

    Attributes:
        theta (Tuple[int, ...]): 関係ベクトル（長さ n_block）
        block (int): ブロック番号
    """
    theta: Tuple[int, ...]
    block: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "RelationVector",
            "theta": [str(v) for v in self.theta],
            "block": str(self.block),
        }


Certificate = Union[NonUnipotentFactor, RelationVector]


@dataclass(frozen=True)
class WildnessVerdict:
    """
    野性判定の結果

    Attributes:
        wild (bool): 野性かどうか
        alpha_unipotent (bool): α が全ブロックで単冪かどうか
        route (Route): 使用した経路
        certificate (Optional[Certificate]): 野性でない場合の証明書
    """
    wild: bool
    alpha_unipotent: bool
    route: Route
    certificate: Optional[Certificate] = None

    def __post_init__(self):
        if self.wild and not self.alpha_unipotent:
            raise ValueError("野性なら α は単冪である必要があります")
        if self.wild == (self.certificate is not None):
            raise ValueError("証明書は野性でない場合にのみ付きます")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "wild": self.wild,
            "alpha_unipotent": self.alpha_unipotent,
            "route": self.route.value,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


# ----------------------------------------------------------------------
# 判定
# ----------------------------------------------------------------------

def _first_non_unipotent_block(alpha: BlockEndomorphism) -> Optional[NonUnipotentFactor]:
    for index, m in enumerate(alpha.matrices):
        if not is_unipotent(m):
            return NonUnipotentFactor(non_unipotent_factor(m), index)
    return None


def beta_of(model: VarietyModel, sigma: Automorphism) -> BlockEndomorphism:
    """β = α − Id"""
    return sigma.alpha - BlockEndomorphism.identity(model)


def orbit_set(model: VarietyModel, sigma: Automorphism) -> List[Point]:
    """
    S = {b, β(b), β²(b), …} を最初の零の手前まで返します

    β が冪零でなくても dim X + 1 個で打ち切ります。
    """
    beta = beta_of(model, sigma)
    points = [sigma.b]
    current = sigma.b
    for _ in range(model.dim):
        current = apply_endo(beta, current)
        if current.is_zero:
            break
        points.append(current)
    return points


def _quotient_route(model: VarietyModel, sigma: Automorphism) -> WildnessVerdict:
    quotient = image_quotient(model, beta_of(model, sigma))
    b_bar = quotient.project(sigma.b)
    result = generates_point(quotient.variety, b_bar)
    logger.debug(f"商経路: 商の次元 {quotient.dim}, 生成 {result.generates}")
    if result.generates:
        return WildnessVerdict(True, True, Route.QUOTIENT)

    # 商での関係 θ を θ·P に持ち上げると P·β = 0 より S 全体を消す
    projection = quotient.blocks[result.block_index].projection
    relation = IntMatrix.from_rows([result.relation]) @ projection
    theta = relation.row(0)
    return WildnessVerdict(False, True, Route.QUOTIENT, RelationVector(theta, result.block_index))


def _set_generation_route(model: VarietyModel, sigma: Automorphism) -> WildnessVerdict:
    points = orbit_set(model, sigma)
    result = generates_set(model, points)
    logger.debug(f"集合生成経路: |S| = {len(points)}, 生成 {result.generates}")
    if result.generates:
        return WildnessVerdict(True, True, Route.SET_GENERATION)
    return WildnessVerdict(False, True, Route.SET_GENERATION,
                           RelationVector(result.relation, result.block_index))


def is_wild(model: VarietyModel, sigma: Automorphism, route: Route = Route.QUOTIENT) -> WildnessVerdict:
    """
    σ = T_b·α が野性かどうかを判定します

    Args:
        model: 多様体モデル
        sigma: 自己同型
        route: 判定経路

    Returns:
        WildnessVerdict: 判定と、野性でない場合の証明書

    Raises:
        DimensionError: 形状が一致しない場合
        NotInvertibleError: α が整数上可逆でない場合
    """
    sigma.check_shape(model)
    sigma.require_invertible()

    non_unipotent = _first_non_unipotent_block(sigma.alpha)
    if non_unipotent is not None:
        logger.debug(f"α のブロック {non_unipotent.block} が単冪ではありません: {non_unipotent.factor}")
        return WildnessVerdict(False, False, route, non_unipotent)

    if route is Route.QUOTIENT:
        return _quotient_route(model, sigma)
    return _set_generation_route(model, sigma)


def verify_certificate(model: VarietyModel, sigma: Automorphism, verdict: WildnessVerdict) -> bool:
    """
    「野性でない」証明書を直接評価で検証します

    Returns:
        bool: 証明書が正しければ True（野性の判定には常に False）
    """
    certificate = verdict.certificate
    if isinstance(certificate, NonUnipotentFactor):
        m = sigma.alpha.matrices[certificate.block]
        factors = [f for f, _ in factor_irreducible(charpoly(m))]
        return certificate.factor in factors and certificate.factor != IntPoly.linear(1)
    if isinstance(certificate, RelationVector):
        return verify_relation(model, orbit_set(model, sigma), certificate.block, certificate.theta)
    return False


# ----------------------------------------------------------------------
# σ の冪
# ----------------------------------------------------------------------

def gamma_of(alpha: BlockEndomorphism, n: int) -> BlockEndomorphism:
    """γ = Σ_{i=0}^{n−1} α^i"""
    matrices = []
    for m in alpha.matrices:
        total = IntMatrix.zeros(m.rows, m.cols)
        power = IntMatrix.identity(m.rows)
        for _ in range(n):
            total = total + power
            power = power @ m
        matrices.append(total)
    return BlockEndomorphism(tuple(matrices))


def sigma_power(sigma: Automorphism, n: int) -> Automorphism:
    """
    σ^n = T_{γ(b)}·α^n を返します

    Raises:
        DomainError: n < 1 の場合
    """
    if n < 1:
        raise DomainError(f"冪指数は1以上である必要があります: {n}")
    alpha_n = BlockEndomorphism(tuple(matrix_power(m, n) for m in sigma.alpha.matrices))
    return Automorphism(alpha_n, apply_endo(gamma_of(sigma.alpha, n), sigma.b))


def quotient_image_of_power(model: VarietyModel, sigma: Automorphism, n: int) -> Point:
    """
    σ^n の平行移動部分 γ(b) の X/β(X) での像を返します

    α が単冪なら γ ≡ n·Id (mod β) なので、結果は n·b̄ に一致します。

    Raises:
        NotUnipotentError: α が単冪でない場合
        DomainError: n < 1 の場合
    """
    if _first_non_unipotent_block(sigma.alpha) is not None:
        raise NotUnipotentError("α が単冪ではありません")
    quotient = image_quotient(model, beta_of(model, sigma))
    return quotient.project(sigma_power(sigma, n).b)


def nonidentity_unipotent_exists(model: VarietyModel) -> bool:
    """
    Id 以外の単冪自己同型が存在するかどうかを返します

    モデルでは、同じ因子が2回以上現れる（重複度 ≥ 2）ことと同値です。
    """
    return any(block.multiplicity >= 2 for block in model.blocks)
