# -*- coding: utf-8 -*-
"""
アーベル多様体モデル

X = ∏ E_i^{n_i}（互いに非同種な単純因子、End(E_i) = Z、Hom(E_i, E_j) = 0）を
記号的に表現し、点の生成判定と β(X) による商を計算します。

モデルの公理:
    - 各単純因子の自己準同型環は Z であり、因子間の Hom は 0 です。
      したがって End(X) = ∏ M_{n_i}(Z) となります。CM因子は入力検証で拒否します。
    - 宣言された自由生成元は「一般の位置にある点」であり、
      生成元の間の関係は宣言された捩れ関係だけです。

この公理のもとで、点の組が X を生成するかどうかは各ブロックの
自由部分の係数行列の左核が自明かどうかで決まります。自由部分の左核が
非自明なら、その有限指数部分格子が捩れ部分も消すため、捩れ部分は判定を変えません
（証明書は捩れ部分まで含めて厳密に作ります）。

Author: WildAbel Development Team
Created: 2025-08-07
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.algebra.exact_linalg import IntMatrix, left_kernel, snf
from src.utils.errors import DimensionError, InputError, ModelError
from src.utils.logger import get_logger

# ロガーを取得
logger = get_logger(__name__)


def _parse_int(value: Any, what: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{what} は整数である必要があります: {value!r}")
    try:
        return int(str(value))
    except ValueError:
        raise InputError(f"{what} は整数である必要があります: {value!r}")


# ----------------------------------------------------------------------
# 有限生成アーベル群
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FGAbelianGroup:
    """
    有限生成アーベル群 Z^r ⊕ Z/m₁ ⊕ … ⊕ Z/m_k

    単純因子上で宣言された点の生成する部分群をモデル化します。

    Attributes:
        free_rank (int): 自由部分の階数 r
        torsion_invariants (Tuple[int, ...]): 捩れ不変量 m₁ | m₂ | …（各 ≥ 2）
    """
    free_rank: int = 0
    torsion_invariants: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "torsion_invariants", tuple(int(m) for m in self.torsion_invariants))

    def validate(self) -> Tuple[bool, List[str]]:
        """
        群の表示の妥当性を検証します

        Returns:
            Tuple[bool, List[str]]: (検証結果, エラーメッセージリスト)
        """
        errors = []
        if self.free_rank < 0:
            errors.append("free_rank は0以上である必要があります")
        for m in self.torsion_invariants:
            if m < 2:
                errors.append(f"捩れ不変量は2以上である必要があります: {m}")
        invariants = self.torsion_invariants
        for a, b in zip(invariants, invariants[1:]):
            if a >= 2 and b % a != 0:
                errors.append(f"捩れ不変量が割り算の鎖になっていません: {a} ∤ {b}")
        return len(errors) == 0, errors

    @property
    def exponent(self) -> int:
        """捩れ部分群を消す最小の正整数"""
        return self.torsion_invariants[-1] if self.torsion_invariants else 1

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> 'GroupElement':
        free = tuple(free) if free else (0,) * self.free_rank
        torsion = tuple(torsion) if torsion else (0,) * len(self.torsion_invariants)
        return GroupElement(self, free, torsion)

    def zero(self) -> 'GroupElement':
        return self.element()

    def generator(self, i: int) -> 'GroupElement':
        """第 i 自由生成元"""
        return self.element(tuple(1 if k == i else 0 for k in range(self.free_rank)))

    def torsion_generator(self, i: int) -> 'GroupElement':
        """第 i 捩れ生成元（位数 m_i）"""
        return self.element(torsion=tuple(1 if k == i else 0 for k in range(len(self.torsion_invariants))))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "free_rank": self.free_rank,
            "torsion": [str(m) for m in self.torsion_invariants],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FGAbelianGroup':
        return cls(
            free_rank=_parse_int(data.get("free_rank", 0), "free_rank"),
            torsion_invariants=tuple(_parse_int(m, "torsion") for m in data.get("torsion", [])),
        )

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{m}" for m in self.torsion_invariants]
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    """
    有限生成アーベル群の元

    捩れ座標は常に [0, m_i) に正規化され、等価性は座標ごとの比較です。

    Attributes:
        group (FGAbelianGroup): 所属する群
        free_coords (Tuple[int, ...]): 自由座標
        torsion_coords (Tuple[int, ...]): 捩れ座標
    """
    group: FGAbelianGroup
    free_coords: Tuple[int, ...]
    torsion_coords: Tuple[int, ...]

    def __post_init__(self):
        free = tuple(int(v) for v in self.free_coords)
        torsion = tuple(int(v) for v in self.torsion_coords)
        if len(free) != self.group.free_rank:
            raise DimensionError(f"自由座標の長さ {len(free)} が階数 {self.group.free_rank} と一致しません")
        if len(torsion) != len(self.group.torsion_invariants):
            raise DimensionError("捩れ座標の長さが不変量の個数と一致しません")
        torsion = tuple(v % m for v, m in zip(torsion, self.group.torsion_invariants))
        object.__setattr__(self, "free_coords", free)
        object.__setattr__(self, "torsion_coords", torsion)

    def _require_same_group(self, other: 'GroupElement'):
        if self.group != other.group:
            raise DimensionError("異なる群の元は加算できません")

    def __add__(self, other: 'GroupElement') -> 'GroupElement':
        self._require_same_group(other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free_coords, other.free_coords)),
            tuple(a + b for a, b in zip(self.torsion_coords, other.torsion_coords)),
        )

    def __neg__(self) -> 'GroupElement':
        return self.scale(-1)

    def __sub__(self, other: 'GroupElement') -> 'GroupElement':
        return self + (-other)

    def scale(self, k: int) -> 'GroupElement':
        """整数倍 k·g"""
        return GroupElement(
            self.group,
            tuple(k * v for v in self.free_coords),
            tuple(k * v for v in self.torsion_coords),
        )

    def __rmul__(self, k: int) -> 'GroupElement':
        return self.scale(k)

    @property
    def is_zero(self) -> bool:
        return not any(self.free_coords) and not any(self.torsion_coords)

    def to_dict(self) -> Dict[str, List[str]]:
        return {
            "free": [str(v) for v in self.free_coords],
            "torsion": [str(v) for v in self.torsion_coords],
        }

    @classmethod
    def from_dict(cls, group: FGAbelianGroup, data: Dict[str, Any]) -> 'GroupElement':
        free = tuple(_parse_int(v, "free") for v in data.get("free", []))
        torsion = tuple(_parse_int(v, "torsion") for v in data.get("torsion", []))
        if not free:
            free = (0,) * group.free_rank
        if not torsion:
            torsion = (0,) * len(group.torsion_invariants)
        try:
            return cls(group, free, torsion)
        except DimensionError as e:
            raise InputError(str(e))


def combine(group: FGAbelianGroup, coefficients: Sequence[int],
            elements: Sequence[GroupElement]) -> GroupElement:
    """一次結合 Σ c_j·g_j"""
    total = group.zero()
    for c, g in zip(coefficients, elements):
        if c:
            total = total + g.scale(c)
    return total


# ----------------------------------------------------------------------
# 多様体モデル・点・自己準同型
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class VarietyBlock:
    """
    単純因子 E_i の n_i 乗ブロック

    Attributes:
        factor_id (str): 因子の識別子（相異なる＝互いに非同種）
        multiplicity (int): 重複度 n_i
        point_group (FGAbelianGroup): 宣言された点の群
        factor_dim (int): 単純因子の次元
        cm (bool): CMを持つ因子かどうか（モデル外なので拒否されます）
    """
    factor_id: str
    multiplicity: int
    point_group: FGAbelianGroup = field(default_factory=FGAbelianGroup)
    factor_dim: int = 1
    cm: bool = False

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "factor": self.factor_id,
            "factor_dim": self.factor_dim,
            "multiplicity": self.multiplicity,
            "point_group": self.point_group.to_dict(),
        }
        if self.cm:
            data["cm"] = True
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'VarietyBlock':
        return cls(
            factor_id=str(data.get("factor", "")),
            multiplicity=_parse_int(data.get("multiplicity", 1), "multiplicity"),
            point_group=FGAbelianGroup.from_dict(data.get("point_group", {})),
            factor_dim=_parse_int(data.get("factor_dim", 1), "factor_dim"),
            cm=bool(data.get("cm", False)),
        )


@dataclass(frozen=True)
class VarietyModel:
    """
    アーベル多様体モデル X = ∏ E_i^{n_i}

    Attributes:
        blocks (Tuple[VarietyBlock, ...]): ブロックの列
    """
    blocks: Tuple[VarietyBlock, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @classmethod
    def single(cls, multiplicity: int = 1, free_rank: int = 1,
               torsion: Sequence[int] = (), factor_id: str = "E", factor_dim: int = 1) -> 'VarietyModel':
        """単一因子 E^n のモデルを作る簡便法"""
        group = FGAbelianGroup(free_rank, tuple(torsion))
        return cls((VarietyBlock(factor_id, multiplicity, group, factor_dim),))

    @property
    def dim(self) -> int:
        """dim X = Σ n_i · factor_dim_i"""
        return sum(b.multiplicity * b.factor_dim for b in self.blocks)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(b.multiplicity for b in self.blocks)

    def validate(self) -> Tuple[bool, List[str]]:
        """
        モデルの妥当性を検証します

        Returns:
            Tuple[bool, List[str]]: (検証結果, エラーメッセージリスト)
        """
        errors = []
        if not self.blocks:
            errors.append("ブロックが1つ以上必要です")

        ids = [b.factor_id for b in self.blocks]
        if len(set(ids)) != len(ids):
            errors.append("因子の識別子が重複しています（同種な因子は1ブロックにまとめてください）")

        for b in self.blocks:
            if not b.factor_id:
                errors.append("因子の識別子が空です")
            if b.multiplicity < 1:
                errors.append(f"{b.factor_id}: 重複度は1以上である必要があります")
            if b.factor_dim < 1:
                errors.append(f"{b.factor_id}: factor_dim は1以上である必要があります")
            if b.cm:
                errors.append(f"{b.factor_id}: CM因子はモデルの対象外です（End = Z のみ）")
            ok, group_errors = b.point_group.validate()
            errors.extend(f"{b.factor_id}: {e}" for e in group_errors)

        if self.blocks and self.dim < 1:
            errors.append("dim X は1以上である必要があります")

        return len(errors) == 0, errors

    def require_valid(self) -> 'VarietyModel':
        is_valid, errors = self.validate()
        if not is_valid:
            raise ModelError("多様体モデルが不正です", errors)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {"blocks": [b.to_dict() for b in self.blocks]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'VarietyModel':
        blocks = data.get("blocks")
        if not isinstance(blocks, list):
            raise InputError("variety.blocks は配列である必要があります")
        return cls(tuple(VarietyBlock.from_dict(b) for b in blocks))


@dataclass(frozen=True)
class Point:
    """
    X の点（ブロックごとに n_i 個の群の元）

    Attributes:
        blocks (Tuple[Tuple[GroupElement, ...], ...]): ブロックごとの座標
    """
    blocks: Tuple[Tuple[GroupElement, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))

    @classmethod
    def zero(cls, model: VarietyModel) -> 'Point':
        return cls(tuple((b.point_group.zero(),) * b.multiplicity for b in model.blocks))

    def check_shape(self, model: VarietyModel):
        """
        Raises:
            DimensionError: ブロック構造がモデルと一致しない場合
        """
        if len(self.blocks) != len(model.blocks):
            raise DimensionError("点のブロック数がモデルと一致しません")
        for entries, block in zip(self.blocks, model.blocks):
            if len(entries) != block.multiplicity:
                raise DimensionError(f"{block.factor_id}: 座標数が重複度 {block.multiplicity} と一致しません")
            if any(g.group != block.point_group for g in entries):
                raise DimensionError(f"{block.factor_id}: 座標の群がブロックの群と一致しません")

    def __add__(self, other: 'Point') -> 'Point':
        return Point(tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.blocks, other.blocks)))

    def scale(self, k: int) -> 'Point':
        return Point(tuple(tuple(g.scale(k) for g in entries) for entries in self.blocks))

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for entries in self.blocks for g in entries)

    def to_dict(self) -> Dict[str, Any]:
        return {"blocks": [[g.to_dict() for g in entries] for entries in self.blocks]}

    @classmethod
    def from_dict(cls, model: VarietyModel, data: Dict[str, Any]) -> 'Point':
        blocks = data.get("blocks")
        if not isinstance(blocks, list) or len(blocks) != len(model.blocks):
            raise InputError("点のブロック数がモデルと一致しません")
        point = cls(tuple(
            tuple(GroupElement.from_dict(block.point_group, g) for g in entries)
            for entries, block in zip(blocks, model.blocks)
        ))
        try:
            point.check_shape(model)
        except DimensionError as e:
            raise InputError(str(e))
        return point


@dataclass(frozen=True)
class BlockEndomorphism:
    """
    ブロック対角な自己準同型 End(X) = ∏ M_{n_i}(Z)

    Attributes:
        matrices (Tuple[IntMatrix, ...]): ブロックごとの n_i × n_i 整数行列
    """
    matrices: Tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))

    @classmethod
    def identity(cls, model: VarietyModel) -> 'BlockEndomorphism':
        return cls(tuple(IntMatrix.identity(n) for n in model.multiplicities))

    @classmethod
    def scalar(cls, model: VarietyModel, value: int) -> 'BlockEndomorphism':
        return cls(tuple(IntMatrix.scalar(n, value) for n in model.multiplicities))

    def check_shape(self, model: VarietyModel):
        """
        Raises:
            DimensionError: ブロック構造がモデルと一致しない場合
        """
        if len(self.matrices) != len(model.blocks):
            raise DimensionError("自己準同型のブロック数がモデルと一致しません")
        for m, block in zip(self.matrices, model.blocks):
            if m.shape != (block.multiplicity, block.multiplicity):
                raise DimensionError(
                    f"{block.factor_id}: 行列の形状 {m.shape} が重複度 {block.multiplicity} と一致しません"
                )

    def __sub__(self, other: 'BlockEndomorphism') -> 'BlockEndomorphism':
        return BlockEndomorphism(tuple(a - b for a, b in zip(self.matrices, other.matrices)))

    def __add__(self, other: 'BlockEndomorphism') -> 'BlockEndomorphism':
        return BlockEndomorphism(tuple(a + b for a, b in zip(self.matrices, other.matrices)))

    def __matmul__(self, other: 'BlockEndomorphism') -> 'BlockEndomorphism':
        """合成 self ∘ other"""
        return BlockEndomorphism(tuple(a @ b for a, b in zip(self.matrices, other.matrices)))

    @property
    def is_identity(self) -> bool:
        return all(m == IntMatrix.identity(m.rows) for m in self.matrices)

    @property
    def is_zero(self) -> bool:
        return all(m.is_zero for m in self.matrices)

    def to_json(self) -> List[List[List[str]]]:
        return [m.to_json() for m in self.matrices]

    @classmethod
    def from_json(cls, data: Any) -> 'BlockEndomorphism':
        if not isinstance(data, list):
            raise InputError("alpha はブロックごとの行列の配列である必要があります")
        return cls(tuple(IntMatrix.from_json(m) for m in data))


def _apply_matrix(m: IntMatrix, group: FGAbelianGroup,
                  entries: Sequence[GroupElement]) -> Tuple[GroupElement, ...]:
    """整数行列を群の元の列ベクトルに作用させます（長方行列も可）"""
    return tuple(combine(group, m.row(i), entries) for i in range(m.rows))


def apply_endo(phi: BlockEndomorphism, p: Point) -> Point:
    """
    自己準同型を点に作用させます

    ブロックごとに、出力の第 i 座標は Σ_j M[i][j]·p_j です。

    Raises:
        DimensionError: 形状が一致しない場合
    """
    if len(phi.matrices) != len(p.blocks):
        raise DimensionError("自己準同型と点のブロック数が一致しません")
    out = []
    for m, entries in zip(phi.matrices, p.blocks):
        if m.cols != len(entries):
            raise DimensionError(f"行列の列数 {m.cols} が座標数 {len(entries)} と一致しません")
        group = entries[0].group if entries else FGAbelianGroup()
        out.append(_apply_matrix(m, group, entries))
    return Point(tuple(out))


# ----------------------------------------------------------------------
# 生成判定
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GenerationResult:
    """
    生成判定の結果

    Attributes:
        generates (bool): 生成するかどうか
        block_index (Optional[int]): 生成しないブロックの番号
        relation (Optional[Tuple[int, ...]]): そのブロックの非零の関係ベクトル θ
    """
    generates: bool
    block_index: Optional[int] = None
    relation: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.generates

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generates": self.generates,
            "block": None if self.block_index is None else str(self.block_index),
            "relation": None if self.relation is None else [str(v) for v in self.relation],
        }


def _block_relation(block: VarietyBlock,
                    vectors: Sequence[Sequence[GroupElement]]) -> Optional[Tuple[int, ...]]:
    """
    1ブロックで、全ベクトルを同時に消す非零の θ ∈ Z^{n_i} を探します

    Args:
        block: 対象ブロック
        vectors: 各要素がブロックの座標列（長さ n_i）

    Returns:
        Optional[Tuple[int, ...]]: 関係ベクトル（存在しなければ None）
    """
    n = block.multiplicity
    if n == 0:
        return None

    # 行 i = 全ベクトルの第 i 座標の自由座標を並べたもの
    coefficient_rows = [
        [c for vec in vectors for c in vec[i].free_coords]
        for i in range(n)
    ]
    width = len(vectors) * block.point_group.free_rank
    kernel = left_kernel(IntMatrix.from_rows(coefficient_rows, cols=width))
    if kernel.rows == 0:
        return None

    theta = kernel.row(0)
    torsion_clear = all(
        combine(block.point_group, theta, vec).is_zero for vec in vectors
    )
    if not torsion_clear:
        theta = tuple(block.point_group.exponent * v for v in theta)
    logger.debug(f"{block.factor_id}: 関係ベクトル θ = {theta}")
    return theta


def generates_set(model: VarietyModel, points: Sequence[Point]) -> GenerationResult:
    """
    点の集合 S が X を生成するかどうかを判定します

    ブロックごとに、θ·s = 0（全 s ∈ S）となる θ ∈ Z^{n_i} が 0 だけかどうかを調べます。

    Args:
        model: 多様体モデル
        points: 点の列（空なら正次元の X は生成されません）

    Returns:
        GenerationResult: 判定と、失敗時の関係ベクトル
    """
    for p in points:
        p.check_shape(model)

    for index, block in enumerate(model.blocks):
        vectors = [p.blocks[index] for p in points]
        theta = _block_relation(block, vectors)
        if theta is not None:
            return GenerationResult(False, index, theta)
    return GenerationResult(True)


def generates_point(model: VarietyModel, a: Point) -> GenerationResult:
    """
    1点 a が X を生成するかどうかを判定します

    ブロックごとに独立に判定し、全ブロックで生成すれば X を生成します。
    """
    return generates_set(model, [a])


def verify_relation(model: VarietyModel, points: Sequence[Point],
                    block_index: int, relation: Sequence[int]) -> bool:
    """
    関係ベクトルの証明書を直接評価して検証します

    Returns:
        bool: θ が非零で、全点について Σ θ_i·s_i = 0（自由部分・捩れ部分とも）なら True
    """
    if not any(relation):
        return False
    block = model.blocks[block_index]
    if len(relation) != block.multiplicity:
        return False
    return all(
        combine(block.point_group, relation, p.blocks[block_index]).is_zero
        for p in points
    )


# ----------------------------------------------------------------------
# 像と商
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientBlock:
    """
    商 X/β(X) の1ブロック

    Attributes:
        rank (int): β_i の階数 r_i
        projection (IntMatrix): (n_i − r_i) × n_i の射影行列（U_i の第 r_i 行以降）
    """
    rank: int
    projection: IntMatrix


@dataclass(frozen=True)
class QuotientModel:
    """
    商 X/β(X) と射影

    Attributes:
        source (VarietyModel): 元の多様体
        blocks (Tuple[QuotientBlock, ...]): ブロックごとの階数と射影
    """
    source: VarietyModel
    blocks: Tuple[QuotientBlock, ...]

    @property
    def variety(self) -> VarietyModel:
        """商多様体（重複度 n_i − r_i、0次元になりうるため検証はしません）"""
        return VarietyModel(tuple(
            VarietyBlock(b.factor_id, b.multiplicity - q.rank, b.point_group, b.factor_dim, b.cm)
            for b, q in zip(self.source.blocks, self.blocks)
        ))

    @property
    def dim(self) -> int:
        return self.variety.dim

    def project(self, p: Point) -> Point:
        """
        点を商へ射影します

        Raises:
            DimensionError: 点の形状が元の多様体と一致しない場合
        """
        p.check_shape(self.source)
        return Point(tuple(
            _apply_matrix(q.projection, block.point_group, entries)
            for q, block, entries in zip(self.blocks, self.source.blocks, p.blocks)
        ))


def image_quotient(model: VarietyModel, beta: BlockEndomorphism) -> QuotientModel:
    """
    β(X) による商 X/β(X) を計算します

    D_i = U_i·β_i·V_i のとき、U_i で座標を取り替えると β(X) は最初の r_i 座標に
    一致します（因子は可除群なので d ≠ 0 に対して d·E = E）。
    したがって商は E^{n_i − r_i} で、射影は U_i の最後の n_i − r_i 行です。

    Raises:
        DimensionError: 形状が一致しない場合
    """
    beta.check_shape(model)
    blocks = []
    for m, block in zip(beta.matrices, model.blocks):
        decomposition = snf(m)
        projection = decomposition.U.select_rows(range(decomposition.rank, block.multiplicity))
        blocks.append(QuotientBlock(decomposition.rank, projection))
    quotient = QuotientModel(model, tuple(blocks))
    logger.debug(f"商 X/β(X): 階数 {[q.rank for q in blocks]}, 次元 {quotient.dim}")
    return quotient
