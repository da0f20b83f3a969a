# -*- coding: utf-8 -*-
"""
乱数生成器モジュール

自己検査とテストで共有する、再現可能な乱数インスタンスの生成器です。
試行ごとに random.Random(f"{seed}:{suite}:{trial}") の独立した系列を使うため、
どの順序・並列度で実行しても同じインスタンスが得られます。

Author: WildAbel Development Team
Created: 2025-08-12
"""

import random
from typing import List, Sequence, Tuple

from src.algebra.exact_linalg import IntMatrix
from src.variety.abelian_model import (
    BlockEndomorphism, FGAbelianGroup, GroupElement, Point, VarietyBlock, VarietyModel,
)
from src.variety.wildness import Automorphism

# 混在させる捩れ不変量（割り算の鎖）
TORSION_CHOICES = ((), (2,), (3,), (2, 4), (2, 6))


def stream(seed: int, suite: str, trial: int) -> random.Random:
    """試行ごとの独立した乱数系列"""
    return random.Random(f"{seed}:{suite}:{trial}")


def _elementary(n: int, i: int, j: int, k: int) -> IntMatrix:
    rows = IntMatrix.identity(n).to_rows()
    rows[i][j] = k
    return IntMatrix.from_rows(rows)


def _sign_flip(n: int, i: int) -> IntMatrix:
    return IntMatrix.diagonal([-1 if r == i else 1 for r in range(n)])


def random_unimodular_pair(rng: random.Random, n: int, max_factors: int = 12) -> Tuple[IntMatrix, IntMatrix]:
    """
    基本行列の積でユニモジュラ行列 U とその逆行列を作ります

    Args:
        rng: 乱数系列
        n: サイズ
        max_factors: 掛ける基本行列の最大個数

    Returns:
        Tuple[IntMatrix, IntMatrix]: (U, U⁻¹)
    """
    u = IntMatrix.identity(n)
    u_inv = IntMatrix.identity(n)
    for _ in range(rng.randint(0, max_factors)):
        if n >= 2 and rng.random() < 0.85:
            i, j = rng.sample(range(n), 2)
            k = rng.choice((-1, 1))
            u = u @ _elementary(n, i, j, k)
            u_inv = _elementary(n, i, j, -k) @ u_inv
        else:
            flip = _sign_flip(n, rng.randrange(n))
            u = u @ flip
            u_inv = flip @ u_inv
    return u, u_inv


def random_gl2(rng: random.Random, max_factors: int = 12) -> IntMatrix:
    """GL₂(Z) の乱数元（高々 max_factors 個の基本行列の積）"""
    return random_unimodular_pair(rng, 2, max_factors)[0]


def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int = 50) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols=cols
    )


def random_unitriangular(rng: random.Random, n: int, bound: int = 3) -> IntMatrix:
    """対角成分が1の上三角行列"""
    return IntMatrix.from_rows([
        [1 if i == j else (rng.randint(-bound, bound) if j > i else 0) for j in range(n)]
        for i in range(n)
    ])


def random_unipotent(rng: random.Random, n: int, bound: int = 3) -> IntMatrix:
    """ユニモジュラ共役された上三角単冪行列 U·T·U⁻¹"""
    u, u_inv = random_unimodular_pair(rng, n, max_factors=6)
    return u @ random_unitriangular(rng, n, bound) @ u_inv


def random_non_unipotent(rng: random.Random, n: int) -> IntMatrix:
    """固有値 −1 を持つユニモジュラ共役された行列（単冪でない自己同型）"""
    u, u_inv = random_unimodular_pair(rng, n, max_factors=6)
    return u @ _sign_flip(n, 0) @ u_inv


def random_element(rng: random.Random, group: FGAbelianGroup, bound: int = 3,
                   torsion_only: bool = False) -> GroupElement:
    free = tuple(0 if torsion_only else rng.randint(-bound, bound) for _ in range(group.free_rank))
    torsion = tuple(rng.randrange(m) for m in group.torsion_invariants)
    return GroupElement(group, free, torsion)


def random_point(rng: random.Random, model: VarietyModel, torsion_only: bool = False) -> Point:
    return Point(tuple(
        tuple(random_element(rng, block.point_group, torsion_only=torsion_only)
              for _ in range(block.multiplicity))
        for block in model.blocks
    ))


def random_model(rng: random.Random, max_blocks: int = 2, max_multiplicity: int = 4,
                 max_free_rank: int = 3) -> VarietyModel:
    """
    乱数モデル（重複度 ≤ max_multiplicity、捩れ不変量を混在）
    """
    blocks = []
    for index in range(rng.randint(1, max_blocks)):
        group = FGAbelianGroup(rng.randint(0, max_free_rank), rng.choice(TORSION_CHOICES))
        blocks.append(VarietyBlock(f"E{index + 1}", rng.randint(1, max_multiplicity), group))
    return VarietyModel(tuple(blocks))


def random_unipotent_automorphism(rng: random.Random, model: VarietyModel,
                                  torsion_only: bool = False) -> Automorphism:
    """α が各ブロックで単冪な乱数自己同型"""
    alpha = BlockEndomorphism(tuple(random_unipotent(rng, n) for n in model.multiplicities))
    return Automorphism(alpha, random_point(rng, model, torsion_only))


def random_wildness_instance(rng: random.Random) -> Tuple[VarietyModel, Automorphism]:
    """経路一致の検査用インスタンス（ブロックの重複度 ≤ 4、捩れを混在）"""
    model = random_model(rng)
    return model, random_unipotent_automorphism(rng, model)


def random_mixed_instance(rng: random.Random) -> Tuple[VarietyModel, Automorphism]:
    """単冪・非単冪・捩れのみの b を混ぜたインスタンス"""
    model = random_model(rng)
    kind = rng.randrange(3)
    if kind == 0:
        return model, random_unipotent_automorphism(rng, model)
    if kind == 1:
        return model, random_unipotent_automorphism(rng, model, torsion_only=True)
    matrices: List[IntMatrix] = [random_unipotent(rng, n) for n in model.multiplicities]
    matrices[0] = random_non_unipotent(rng, model.multiplicities[0])
    return model, Automorphism(BlockEndomorphism(tuple(matrices)), random_point(rng, model))


def translation_instance(dim: int) -> Tuple[VarietyModel, Automorphism]:
    """E^dim 上の生成元 (e₁, …, e_dim) による平行移動"""
    model = VarietyModel.single(multiplicity=dim, free_rank=dim)
    group = model.blocks[0].point_group
    b = Point(((tuple(group.generator(i) for i in range(dim))),))
    return model, Automorphism.translation(model, b)


def unipotent_e2_instance(m: Sequence[Sequence[int]] = ((1, 1), (0, 1))) -> Tuple[VarietyModel, Automorphism]:
    """E² 上の σ = T_b·α_M（b = (0, g)、g は自由生成元）"""
    model = VarietyModel.single(multiplicity=2, free_rank=1)
    group = model.blocks[0].point_group
    b = Point(((group.zero(), group.generator(0)),))
    alpha = BlockEndomorphism((IntMatrix.from_rows(m),))
    return model, Automorphism(alpha, b)
