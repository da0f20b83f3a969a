# -*- coding: utf-8 -*-
"""
野性判定のテストモジュール

2つの判定経路、証明書、σ の冪、単冪自己同型の存在判定の
動作確認テストを提供します。

Author: WildAbel Development Team
Created: 2025-08-08
"""

import sys
from pathlib import Path

import pytest

# テスト用にプロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.exact_linalg import IntMatrix, IntPoly
from src.algebra.unipotency import is_unipotent
from src.selfcheck import generators
from src.utils.errors import DomainError, NotInvertibleError, NotUnipotentError
from src.variety.abelian_model import (
    BlockEndomorphism, FGAbelianGroup, Point, VarietyBlock, VarietyModel, image_quotient,
)
from src.variety.wildness import (
    Automorphism, NonUnipotentFactor, RelationVector, Route, WildnessVerdict, beta_of,
    is_wild, nonidentity_unipotent_exists, orbit_set, quotient_image_of_power,
    sigma_power, verify_certificate,
)


class TestIsWild:
    """
    野性判定のテストケース
    """

    def test_生成元による平行移動(self):
        model, sigma = generators.translation_instance(1)
        for route in Route:
            verdict = is_wild(model, sigma, route)
            assert verdict.wild
            assert verdict.alpha_unipotent
            assert verdict.certificate is None

    def test_E2上の単冪自己同型(self):
        model, sigma = generators.unipotent_e2_instance()
        assert is_wild(model, sigma, Route.QUOTIENT).wild
        assert is_wild(model, sigma, Route.SET_GENERATION).wild
        assert len(orbit_set(model, sigma)) == 2

    def test_位数4の自己同型は野性でない(self):
        model, sigma = generators.unipotent_e2_instance(((0, -1), (1, 0)))
        verdict = is_wild(model, sigma)
        assert not verdict.wild
        assert not verdict.alpha_unipotent
        assert isinstance(verdict.certificate, NonUnipotentFactor)
        assert verdict.certificate.factor == IntPoly((1, 0, 1))
        assert verify_certificate(model, sigma, verdict)

    def test_可逆でないα(self):
        model = VarietyModel.single()
        g = model.blocks[0].point_group.generator(0)
        sigma = Automorphism(BlockEndomorphism((IntMatrix.from_rows([[2]]),)), Point(((g,),)))
        with pytest.raises(NotInvertibleError):
            is_wild(model, sigma)

    def test_生成しない平行移動の証明書(self):
        """E² 上の T_(g, 2g) は野性でなく、両経路の証明書が検証できる"""
        model = VarietyModel.single(multiplicity=2)
        g = model.blocks[0].point_group.generator(0)
        sigma = Automorphism.translation(model, Point(((g, g.scale(2)),)))
        for route in Route:
            verdict = is_wild(model, sigma, route)
            assert not verdict.wild
            assert isinstance(verdict.certificate, RelationVector)
            assert verify_certificate(model, sigma, verdict)

    def test_捩れのみのbは野性でない(self):
        for trial in range(30):
            rng = generators.stream(42, "negative", trial)
            model = generators.random_model(rng)
            sigma = generators.random_unipotent_automorphism(rng, model, torsion_only=True)
            for route in Route:
                verdict = is_wild(model, sigma, route)
                assert not verdict.wild
                assert verify_certificate(model, sigma, verdict)

    def test_経路の一致(self):
        for trial in range(60):
            model, sigma = generators.random_wildness_instance(generators.stream(42, "routes", trial))
            assert is_wild(model, sigma, Route.QUOTIENT).wild == is_wild(model, sigma, Route.SET_GENERATION).wild

    def test_野性ならαは単冪(self):
        for trial in range(40):
            model, sigma = generators.random_mixed_instance(generators.stream(42, "mixed", trial))
            verdict = is_wild(model, sigma)
            if verdict.wild:
                assert all(is_unipotent(m) for m in sigma.alpha.matrices)
            else:
                assert verify_certificate(model, sigma, verdict)

    def test_重複因子がなければ野性は平行移動(self):
        group = FGAbelianGroup(2)
        model = VarietyModel((VarietyBlock("E1", 1, group), VarietyBlock("E2", 1, group)))
        b = Point(((group.generator(0),), (group.generator(1),)))
        for signs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            alpha = BlockEndomorphism(tuple(IntMatrix.from_rows([[s]]) for s in signs))
            verdict = is_wild(model, Automorphism(alpha, b))
            assert verdict.wild == (signs == (1, 1))

    def test_判定結果の不変条件(self):
        with pytest.raises(ValueError):
            WildnessVerdict(True, False, Route.QUOTIENT)
        with pytest.raises(ValueError):
            WildnessVerdict(False, True, Route.QUOTIENT)


class TestSigmaPower:
    """
    σ の冪のテストケース
    """

    def setup_method(self):
        self.model = VarietyModel.single(multiplicity=2, free_rank=2)
        group = self.model.blocks[0].point_group
        self.b1, self.b2 = group.generator(0), group.generator(1)
        self.b = Point(((self.b1, self.b2),))

    def test_1乗は不変(self):
        sigma = Automorphism(BlockEndomorphism((IntMatrix.from_rows([[1, 1], [0, 1]]),)), self.b)
        assert sigma_power(sigma, 1) == sigma

    def test_平行移動の3乗(self):
        sigma = Automorphism.translation(self.model, self.b)
        cubed = sigma_power(sigma, 3)
        assert cubed.alpha.is_identity
        assert cubed.b == self.b.scale(3)

    def test_単冪自己同型の2乗(self):
        sigma = Automorphism(BlockEndomorphism((IntMatrix.from_rows([[1, 1], [0, 1]]),)), self.b)
        squared = sigma_power(sigma, 2)
        assert squared.alpha.matrices[0] == IntMatrix.from_rows([[1, 2], [0, 1]])
        assert squared.b == Point(((self.b1.scale(2) + self.b2, self.b2.scale(2)),))

    def test_0乗は定義域外(self):
        with pytest.raises(DomainError):
            sigma_power(Automorphism.translation(self.model, self.b), 0)

    def test_冪で野性は変わらない(self):
        for trial in range(30):
            model, sigma = generators.random_mixed_instance(generators.stream(42, "powers", trial))
            wild = is_wild(model, sigma).wild
            for n in (2, 3, 5):
                assert is_wild(model, sigma_power(sigma, n)).wild == wild

    def test_商でのγbの像(self):
        model, sigma = generators.unipotent_e2_instance()
        b_bar = image_quotient(model, beta_of(model, sigma)).project(sigma.b)
        for n in (1, 2, 3, 7):
            assert quotient_image_of_power(model, sigma, n) == b_bar.scale(n)

    def test_単冪でないαのγ(self):
        model, sigma = generators.unipotent_e2_instance(((0, -1), (1, 0)))
        with pytest.raises(NotUnipotentError):
            quotient_image_of_power(model, sigma, 2)


class TestNonidentityUnipotent:
    """
    Id 以外の単冪自己同型の存在判定のテストケース
    """

    def test_非同種な因子の積(self):
        model = VarietyModel((VarietyBlock("E1", 1), VarietyBlock("E2", 1)))
        assert not nonidentity_unipotent_exists(model)

    def test_E2(self):
        assert nonidentity_unipotent_exists(VarietyModel.single(multiplicity=2))

    def test_単一因子(self):
        assert not nonidentity_unipotent_exists(VarietyModel.single())
