# -*- coding: utf-8 -*-
"""
Num(X) への作用のテストモジュール

E×E の P 行列、P_σ の種類、σ-豊富性、j と GK次元の動作確認テストを提供します。

Author: WildAbel Development Team
Created: 2025-08-09
"""

import sys
from pathlib import Path

import pytest

# テスト用にプロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.exact_linalg import IntMatrix, IntPoly, charpoly, det
from src.algebra.unipotency import is_quasi_unipotent, is_unipotent
from src.selfcheck import generators
from src.utils.errors import ConsistencyError, DimensionError, NoSigmaAmpleSheafError, NotInvertibleError
from src.variety.abelian_model import BlockEndomorphism, Point, VarietyModel
from src.variety.num_action import (
    AmplenessVerdict, NumAction, NumActionKind, ampleness_verdict, gk_bounds, gk_dimension,
    j_invariant, p_matrix, p_sigma,
)
from src.variety.wildness import Automorphism

UNIPOTENT = IntMatrix.from_rows([[1, 1], [0, 1]])
GK5_P = IntMatrix.from_rows([[0, 0, -1], [0, 1, 2], [1, 0, 2]])


class TestPMatrix:
    """
    E×E の P 行列のテストケース
    """

    def test_スカラー倍(self):
        assert p_matrix(IntMatrix.scalar(2, 2), allow_isogeny=True) == IntMatrix.scalar(3, 4)
        for n in range(-10, 11):
            if n:
                assert p_matrix(IntMatrix.scalar(2, n), allow_isogeny=True) == IntMatrix.scalar(3, n * n)

    def test_同種写像は既定では拒否(self):
        with pytest.raises(NotInvertibleError):
            p_matrix(IntMatrix.scalar(2, 2))

    def test_2次でない行列(self):
        with pytest.raises(DimensionError):
            p_matrix(IntMatrix.identity(3))

    def test_単冪行列(self):
        assert p_matrix(UNIPOTENT) == GK5_P

    def test_対角行列(self):
        """diag(a, d) の P は対角成分 (a², d², ad) の上三角行列"""
        for a, d in ((2, 3), (-1, 4), (5, -5)):
            p = p_matrix(IntMatrix.diagonal([a, d]), allow_isogeny=True)
            assert (p[0, 0], p[1, 1], p[2, 2]) == (a * a, d * d, a * d)
            assert p[1, 0] == p[2, 0] == p[2, 1] == 0
            assert charpoly(p) == IntPoly.linear(a * a) * IntPoly.linear(d * d) * IntPoly.linear(a * d)

    def test_反変的な合成(self):
        n = IntMatrix.from_rows([[1, 0], [1, 1]])
        expected = IntMatrix.from_rows([[2, 0, 3], [-1, 0, -2], [2, 1, 6]])
        assert p_matrix(UNIPOTENT @ n) == expected
        assert p_matrix(n) @ p_matrix(UNIPOTENT) == expected
        for trial in range(50):
            rng = generators.stream(42, "contravariance", trial)
            a, b = generators.random_gl2(rng), generators.random_gl2(rng)
            assert p_matrix(a @ b) == p_matrix(b) @ p_matrix(a)

    def test_行列式は3乗(self):
        for trial in range(100):
            m = generators.random_gl2(generators.stream(42, "det-cube", trial))
            assert det(p_matrix(m)) == det(m) ** 3

    def test_準単冪性の移行(self):
        for trial in range(100):
            m = generators.random_gl2(generators.stream(42, "transfer", trial))
            assert is_quasi_unipotent(m) == is_quasi_unipotent(p_matrix(m))

    def test_マイナス単位行列のPは単位行列(self):
        minus = IntMatrix.scalar(2, -1)
        assert p_matrix(minus) == IntMatrix.identity(3)
        assert not is_unipotent(minus)

    def test_単冪性の移行(self):
        """M が単冪で M ≠ I なら P(M) は単冪で P(M) ≠ I"""
        for trial in range(40):
            m = generators.random_unipotent(generators.stream(42, "unipotent-transfer", trial), 2)
            p = p_matrix(m)
            assert is_unipotent(p)
            if m != IntMatrix.identity(2):
                assert p != IntMatrix.identity(3)
                assert j_invariant(p) == 2


class TestPSigma:
    """
    P_σ の種類のテストケース
    """

    def test_平行移動は恒等作用(self):
        for dim in (1, 2, 3):
            model, sigma = generators.translation_instance(dim)
            assert p_sigma(model, sigma).kind is NumActionKind.IDENTITY

    def test_E2上の単冪自己同型(self):
        model, sigma = generators.unipotent_e2_instance()
        action = p_sigma(model, sigma)
        assert action.kind is NumActionKind.EXPLICIT
        assert action.matrix == GK5_P

    def test_E3では計算できない(self):
        model = VarietyModel.single(multiplicity=3)
        alpha = BlockEndomorphism((IntMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),))
        sigma = Automorphism(alpha, Point.zero(model))
        assert p_sigma(model, sigma).kind is NumActionKind.UNAVAILABLE

    def test_曲線上のマイナス1(self):
        model = VarietyModel.single()
        sigma = Automorphism(BlockEndomorphism.scalar(model, -1), Point.zero(model))
        assert p_sigma(model, sigma).kind is NumActionKind.IDENTITY

    def test_マイナス単位写像(self):
        model = VarietyModel.single(multiplicity=3)
        sigma = Automorphism(BlockEndomorphism.scalar(model, -1), Point.zero(model))
        action = p_sigma(model, sigma)
        assert action.kind is NumActionKind.IDENTITY
        assert action.reason == "alpha = -Id"


class TestAmpleness:
    """
    σ-豊富性の判定のテストケース
    """

    def test_恒等作用(self):
        assert ampleness_verdict(NumAction.identity()) is AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE

    def test_単冪なP(self):
        assert ampleness_verdict(NumAction.explicit(GK5_P)) is AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE

    def test_準単冪でないP(self):
        p = IntMatrix.from_rows([[2, 1, 0], [1, 1, 0], [0, 0, 1]])
        assert ampleness_verdict(NumAction.explicit(p)) is AmplenessVerdict.NO_SIGMA_AMPLE_EXISTS

    def test_不明(self):
        assert ampleness_verdict(NumAction.unavailable()) is AmplenessVerdict.UNKNOWN

    def test_不明でもαが準単冪なら豊富(self):
        alpha = BlockEndomorphism((IntMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, -1]]),))
        verdict = ampleness_verdict(NumAction.unavailable(), alpha)
        assert verdict is AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE

    def test_不明でαが準単冪でない(self):
        alpha = BlockEndomorphism((IntMatrix.from_rows([[2, 1, 0], [1, 1, 0], [0, 0, 1]]),))
        assert ampleness_verdict(NumAction.unavailable(), alpha) is AmplenessVerdict.UNKNOWN


class TestGkDimension:
    """
    GK次元のテストケース
    """

    def test_平行移動(self):
        for dim in (1, 2, 3, 4):
            model, sigma = generators.translation_instance(dim)
            result = gk_dimension(model, sigma)
            assert result.exact == dim + 1
            assert result.j == 0

    def test_E2上の単冪自己同型(self):
        model, sigma = generators.unipotent_e2_instance()
        result = gk_dimension(model, sigma)
        assert result.exact == 5
        assert result.j == 2
        assert result.lower == result.upper == 5

    def test_計算できない場合(self):
        model = VarietyModel.single(multiplicity=3)
        alpha = BlockEndomorphism((IntMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),))
        result = gk_dimension(model, Automorphism(alpha, Point.zero(model)))
        assert result.exact is None and result.lower is None and result.upper is None and result.j is None
        assert result.note == "unknown"

    def test_σ豊富な層がない(self):
        model, sigma = generators.unipotent_e2_instance(((2, 1), (1, 1)))
        with pytest.raises(NoSigmaAmpleSheafError):
            gk_dimension(model, sigma)

    def test_評価の範囲(self):
        result = gk_bounds(2, 3)
        assert (result.lower, result.upper, result.exact) == (6, 8, None)
        assert gk_bounds(0, 3).exact == 4

    def test_奇数のjは整合性エラー(self):
        with pytest.raises(ConsistencyError):
            gk_bounds(1, 3)
        with pytest.raises(ConsistencyError):
            gk_bounds(4, 2)

    def test_jの偶奇(self):
        for trial in range(100):
            p = p_matrix(generators.random_gl2(generators.stream(42, "parity", trial)))
            if is_quasi_unipotent(p):
                assert j_invariant(p) in (0, 2)

    def test_辞書形式(self):
        data = gk_bounds(2, 2).to_dict()
        assert data == {"exact": "5", "lower": "5", "upper": "5", "j": "2", "note": None}
