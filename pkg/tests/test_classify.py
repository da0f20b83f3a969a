# -*- coding: utf-8 -*-
"""
分類・解析レポートのテストモジュール

射影的単純性、分類ラベル、経路の整合性検査とレポートのスキーマ適合の
動作確認テストを提供します。

Author: WildAbel Development Team
Created: 2025-08-10
"""

import sys
from pathlib import Path

import pytest

# テスト用にプロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.exact_linalg import IntMatrix
from src.selfcheck import generators
from src.storage.report_codec import ANALYSIS_REPORT_SCHEMA, validate_report
from src.utils.errors import ConsistencyError, ModelError
from src.variety import classify
from src.variety.abelian_model import BlockEndomorphism, FGAbelianGroup, Point, VarietyBlock, VarietyModel
from src.variety.classify import (
    CLASSIFICATION_ROWS, ProjectiveSimplicity, analyze, classification_label, projective_simplicity,
)
from src.variety.num_action import AmplenessVerdict, NumActionKind, gk_bounds
from src.variety.wildness import Automorphism, RelationVector, Route, WildnessVerdict


def e3_wild_instance():
    """E³ 上の単冪 α（Id 以外）と生成元の b"""
    model = VarietyModel.single(multiplicity=3, free_rank=3)
    group = model.blocks[0].point_group
    alpha = BlockEndomorphism((IntMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),))
    b = Point((tuple(group.generator(i) for i in range(3)),))
    return model, Automorphism(alpha, b)


class TestAnalyze:
    """
    解析のテストケース
    """

    def test_平行移動の分類(self):
        labels = {1: "gk2-translation-dim1", 2: "gk3-translation-dim2",
                  3: "gk4-translation-dim3", 4: "gk5-translation-dim4"}
        for dim, label in labels.items():
            model, sigma = generators.translation_instance(dim)
            report = analyze(model, sigma)
            assert report.wild.wild
            assert report.gk.exact == dim + 1
            assert report.projectively_simple.verdict is ProjectiveSimplicity.YES
            assert report.classification_label == label

    def test_E2上の単冪自己同型(self):
        model, sigma = generators.unipotent_e2_instance()
        report = analyze(model, sigma)
        assert report.alpha_unipotent
        assert report.num_action.kind is NumActionKind.EXPLICIT
        assert report.j == 2
        assert report.gk.exact == 5
        assert report.sigma_ample_verdict is AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
        assert report.classification_label == "gk5-unipotent-dim2"

    def test_位数4の回転(self):
        model, sigma = generators.unipotent_e2_instance(((0, -1), (1, 0)))
        report = analyze(model, sigma)
        assert not report.wild.wild
        assert report.sigma_ample_verdict is AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
        assert report.projectively_simple.verdict is ProjectiveSimplicity.NO
        assert report.classification_label is None

    def test_双曲的な自己同型(self):
        model, sigma = generators.unipotent_e2_instance(((2, 1), (1, 1)))
        report = analyze(model, sigma)
        assert not report.wild.wild
        assert report.sigma_ample_verdict is AmplenessVerdict.NO_SIGMA_AMPLE_EXISTS
        assert report.projectively_simple.verdict is ProjectiveSimplicity.NOT_APPLICABLE
        assert report.gk.exact is None
        assert report.gk.note == "no sigma-ample invertible sheaf"
        assert report.classification_label is None

    def test_E3ではGK次元が不明(self):
        model, sigma = e3_wild_instance()
        report = analyze(model, sigma)
        assert report.wild.wild
        assert report.num_action.kind is NumActionKind.UNAVAILABLE
        assert report.sigma_ample_verdict is AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
        assert report.projectively_simple.verdict is ProjectiveSimplicity.YES
        assert report.gk.note == "unknown"
        assert report.j is None
        assert report.classification_label is None

    def test_CM因子は拒否(self):
        model = VarietyModel((VarietyBlock("E", 1, FGAbelianGroup(1), cm=True),))
        sigma = Automorphism.translation(model, Point.zero(model))
        with pytest.raises(ModelError):
            analyze(model, sigma)

    def test_経路の食い違いは整合性エラー(self, monkeypatch):
        real_is_wild = classify.is_wild

        def disagreeing(model, sigma, route=Route.QUOTIENT):
            if route is Route.SET_GENERATION:
                return WildnessVerdict(False, True, route, RelationVector((1,), 0))
            return real_is_wild(model, sigma, route)

        monkeypatch.setattr("src.variety.classify.is_wild", disagreeing)
        model, sigma = generators.translation_instance(1)
        with pytest.raises(ConsistencyError):
            analyze(model, sigma)

    def test_レポートはスキーマに適合(self):
        instances = [generators.translation_instance(2), generators.unipotent_e2_instance(),
                     generators.unipotent_e2_instance(((2, 1), (1, 1))), e3_wild_instance()]
        for model, sigma in instances:
            data = analyze(model, sigma).to_dict()
            validate_report(data, ANALYSIS_REPORT_SCHEMA)
            assert data["routes"]["Quotient"] == data["routes"]["SetGeneration"]

    def test_乱数インスタンスのラベル(self):
        labels = {label: gk for label, gk in CLASSIFICATION_ROWS.values()}
        for trial in range(40):
            model, sigma = generators.random_wildness_instance(generators.stream(42, "labels", trial))
            report = analyze(model, sigma)
            if report.classification_label is not None:
                assert report.wild.wild
                assert report.gk.exact == labels[report.classification_label]


class TestProjectiveSimplicity:
    """
    射影的単純性と分類ラベルのテストケース
    """

    def test_σ豊富な層がある場合(self):
        ample = AmplenessVerdict.ALL_AMPLE_ARE_SIGMA_AMPLE
        assert projective_simplicity(True, ample).verdict is ProjectiveSimplicity.YES
        assert projective_simplicity(False, ample).verdict is ProjectiveSimplicity.NO

    def test_判定できない場合(self):
        for verdict in (AmplenessVerdict.NO_SIGMA_AMPLE_EXISTS, AmplenessVerdict.UNKNOWN):
            result = projective_simplicity(True, verdict)
            assert result.verdict is ProjectiveSimplicity.NOT_APPLICABLE
            assert result.reason

    def test_ラベルとGK次元の不一致(self):
        model, sigma = generators.translation_instance(2)
        with pytest.raises(ConsistencyError):
            classification_label(model, sigma, True, gk_bounds(2, 2))

    def test_野性でなければラベルなし(self):
        model, sigma = generators.translation_instance(2)
        assert classification_label(model, sigma, False, gk_bounds(0, 2)) is None
