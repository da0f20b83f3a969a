# -*- coding: utf-8 -*-
"""
単冪性・準単冪性判定のテストモジュール

円分多項式、準単冪性の主判定、冪共役の総当たり、最大Jordanブロックの
動作確認テストを提供します。

Author: WildAbel Development Team
Created: 2025-08-06
"""

import sys
from pathlib import Path

import pytest

# テスト用にプロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.algebra.exact_linalg import IntMatrix, IntPoly, charpoly, frobenius_invariants, matrix_power
from src.algebra.unipotency import (
    QuasiUnipotencyStatus, cyclotomic, cyclotomic_indices, default_witness_bound,
    is_quasi_unipotent, is_unipotent, largest_jordan_block_quasi, max_quasi_unipotent_order,
    non_unipotent_factor, power_conjugacy_witness, quasi_unipotency,
)
from src.selfcheck import generators
from src.utils.errors import DimensionError, DomainError, NotQuasiUnipotentError, SingularMatrixError

UNIPOTENT = IntMatrix.from_rows([[1, 1], [0, 1]])
ROTATION_4 = IntMatrix.from_rows([[0, -1], [1, 0]])
ROTATION_3 = IntMatrix.from_rows([[0, -1], [1, -1]])
HYPERBOLIC = IntMatrix.from_rows([[2, 1], [1, 1]])
GK5_P = IntMatrix.from_rows([[0, 0, -1], [0, 1, 2], [1, 0, 2]])


class TestCyclotomic:
    """
    円分多項式のテストケース
    """

    def test_小さな添字(self):
        assert cyclotomic(1) == IntPoly((-1, 1))
        assert cyclotomic(4) == IntPoly((1, 0, 1))
        assert cyclotomic(6) == IntPoly((1, -1, 1))

    def test_0は定義域外(self):
        with pytest.raises(DomainError):
            cyclotomic(0)

    def test_約数の積がxのd乗引く1(self):
        """∏_{e|d} Φ_e = x^d − 1"""
        for d in (1, 2, 6, 12):
            product = IntPoly.one()
            for e in range(1, d + 1):
                if d % e == 0:
                    product = product * cyclotomic(e)
            assert product == IntPoly((-1,) + (0,) * (d - 1) + (1,))

    def test_調べる添字の範囲(self):
        assert cyclotomic_indices(2) == (1, 2, 3, 4, 6)
        assert cyclotomic_indices(1) == (1, 2)

    def test_最大位数(self):
        assert max_quasi_unipotent_order(1) == 2
        assert max_quasi_unipotent_order(2) == 6
        assert default_witness_bound(2) == 12


class TestUnipotency:
    """
    単冪性・準単冪性判定のテストケース
    """

    def test_単冪性(self):
        assert is_unipotent(IntMatrix.identity(3))
        assert is_unipotent(UNIPOTENT)
        assert not is_unipotent(ROTATION_4)

    def test_正方でない行列(self):
        with pytest.raises(DimensionError):
            is_unipotent(IntMatrix.from_rows([[1, 0]]))

    def test_位数3(self):
        verdict = quasi_unipotency(ROTATION_3)
        assert verdict.status is QuasiUnipotencyStatus.QUASI_UNIPOTENT
        assert verdict.order == 3
        assert verdict.cyclotomic_factors == ((3, 1),)

    def test_双曲的な行列(self):
        verdict = quasi_unipotency(HYPERBOLIC)
        assert verdict.status is QuasiUnipotencyStatus.NO
        assert verdict.witness == IntPoly((1, -3, 1))
        assert not verdict.is_quasi_unipotent

    def test_マイナス単位行列(self):
        verdict = quasi_unipotency(IntMatrix.scalar(2, -1))
        assert verdict.status is QuasiUnipotencyStatus.QUASI_UNIPOTENT
        assert verdict.order == 2
        assert verdict.cyclotomic_factors == ((2, 2),)

    def test_単冪は位数1(self):
        verdict = quasi_unipotency(UNIPOTENT)
        assert verdict.status is QuasiUnipotencyStatus.UNIPOTENT
        assert verdict.order == 1

    def test_円分因子の積が特性多項式(self):
        for m in (ROTATION_3, ROTATION_4, IntMatrix.scalar(3, -1), GK5_P):
            verdict = quasi_unipotency(m)
            product = IntPoly.one()
            for d, mult in verdict.cyclotomic_factors:
                product = product * (cyclotomic(d) ** mult)
            assert product == charpoly(m)

    def test_単冪でない因子(self):
        assert non_unipotent_factor(ROTATION_4) == IntPoly((1, 0, 1))
        assert non_unipotent_factor(UNIPOTENT) is None

    def test_辞書形式(self):
        data = quasi_unipotency(ROTATION_3).to_dict()
        assert data["status"] == "quasi_unipotent"
        assert data["order"] == "3"
        assert data["cyclotomic_factors"] == [{"d": "3", "multiplicity": "1"}]


class TestPowerConjugacyWitness:
    """
    冪共役の総当たりのテストケース
    """

    def test_単冪行列(self):
        assert power_conjugacy_witness(UNIPOTENT, 5) == (1, 2)

    def test_位数4の回転(self):
        """M³ = M⁻¹ は M と同じ不変因子 x²+1 を持つので (1, 3) が最初"""
        assert power_conjugacy_witness(ROTATION_4, 8) == (1, 3)

    def test_双曲的な行列は見つからない(self):
        assert power_conjugacy_witness(HYPERBOLIC, 8) is None

    def test_特異行列(self):
        with pytest.raises(SingularMatrixError):
            power_conjugacy_witness(IntMatrix.from_rows([[1, 2], [2, 4]]), 4)

    def test_主判定との一致(self):
        """準単冪 ⟺ 2·t_max までに証拠がある"""
        for m in (IntMatrix.identity(2), IntMatrix.scalar(2, -1), ROTATION_3, ROTATION_4, UNIPOTENT, HYPERBOLIC):
            witness = power_conjugacy_witness(m, default_witness_bound(m.rows))
            assert is_quasi_unipotent(m) == (witness is not None)

    def test_単冪行列の冪は共役(self):
        for trial in range(20):
            rng = generators.stream(42, "power-conjugacy", trial)
            m = generators.random_unipotent(rng, rng.randint(1, 4))
            invariants = frobenius_invariants(m)
            for p in range(1, 8):
                assert frobenius_invariants(matrix_power(m, p)) == invariants


class TestLargestJordanBlock:
    """
    準単冪行列の最大Jordanブロックのテストケース
    """

    def test_単位行列(self):
        assert largest_jordan_block_quasi(IntMatrix.identity(2)) == 1

    def test_P行列(self):
        assert largest_jordan_block_quasi(GK5_P) == 3

    def test_マイナス単位行列(self):
        assert largest_jordan_block_quasi(IntMatrix.scalar(2, -1)) == 1

    def test_準単冪でない行列(self):
        with pytest.raises(NotQuasiUnipotentError):
            largest_jordan_block_quasi(HYPERBOLIC)

    def test_有限位数の単冪行列は単位行列(self):
        """単冪で M^n = I (n ≤ 12) なら M = I"""
        for trial in range(30):
            rng = generators.stream(42, "finite-order", trial)
            m = generators.random_unipotent(rng, rng.randint(1, 4))
            identity = IntMatrix.identity(m.rows)
            if any(matrix_power(m, n) == identity for n in range(1, 13)):
                assert m == identity
