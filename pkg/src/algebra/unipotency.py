# -*- coding: utf-8 -*-
"""
単冪性・準単冪性判定モジュール

整数行列の単冪性（M − I が冪零）と準単冪性（ある冪が単冪）を判定します。

    - quasi_unipotency: 特性多項式を円分多項式 Φ_d で割り切っていく主判定
    - power_conjugacy_witness: M^p と M^q の有理共役を総当たりで探す照合用の判定
    - largest_jordan_block_quasi: 準単冪行列の最大Jordanブロック（GK次元の j + 1）

総当たり側は上限までに見つからなくても「否」の証明にはなりません。

Author: WildAbel Development Team
Created: 2025-08-06
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional, Tuple

import sympy

from src.algebra.exact_linalg import (
    IntMatrix, IntPoly, X, charpoly, det, factor_irreducible,
    frobenius_invariants, matrix_power, unipotent_jordan_profile,
)
from src.utils.errors import DimensionError, DomainError, NotQuasiUnipotentError, SingularMatrixError
from src.utils.logger import get_logger

# ロガーを取得
logger = get_logger(__name__)

# オイラー関数を評価する d の上限
PHI_CAP = 1000


class QuasiUnipotencyStatus(Enum):
    """
    準単冪性判定の結果

    UNIPOTENT は QUASI_UNIPOTENT（位数1）の特別な場合として別扱いします。
    """
    UNIPOTENT = "unipotent"
    QUASI_UNIPOTENT = "quasi_unipotent"
    NO = "no"


@dataclass(frozen=True)
class QuasiUnipotencyVerdict:
    """
    準単冪性判定の結果と根拠

    Attributes:
        status (QuasiUnipotencyStatus): 判定
        order (Optional[int]): 準単冪位数 t（M^t が単冪となる最小の d の最小公倍数）
        cyclotomic_factors (Tuple[Tuple[int, int], ...]): (d, 重複度) の列
        witness (Optional[IntPoly]): 円分的でない既約因子（status が NO のとき）
    """
    status: QuasiUnipotencyStatus
    order: Optional[int] = None
    cyclotomic_factors: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    witness: Optional[IntPoly] = None

    @property
    def is_quasi_unipotent(self) -> bool:
        return self.status is not QuasiUnipotencyStatus.NO

    def to_dict(self) -> Dict:
        return {
            "status": self.status.value,
            "order": None if self.order is None else str(self.order),
            "cyclotomic_factors": [
                {"d": str(d), "multiplicity": str(mult)} for d, mult in self.cyclotomic_factors
            ],
            "witness": None if self.witness is None else str(self.witness),
        }


def cyclotomic(d: int) -> IntPoly:
    """
    円分多項式 Φ_d を返します

    Φ_d(x) = (x^d − 1) / ∏_{e|d, e<d} Φ_e と一致します。

    Raises:
        DomainError: d < 1 の場合
    """
    if d < 1:
        raise DomainError(f"円分多項式の添字は1以上である必要があります: {d}")
    return IntPoly.from_sympy(sympy.cyclotomic_poly(d, X, polys=True))


@lru_cache(maxsize=None)
def cyclotomic_indices(n: int, cap: int = PHI_CAP) -> Tuple[int, ...]:
    """
    φ(d) ≤ n を満たす d を昇順に返します

    φ(d) ≥ √(d/2) より d ≤ 2n² の範囲を調べれば十分です。
    """
    upper = min(cap, max(2, 2 * n * n))
    return tuple(d for d in range(1, upper + 1) if int(sympy.totient(d)) <= n)


@lru_cache(maxsize=None)
def max_quasi_unipotent_order(n: int) -> int:
    """
    n×n 準単冪整数行列がとりうる位数の最大値 t_max を返します

    Σ φ(d_i) ≤ n となる相異なる d_i の最小公倍数の最大値です。
    """
    states = {(0, 1)}
    for d in cyclotomic_indices(n):
        phi = int(sympy.totient(d))
        states |= {(used + phi, lcm(l, d)) for used, l in states if used + phi <= n}
    return max(l for _, l in states)


def _require_square(m: IntMatrix):
    if not m.is_square:
        raise DimensionError(f"正方行列が必要です: {m.rows}×{m.cols}")


def is_unipotent(m: IntMatrix) -> bool:
    """
    (M − I)^n = 0 かどうかを判定します

    Raises:
        DimensionError: 正方でない場合
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return True
    return matrix_power(m - IntMatrix.identity(n), n).is_zero


def quasi_unipotency(m: IntMatrix, cap: int = PHI_CAP) -> QuasiUnipotencyVerdict:
    """
    特性多項式の円分多項式による試し割りで準単冪性を判定します

    Args:
        m: 正方整数行列
        cap: 調べる d の上限

    Returns:
        QuasiUnipotencyVerdict: 判定結果
    """
    _require_square(m)
    remaining = charpoly(m)
    factors: List[Tuple[int, int]] = []

    for d in cyclotomic_indices(m.rows, cap):
        if remaining.degree <= 0:
            break
        phi_d = cyclotomic(d)
        mult = 0
        while remaining.degree >= phi_d.degree:
            quotient, remainder = remaining.divmod(phi_d)
            if remainder.degree >= 0:
                break
            remaining = quotient
            mult += 1
        if mult:
            factors.append((d, mult))

    if remaining.degree > 0:
        witness = factor_irreducible(remaining)[0][0]
        logger.debug(f"準単冪ではありません: 円分的でない因子 {witness}")
        return QuasiUnipotencyVerdict(QuasiUnipotencyStatus.NO, None, tuple(factors), witness)

    order = lcm(*[d for d, _ in factors]) if factors else 1
    status = (QuasiUnipotencyStatus.UNIPOTENT if all(d == 1 for d, _ in factors)
              else QuasiUnipotencyStatus.QUASI_UNIPOTENT)
    return QuasiUnipotencyVerdict(status, order, tuple(factors), None)


def is_quasi_unipotent(m: IntMatrix) -> bool:
    return quasi_unipotency(m).is_quasi_unipotent


def non_unipotent_factor(m: IntMatrix) -> Optional[IntPoly]:
    """
    特性多項式の既約因子のうち x − 1 以外の最初のものを返します

    Returns:
        Optional[IntPoly]: 単冪なら None
    """
    one = IntPoly.linear(1)
    for f, _ in factor_irreducible(charpoly(m)):
        if f != one:
            return f
    return None


def _invariant_key(m: IntMatrix) -> Tuple[Tuple[int, ...], ...]:
    return tuple(f.coefficients for f in frobenius_invariants(m))


def power_conjugacy_witness(m: IntMatrix, bound: int) -> Optional[Tuple[int, int]]:
    """
    M^p と M^q が有理数体上で共役となる 0 < p < q ≤ bound を探します

    辞書式順序で最初の組を返します。見つからない場合の None は
    「上限までに見つからなかった」ことを意味するだけで、否定の証明ではありません。

    Args:
        m: 正方可逆整数行列
        bound: q の上限

    Returns:
        Optional[Tuple[int, int]]: 最初の証拠 (p, q)

    Raises:
        SingularMatrixError: M が特異な場合
    """
    _require_square(m)
    if det(m) == 0:
        raise SingularMatrixError(f"特異行列には適用できません: {m}")

    keys = {}
    power = IntMatrix.identity(m.rows)
    for k in range(1, bound + 1):
        power = power @ m
        keys[k] = _invariant_key(power)

    for p in range(1, bound + 1):
        for q in range(p + 1, bound + 1):
            if keys[p] == keys[q]:
                logger.debug(f"冪共役の証拠: M^{p} ~ M^{q}")
                return (p, q)

    logger.warning(f"上限 {bound} までに冪共役の証拠は見つかりませんでした（否定の証明ではありません）")
    return None


def default_witness_bound(n: int) -> int:
    """総当たり照合の標準上限 2·t_max(n)"""
    return 2 * max_quasi_unipotent_order(n)


def largest_jordan_block_quasi(m: IntMatrix) -> int:
    """
    準単冪行列の最大Jordanブロックのサイズを返します

    M^t（t は準単冪位数）は単冪で、非零固有値の行列を冪乗してもブロックサイズは変わりません。

    Raises:
        NotQuasiUnipotentError: 準単冪でない場合
    """
    verdict = quasi_unipotency(m)
    if not verdict.is_quasi_unipotent:
        raise NotQuasiUnipotentError(f"準単冪ではありません（因子 {verdict.witness}）")
    return unipotent_jordan_profile(matrix_power(m, verdict.order)).largest
