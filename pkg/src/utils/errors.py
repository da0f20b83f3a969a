# -*- coding: utf-8 -*-
"""
例外定義モジュール

WildAbel全体で使用する例外クラスを定義します。
CLIは例外の種類に応じて終了コードを決定します。

    DomainError        → 終了コード 1（数学的な前提条件違反）
    ConsistencyError   → 終了コード 1（内部整合性エラー）
    InputError         → 終了コード 2（入力形式エラー）

Author: WildAbel Development Team
Created: 2025-08-04
"""

from typing import List, Optional


class WildAbelError(Exception):
    """WildAbelの基底例外"""


class DomainError(WildAbelError, ValueError):
    """数学的な前提条件が満たされない場合の例外"""


class DimensionError(DomainError):
    """行列の形状（正方性・サイズ）が不正な場合"""


class SingularMatrixError(DomainError):
    """可逆であるべき行列が特異な場合"""


class NotInvertibleError(DomainError):
    """整数上で可逆（|det| = 1）でない自己準同型が自己同型として渡された場合"""


class NotUnipotentError(DomainError):
    """M − I が冪零でない場合"""


class NotQuasiUnipotentError(DomainError):
    """特性多項式が円分多項式の積でない場合"""


class NoSigmaAmpleSheafError(NotQuasiUnipotentError):
    """
    P_σ が準単冪でないため σ-豊富な可逆層が存在しない場合

    GK次元の計算はこの場合意味を持ちません。
    """


class InputError(WildAbelError, ValueError):
    """JSON入力やスキーマの形式エラー"""


class ModelError(InputError):
    """
    多様体モデルの検証エラー

    Attributes:
        errors (List[str]): 検証エラーメッセージのリスト
    """

    def __init__(self, message: str, errors: Optional[List[str]] = None):
        self.errors = list(errors or [])
        if self.errors:
            message = f"{message}: " + "; ".join(self.errors)
        super().__init__(message)


class ConsistencyError(WildAbelError, RuntimeError):
    """同値な2つの判定経路の不一致や証明書の再検証失敗"""
