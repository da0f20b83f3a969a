# -*- coding: utf-8 -*-
"""
WildAbel パッケージ初期化ファイル

このファイルによりsrc/ディレクトリがPythonパッケージとして認識されます。
WildAbelの基本情報とバージョン情報を定義します。

Author: WildAbel Development Team
Created: 2025-08-04
"""

# アプリケーション基本情報
__version__ = "1.0.0"
__app_name__ = "WildAbel"
__description__ = "アーベル多様体の自己同型の野性・射影的単純性・GK次元を厳密整数演算で判定するツール"
__author__ = "WildAbel Development Team"

# 最小要件（math.lcm の可変長引数）
__min_python_version__ = "3.9"
