# -*- coding: utf-8 -*-
"""
多様体モジュール

アーベル多様体モデル、野性判定、Num(X) への作用、GK次元の分類を提供します。

Author: WildAbel Development Team
Created: 2025-08-07
"""
