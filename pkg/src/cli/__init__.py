# -*- coding: utf-8 -*-
"""
コマンドラインモジュール

サブコマンドの解析・実行と、自己検査スイートを提供します。

Author: WildAbel Development Team
Created: 2025-08-13
"""
