# -*- coding: utf-8 -*-
"""
ユーティリティモジュール

WildAbel全体で使用される共通ユーティリティ機能を提供します。
ログ設定、例外定義を含みます。

Author: WildAbel Development Team
Created: 2025-08-04
"""
