# -*- coding: utf-8 -*-
"""
設定管理モジュール

WildAbelのアプリケーション設定（自己検査の乱数シード、試行回数、ログ設定等）を管理します。

Author: WildAbel Development Team
Created: 2025-08-04
"""
