# -*- coding: utf-8 -*-
"""
自己検査モジュール

自己検査スイートとテストで共有する、再現可能な乱数生成器を提供します。

Author: WildAbel Development Team
Created: 2025-08-12
"""
