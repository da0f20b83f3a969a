# -*- coding: utf-8 -*-
"""
代数モジュール

厳密整数線形代数と、単冪性・準単冪性の判定を提供します。

Author: WildAbel Development Team
Created: 2025-08-05
"""
